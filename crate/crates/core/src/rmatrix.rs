//! Braiding action on weight-state vectors.
//!
//! A strand carries a highest-weight module with basis states indexed by a
//! nonnegative integer `m` (weight drops by `2m` from the top).  A positive
//! crossing acting on the pair `(m1, m2)` scatters into targets
//! `(m2 + n, m1 - n)` for `0 <= n <= m1`; the coefficient of target `n` is
//!
//! ```text
//! [ prod_{l=0}^{n-1} (q^((A-m2-1-l)/2) - q^(-(A-m2-1-l)/2)) ]
//!   * qbinom(m1, n) * q^(T/4)
//! T = (A-2*m1-1)*(A-2*m2-1) + 2*n*(m1-m2) - n*(n+1) + 2*(A-1)*(m1-m2-n)
//! ```
//!
//! with `A` the color.  The product over `l` kills any transition that would
//! climb past the top of an `A`-dimensional module, which is what makes
//! unbounded state sums effectively finite.  A negative crossing is the exact
//! inverse: targets `(m2 - n, m1 + n)` for `0 <= n <= m2`, with the positive
//! coefficient read at swapped arguments and mirrored exponents.
//!
//! All exponents live in quarter powers of `q`; see
//! [`crate::exactalg::QuarterLaurent`].

use crate::braid::BraidWord;
use crate::exactalg::{qbinom, qdiff, qpow, QuarterLaurent};
use dashmap::DashMap;
use num_traits::Zero;
use once_cell::sync::Lazy;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Weights of the strands, top state being all zeros.
pub type BasisState = Vec<u32>;

/// The scattering list of one crossing on one ordered pair: targets with
/// their coefficients.
pub type PairAction = Vec<((u32, u32), QuarterLaurent)>;

/// One coefficient of the positive-crossing action (arguments in plain
/// integers; `n` is the transfer index).
fn rhat_coeff(alpha: i64, m1: i64, m2: i64, n: i64) -> QuarterLaurent {
    let mut c = qbinom(m1 as u32, n as u32);
    for l in 0..n {
        c = c * qdiff(alpha - m2 - 1 - l);
        if c.is_zero() {
            return c;
        }
    }
    let t = (alpha - 2 * m1 - 1) * (alpha - 2 * m2 - 1) + 2 * n * (m1 - m2)
        - n * (n + 1)
        + 2 * (alpha - 1) * (m1 - m2 - n);
    c * qpow(t)
}

static PAIR_CACHE: Lazy<DashMap<(u32, u32, u32, bool), Arc<PairAction>>> =
    Lazy::new(DashMap::new);

fn pair_action(m1: u32, m2: u32, alpha: u32, positive: bool) -> Arc<PairAction> {
    let key = (m1, m2, alpha, positive);
    if let Some(hit) = PAIR_CACHE.get(&key) {
        return hit.clone();
    }
    let mut action = Vec::new();
    if positive {
        for n in 0..=m1 {
            let c = rhat_coeff(alpha as i64, m1 as i64, m2 as i64, n as i64);
            if !c.is_zero() {
                action.push(((m2 + n, m1 - n), c));
            }
        }
    } else {
        for n in 0..=m2 {
            let c = rhat_coeff(alpha as i64, m2 as i64, m1 as i64, n as i64).mirror();
            if !c.is_zero() {
                action.push(((m2 - n, m1 + n), c));
            }
        }
    }
    let action = Arc::new(action);
    PAIR_CACHE.insert(key, action.clone());
    action
}

/// Positive-crossing scattering of the pair `(m1, m2)` at color `alpha`.
pub fn rhat_pair(m1: u32, m2: u32, alpha: u32) -> Arc<PairAction> {
    pair_action(m1, m2, alpha, true)
}

/// Negative-crossing scattering; exact inverse of [`rhat_pair`].
pub fn rhat_inv_pair(m1: u32, m2: u32, alpha: u32) -> Arc<PairAction> {
    pair_action(m1, m2, alpha, false)
}

/// Finitely supported vector in the tensor product of weight modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateVector {
    strands: usize,
    terms: BTreeMap<BasisState, QuarterLaurent>,
}

impl StateVector {
    pub fn zero(strands: usize) -> Self {
        StateVector {
            strands,
            terms: BTreeMap::new(),
        }
    }

    pub fn seed(state: BasisState) -> Self {
        let mut v = StateVector::zero(state.len());
        v.add_term(state, QuarterLaurent::term(0, crate::exactalg::ri(1)));
        v
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn add_term(&mut self, state: BasisState, coeff: QuarterLaurent) {
        assert_eq!(state.len(), self.strands, "state length mismatch");
        if coeff.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(state)
            .or_insert_with(QuarterLaurent::zero);
        *slot = std::mem::replace(slot, QuarterLaurent::zero()) + coeff;
        // keep the support tight: drop exact cancellations
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn coeff(&self, state: &[u32]) -> QuarterLaurent {
        self.terms
            .get(state)
            .cloned()
            .unwrap_or_else(QuarterLaurent::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisState, &QuarterLaurent)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Act by one braid letter.  The total weight of every term is preserved;
    /// the crossing only redistributes it between the two strands involved.
    pub fn apply_letter(&self, letter: i32, alpha: u32) -> StateVector {
        assert!(letter != 0, "letter 0 is not a crossing");
        let j = letter.unsigned_abs() as usize;
        assert!(
            j < self.strands,
            "letter {letter} out of range for {} strands",
            self.strands
        );
        let positive = letter > 0;
        let mut out = StateVector::zero(self.strands);
        for (state, c) in &self.terms {
            let (m1, m2) = (state[j - 1], state[j]);
            for ((t1, t2), rc) in pair_action(m1, m2, alpha, positive).iter() {
                debug_assert_eq!(t1 + t2, m1 + m2, "crossing changed the total weight");
                let mut target = state.clone();
                target[j - 1] = *t1;
                target[j] = *t2;
                out.add_term(target, c.clone() * rc.clone());
            }
        }
        out
    }

    /// Act by a whole word, first letter first.
    pub fn apply_word(&self, braid: &BraidWord, alpha: u32) -> StateVector {
        assert_eq!(braid.strands(), self.strands);
        let mut v = self.clone();
        for &letter in braid.letters() {
            v = v.apply_letter(letter, alpha);
        }
        v
    }
}

/// All states of the given total weight (grade) on `strands` strands.
pub fn states_of_grade(strands: usize, grade: u32) -> Vec<BasisState> {
    fn rec(prefix: &mut BasisState, remaining: u32, slots: usize, out: &mut Vec<BasisState>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for m in 0..=remaining {
            prefix.push(m);
            rec(prefix, remaining - m, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), grade, strands, &mut out);
    out
}
