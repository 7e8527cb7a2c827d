//! Multivariate polynomials in the deformation offsets, with Laurent
//! coefficients in the Alexander variable `t`.
//!
//! Variable layout is fixed by convention: slot `0` is the offset of the
//! grading parameter `kappa` around `1`, and each crossing `c` owns the four
//! consecutive slots `1 + 4c .. 5 + 4c` holding `(da, e1, e2, e12)` -- the
//! offset of the `a`-parameter and the three exponential marker variables.
//!
//! Truncation is by *weighted* total degree: the kappa offset costs 2, every
//! other offset costs 1.  A monomial of weight `w` first contributes to the
//! loop expansion at `h^ceil(w/2)`, so weight cap `2n` is exactly what line
//! `n` needs.  (A flat per-variable cap is not enough: the second line
//! already pairs fourth powers of a single marker variable.)

use crate::exactalg::{Laurent, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub const KAPPA_SLOT: usize = 0;
pub const VARS_PER_CROSSING: usize = 4;

/// Slots of one crossing's variables, relative to its base `1 + 4c`.
pub const SLOT_DA: usize = 0;
pub const SLOT_E1: usize = 1;
pub const SLOT_E2: usize = 2;
pub const SLOT_E12: usize = 3;

pub fn num_vars(crossings: usize) -> usize {
    1 + VARS_PER_CROSSING * crossings
}

/// Weighted degree of a monomial: kappa offsets count double.
pub fn weight(mono: &[u8]) -> usize {
    let mut w = mono[KAPPA_SLOT] as usize * 2;
    for &e in &mono[1..] {
        w += e as usize;
    }
    w
}

#[derive(Clone, PartialEq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u8>, Laurent>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Laurent) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Laurent::one())
    }

    /// The monomial `var^1`.
    pub fn var(nvars: usize, slot: usize) -> Self {
        let mut mono = vec![0u8; nvars];
        mono[slot] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(mono, Laurent::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, mono: Vec<u8>, c: Laurent) {
        assert_eq!(mono.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono).or_insert_with(Laurent::zero);
        *slot = std::mem::replace(slot, Laurent::zero()) + c;
        // drop exact cancellations eagerly
        let keys: Vec<Vec<u8>> = self
            .terms
            .iter()
            .filter(|(_, v)| v.is_zero())
            .map(|(k, _)| k.clone())
            .collect();
        for k in keys {
            self.terms.remove(&k);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u8>, &Laurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &[u8]) -> Laurent {
        self.terms.get(mono).cloned().unwrap_or_else(Laurent::zero)
    }

    /// Coefficient of the all-zero monomial.
    pub fn constant_term(&self) -> Laurent {
        self.coeff(&vec![0u8; self.nvars])
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (mono, c) in &rhs.terms {
            out.add_term(mono.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), -v.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, f: &Laurent) -> Self {
        if f.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.clone() * f.clone()))
                .collect(),
        }
    }

    pub fn scale_rat(&self, f: &Rat) -> Self {
        self.scale(&Laurent::term(0, f.clone()))
    }

    /// Product, dropping every monomial whose weight exceeds `cap`.
    pub fn mul_capped(&self, rhs: &Self, cap: usize) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            let w1 = weight(m1);
            if w1 > cap {
                continue;
            }
            for (m2, c2) in &rhs.terms {
                if w1 + weight(m2) > cap {
                    continue;
                }
                let mono: Vec<u8> = m1.iter().zip(m2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(mono, c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Drop monomials above the weight cap (used after additions of
    /// ingredients built with different caps).
    pub fn truncate_weight(&self, cap: usize) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| weight(m) <= cap)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Truncated exponential `exp(var)` through the weight cap.
    pub fn exp_var(nvars: usize, slot: usize, cap: usize) -> Self {
        let mut p = Self::zero(nvars);
        let mut inv_fact = Rat::from_integer(1.into());
        for r in 0..=cap {
            if r > 0 {
                inv_fact = inv_fact / Rat::from_integer((r as i64).into());
            }
            let mut mono = vec![0u8; nvars];
            mono[slot] = r as u8;
            if weight(&mono) > cap {
                break;
            }
            p.add_term(mono, Laurent::term(0, inv_fact.clone()));
        }
        p
    }
}

impl std::fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{:?}*v{:?}", c, m))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ri;

    #[test]
    fn weighted_cap_respects_kappa_double_cost() {
        let n = num_vars(1);
        let k = MultiPoly::var(n, KAPPA_SLOT);
        let e = MultiPoly::var(n, 1 + SLOT_E1);
        // weight(kappa * e1) = 3 > 2, so a cap of 2 kills the cross term
        let prod = k.mul_capped(&e, 2);
        assert!(prod.is_zero());
        let prod = k.mul_capped(&e, 3);
        assert_eq!(prod.num_terms(), 1);
    }

    #[test]
    fn exp_var_truncates_by_weight() {
        let n = num_vars(1);
        let e = MultiPoly::exp_var(n, 1 + SLOT_E2, 4);
        let mut mono = vec![0u8; n];
        mono[1 + SLOT_E2] = 4;
        assert_eq!(e.coeff(&mono), Laurent::term(0, ri(1) / ri(24)));
        mono[1 + SLOT_E2] = 5;
        assert!(e.coeff(&mono).is_zero());
        // exp(x)*exp(x) = exp(2x) through the cap
        let sq = e.mul_capped(&e, 4);
        mono[1 + SLOT_E2] = 3;
        assert_eq!(sq.coeff(&mono), Laurent::term(0, ri(8) / ri(6)));
    }

    #[test]
    fn cancellation_removes_terms() {
        let n = num_vars(1);
        let a = MultiPoly::var(n, 1 + SLOT_DA);
        let diff = a.sub(&a);
        assert!(diff.is_zero());
    }
}
