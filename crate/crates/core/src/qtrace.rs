//! Colored Jones polynomials via broken-strand quantum traces.
//!
//! Close the braid on all strands but the first, which is cut open.  The
//! invariant is a weighted partial trace of the braid action: seeds are
//! states `(0, k_2, ..., k_N)` with `k_j < alpha`, each contributing its
//! diagonal matrix element times the weight `q^((alpha-1-2k_j)/2)` per closed
//! strand, and the whole sum is corrected by the framing factor
//! `q^(-(alpha^2-1) e / 4)` for writhe `e`.
//!
//! The same trace can be organized by total weight ("strata"): the sum of
//! unweighted diagonal blocks `S_eta` over states of grade `eta`, reassembled
//! with geometric weights.  Both assemblies are implemented; they must agree,
//! and strata beyond `(N-1)(alpha-1)` must vanish identically.

use crate::braid::BraidWord;
use crate::exactalg::{qpow, Laurent, QuarterLaurent, Rat, TruncSeries};
use crate::rmatrix::{states_of_grade, StateVector};
use crate::Error;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JonesResult {
    pub alpha: u32,
    /// Framing correction applied, in quarter units: `-(alpha^2 - 1) * e`.
    pub framing_quarter: i64,
    /// The invariant in whole powers of `q`.
    pub v: Laurent,
    /// Same polynomial, exponents still in quarter units.
    pub v_quarter: QuarterLaurent,
}

/// Weighted diagonal sum over all seeds, one strand broken.
pub fn colored_jones(braid: &BraidWord, alpha: u32) -> Result<JonesResult, Error> {
    if alpha == 0 {
        return Err(Error::BadInput("color must be at least 1".into()));
    }
    braid.require_knot()?;
    let n = braid.strands();
    let e = braid.writhe();

    let mut trace = QuarterLaurent::zero();
    let mut seeds = vec![0u32; n];
    loop {
        // diagonal element at this seed
        let out = StateVector::seed(seeds.clone()).apply_word(braid, alpha);
        let diag = out.coeff(&seeds);
        if !diag.is_zero() {
            let weight: i64 = seeds[1..]
                .iter()
                .map(|&k| 2 * (alpha as i64 - 1 - 2 * k as i64))
                .sum();
            trace = trace + qpow(weight) * diag;
        }
        // next seed: odometer over k_2..k_N in 0..alpha
        let mut j = n;
        loop {
            if j == 1 {
                break;
            }
            seeds[j - 1] += 1;
            if seeds[j - 1] < alpha {
                break;
            }
            seeds[j - 1] = 0;
            j -= 1;
        }
        if j == 1 {
            break;
        }
    }

    let framing_quarter = -(alpha as i64 * alpha as i64 - 1) * e;
    let v_quarter = qpow(framing_quarter) * trace;
    finish(alpha, framing_quarter, v_quarter)
}

fn finish(
    alpha: u32,
    framing_quarter: i64,
    v_quarter: QuarterLaurent,
) -> Result<JonesResult, Error> {
    let v = v_quarter.to_whole_exponents().unwrap_or_else(|| {
        panic!("internal consistency: V_{alpha} has fractional exponents: {v_quarter}")
    });
    assert!(
        v.coeffs_are_integers(),
        "internal consistency: V_{alpha} has non-integer coefficients: {v}"
    );
    Ok(JonesResult {
        alpha,
        framing_quarter,
        v,
        v_quarter,
    })
}

/// Unweighted diagonal sum over the grade-`eta` block, first strand pinned
/// to weight zero.  States are enumerated without any per-strand cap.
pub fn stratified_trace(braid: &BraidWord, alpha: u32, eta: u32) -> QuarterLaurent {
    let n = braid.strands();
    let mut total = QuarterLaurent::zero();
    if n == 1 {
        return if eta == 0 {
            QuarterLaurent::term(0, crate::exactalg::ri(1))
        } else {
            total
        };
    }
    for tail in states_of_grade(n - 1, eta) {
        let mut state = Vec::with_capacity(n);
        state.push(0);
        state.extend_from_slice(&tail);
        let out = StateVector::seed(state.clone()).apply_word(braid, alpha);
        total = total + out.coeff(&state);
    }
    total
}

/// The trace reassembled stratum by stratum; must agree with
/// [`colored_jones`] and is the form the perturbative pipeline mirrors.
pub fn colored_jones_stratified(braid: &BraidWord, alpha: u32) -> Result<JonesResult, Error> {
    if alpha == 0 {
        return Err(Error::BadInput("color must be at least 1".into()));
    }
    braid.require_knot()?;
    let n = braid.strands();
    let e = braid.writhe();

    let eta_max = (n as i64 - 1) * (alpha as i64 - 1);
    let mut sum = QuarterLaurent::zero();
    for eta in 0..=eta_max {
        let s = stratified_trace(braid, alpha, eta as u32);
        sum = sum + qpow(-4 * eta) * s;
    }
    let framing_quarter = -(alpha as i64 * alpha as i64 - 1) * e;
    let head = qpow(framing_quarter) * qpow(2 * (alpha as i64 - 1) * (n as i64 - 1));
    finish(alpha, framing_quarter, head * sum)
}

/// `V_alpha` expanded at `q = 1 + h`, truncated at `h^order`.
pub fn jones_h_series(braid: &BraidWord, alpha: u32, order: usize) -> Result<TruncSeries<Rat>, Error> {
    Ok(colored_jones(braid, alpha)?.v.subst_one_plus(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ri;

    fn braid(word: &str, strands: usize) -> BraidWord {
        BraidWord::parse(word, strands).unwrap()
    }

    #[test]
    fn unknot_on_one_strand() {
        let b = braid("", 1);
        for alpha in 1..=8 {
            let r = colored_jones(&b, alpha).unwrap();
            assert_eq!(r.v, Laurent::from_int_pairs(&[(0, 1)]), "alpha={alpha}");
        }
    }

    #[test]
    fn stabilized_unknots_on_two_strands() {
        for word in ["1", "-1"] {
            let b = braid(word, 2);
            for alpha in 1..=4 {
                let r = colored_jones(&b, alpha).unwrap();
                assert_eq!(r.v, Laurent::from_int_pairs(&[(0, 1)]), "word={word} alpha={alpha}");
            }
        }
    }

    #[test]
    fn trefoil_classical_jones_by_dense_block() {
        // Independent route at alpha = 2: cube the explicit 4x4 crossing
        // block with flat matrix arithmetic, trace the (0,k) diagonal against
        // the weights q^((1-2k)/2), apply the framing factor by hand.
        let alpha = 2u32;
        let dim = 4usize; // pairs (m1, m2), m < 2, index 2*m1 + m2
        let mut block = vec![vec![QuarterLaurent::zero(); dim]; dim];
        for m1 in 0..2u32 {
            for m2 in 0..2u32 {
                for ((t1, t2), c) in crate::rmatrix::rhat_pair(m1, m2, alpha).iter() {
                    block[(2 * t1 + t2) as usize][(2 * m1 + m2) as usize] = c.clone();
                }
            }
        }
        let mul = |a: &Vec<Vec<QuarterLaurent>>, b: &Vec<Vec<QuarterLaurent>>| {
            let mut out = vec![vec![QuarterLaurent::zero(); dim]; dim];
            for i in 0..dim {
                for j in 0..dim {
                    let mut s = QuarterLaurent::zero();
                    for k in 0..dim {
                        s = s + a[i][k].clone() * b[k][j].clone();
                    }
                    out[i][j] = s;
                }
            }
            out
        };
        let cube = mul(&mul(&block, &block), &block);
        let mut trace = QuarterLaurent::zero();
        for k in 0..2i64 {
            // seed (0, k): index k; weight q^((1-2k)/2) = qpow(2*(1-2k))
            trace = trace + qpow(2 * (1 - 2 * k)) * cube[k as usize][k as usize].clone();
        }
        let oracle = qpow(-(4 - 1) * 3) * trace;

        let direct = colored_jones(&braid("1,1,1", 2), 2).unwrap();
        assert_eq!(direct.v_quarter, oracle);
        // and the classical value: V(right trefoil) = -q^-4 + q^-3 + q^-1
        assert_eq!(
            direct.v,
            Laurent::from_int_pairs(&[(-4, -1), (-3, 1), (-1, 1)])
        );
    }

    #[test]
    fn figure_eight_classical_jones() {
        let r = colored_jones(&braid("1,-2,1,-2", 3), 2).unwrap();
        // amphichiral: q^2 - q + 1 - q^-1 + q^-2
        assert_eq!(
            r.v,
            Laurent::from_int_pairs(&[(2, 1), (1, -1), (0, 1), (-1, -1), (-2, 1)])
        );
        assert!(r.v.is_symmetric());
    }

    #[test]
    fn cinquefoil_classical_jones() {
        let r = colored_jones(&braid("1,1,1,1,1", 2), 2).unwrap();
        // V(5_1), same chirality convention as the trefoil test
        assert_eq!(
            r.v,
            Laurent::from_int_pairs(&[(-7, -1), (-6, 1), (-5, -1), (-4, 1), (-2, 1)])
        );
    }

    #[test]
    fn mirror_word_mirrors_the_polynomial() {
        let b = braid("1,1,1", 2);
        let m = b.mirror();
        for alpha in 2..=3 {
            let v = colored_jones(&b, alpha).unwrap().v;
            let w = colored_jones(&m, alpha).unwrap().v;
            assert_eq!(v.mirror(), w, "alpha={alpha}");
        }
    }

    #[test]
    fn markov_moves_leave_the_invariant_alone() {
        // both stabilizations of the trefoil, and a conjugation of the
        // figure-eight word (conjugation keeps the closure a knot there)
        let trefoil = braid("1,1,1", 2);
        let stab_pos = braid("1,1,1,2", 3);
        let stab_neg = braid("1,1,1,-2", 3);
        let fig8 = braid("1,-2,1,-2", 3);
        let fig8_conj = braid("2,1,-2,1,-2,-2", 3);
        for alpha in 1..=3 {
            let v = colored_jones(&trefoil, alpha).unwrap().v;
            for (name, w) in [("stab+", &stab_pos), ("stab-", &stab_neg)] {
                let u = colored_jones(w, alpha).unwrap().v;
                assert_eq!(u, v, "{name} alpha={alpha}");
            }
            let f = colored_jones(&fig8, alpha).unwrap().v;
            let g = colored_jones(&fig8_conj, alpha).unwrap().v;
            assert_eq!(f, g, "conj alpha={alpha}");
        }
    }

    #[test]
    fn stratified_assembly_agrees_with_direct() {
        for (word, n) in [("1,1,1", 2), ("1,-2,1,-2", 3)] {
            let b = braid(word, n);
            for alpha in 1..=3 {
                let direct = colored_jones(&b, alpha).unwrap();
                let strat = colored_jones_stratified(&b, alpha).unwrap();
                assert_eq!(direct.v, strat.v, "word={word} alpha={alpha}");
            }
        }
    }

    #[test]
    fn strata_past_the_cutoff_vanish() {
        // S_eta = 0 for eta > (N-1)(alpha-1) even though the enumeration
        // includes states far past any per-strand cap.
        let trefoil = braid("1,1,1", 2);
        for eta in 2..=4 {
            assert!(stratified_trace(&trefoil, 2, eta).is_zero(), "eta={eta}");
        }
        let fig8 = braid("1,-2,1,-2", 3);
        for eta in 3..=5 {
            assert!(stratified_trace(&fig8, 2, eta).is_zero(), "eta={eta}");
        }
    }

    #[test]
    fn h_series_starts_at_one() {
        // V_alpha(q = 1) = 1 for every knot and color
        for (word, n) in [("1,1,1", 2), ("1,-2,1,-2", 3), ("1,1,1,1,1", 2)] {
            let b = braid(word, n);
            for alpha in 1..=4 {
                let s = jones_h_series(&b, alpha, 3).unwrap();
                assert_eq!(*s.coeff(0), ri(1), "word={word} alpha={alpha}");
            }
        }
    }

    #[test]
    fn link_inputs_are_rejected() {
        let b = braid("1,-1", 2);
        assert!(matches!(colored_jones(&b, 2), Err(Error::NotAKnot { .. })));
    }
}
