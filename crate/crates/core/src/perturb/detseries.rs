//! Taylor expansion of the inverse Alexander determinant of the
//! parametrized braid matrix around the Burau point.
//!
//! Each crossing's 2x2 block carries its own deformation variables: the
//! `a`-parameter offset `da` and three marker variables `e1, e2, e12` whose
//! exponentials tag the row/column/corner multiplicities that the
//! per-crossing operators differentiate against.  The grading parameter
//! `kappa` enters through the reduced determinant `det(1 - kappa * B)` and
//! is expanded around `kappa = 1`.
//!
//! The inverse determinant is kept exact as a sum of polynomial numerators
//! over powers of the base determinant `D00 = det(1 - B_Burau)`:
//!
//! ```text
//! 1/det = sum_{i>=0} (-1)^i R^i / D00^(i+1),   R = det - D00,
//! ```
//!
//! which terminates under the weight cap because every monomial of `R`
//! carries positive weight.

use super::multipoly::{
    num_vars, MultiPoly, KAPPA_SLOT, SLOT_DA, SLOT_E1, SLOT_E2, SLOT_E12, VARS_PER_CROSSING,
};
use crate::braid::BraidWord;
use crate::burau::{reduced_burau, LMat};
use crate::exactalg::{Laurent, TruncSeries};
use crate::Error;
use num_traits::{One, Zero};

/// `1/det(1 - kappa B({a}, {e}))` as numerators over powers of the base
/// determinant, exact through the weight cap.
pub struct MultiTaylor {
    pub nvars: usize,
    pub cap: usize,
    /// Base determinant `det(1 - B_Burau(t))`; the common denominator.
    pub d00: Laurent,
    /// Pairs `(p, N_p)` standing for `N_p / d00^p`.
    pub terms: Vec<(u32, MultiPoly)>,
}

/// The parametrized 2x2 block of one crossing, placed at strand `pos`
/// (0-based), as columns-are-images inside an otherwise identity matrix.
fn param_letter(strands: usize, letter: i32, crossing: usize, nvars: usize, cap: usize) -> Vec<Vec<MultiPoly>> {
    let n = strands;
    let base = 1 + VARS_PER_CROSSING * crossing;
    let e1 = MultiPoly::exp_var(nvars, base + SLOT_E1, cap);
    let e2 = MultiPoly::exp_var(nvars, base + SLOT_E2, cap);
    let e12 = MultiPoly::exp_var(nvars, base + SLOT_E12, cap);
    let da = MultiPoly::var(nvars, base + SLOT_DA);

    let mut m: Vec<Vec<MultiPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        MultiPoly::one(nvars)
                    } else {
                        MultiPoly::zero(nvars)
                    }
                })
                .collect()
        })
        .collect();

    let p = (letter.unsigned_abs() as usize) - 1;
    let t = Laurent::term(1, crate::exactalg::ri(1));
    let t_inv = Laurent::term(-1, crate::exactalg::ri(1));
    if letter > 0 {
        // base a = 1 - t
        let a = MultiPoly::constant(nvars, Laurent::constant(crate::exactalg::ri(1)) - t.clone())
            .add(&da);
        m[p][p] = e1.mul_capped(&e12, cap).mul_capped(&a, cap);
        m[p][p + 1] = e2.scale(&t);
        m[p + 1][p] = e1;
        m[p + 1][p + 1] = MultiPoly::zero(nvars);
    } else {
        // base a' = 1 - 1/t
        let a = MultiPoly::constant(
            nvars,
            Laurent::constant(crate::exactalg::ri(1)) - t_inv.clone(),
        )
        .add(&da);
        m[p][p] = MultiPoly::zero(nvars);
        m[p][p + 1] = e2.clone();
        m[p + 1][p] = e1.scale(&t_inv);
        m[p + 1][p + 1] = e2.mul_capped(&e12, cap).mul_capped(&a, cap);
    }
    m
}

fn mat_mul(a: &[Vec<MultiPoly>], b: &[Vec<MultiPoly>], cap: usize) -> Vec<Vec<MultiPoly>> {
    let n = a.len();
    let nvars = a[0][0].nvars();
    let mut out = vec![vec![MultiPoly::zero(nvars); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = MultiPoly::zero(nvars);
            for k in 0..n {
                if a[i][k].is_zero() || b[k][j].is_zero() {
                    continue;
                }
                acc = acc.add(&a[i][k].mul_capped(&b[k][j], cap));
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Cofactor determinant along the first row; the caller handles the empty
/// matrix (its determinant is 1 but the variable count is not recoverable).
fn mat_det(m: &[Vec<MultiPoly>], cap: usize) -> MultiPoly {
    let n = m.len();
    assert!(n > 0, "mat_det: empty matrix");
    let nvars = m[0][0].nvars();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = MultiPoly::zero(nvars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&jj| jj != j)
                    .map(|jj| m[i][jj].clone())
                    .collect()
            })
            .collect();
        let cof = m[0][j].mul_capped(&mat_det(&minor, cap), cap);
        det = if j % 2 == 0 { det.add(&cof) } else { det.sub(&cof) };
    }
    det
}

/// The full parametrized braid matrix with the broken strand removed, i.e.
/// the product of the parametrized letter blocks with first row and column
/// deleted afterwards.
pub fn param_reduced(braid: &BraidWord, cap: usize) -> Vec<Vec<MultiPoly>> {
    let n = braid.strands();
    let nvars = num_vars(braid.letters().len());
    let mut prod: Vec<Vec<MultiPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        MultiPoly::one(nvars)
                    } else {
                        MultiPoly::zero(nvars)
                    }
                })
                .collect()
        })
        .collect();
    for (c, &letter) in braid.letters().iter().enumerate() {
        let m = param_letter(n, letter, c, nvars, cap);
        prod = mat_mul(&m, &prod, cap);
    }
    // delete the broken strand's row and column
    (1..n)
        .map(|i| (1..n).map(|j| prod[i][j].clone()).collect())
        .collect()
}

/// Expand `1/det(1 - kappa B)` around the Burau base point, keeping
/// monomials of weighted degree at most `cap`.
pub fn det_series(braid: &BraidWord, cap: usize) -> Result<MultiTaylor, Error> {
    braid.require_knot()?;
    let nvars = num_vars(braid.letters().len());
    let reduced = param_reduced(braid, cap);
    let k = reduced.len();

    // 1 - kappa * B with kappa = 1 + dk
    let kappa = MultiPoly::one(nvars).add(&MultiPoly::var(nvars, KAPPA_SLOT));
    let mut mat = vec![vec![MultiPoly::zero(nvars); k]; k];
    for i in 0..k {
        for j in 0..k {
            let w = kappa.mul_capped(&reduced[i][j], cap);
            mat[i][j] = if i == j {
                MultiPoly::one(nvars).sub(&w)
            } else {
                w.neg()
            };
        }
    }
    let det = if k == 0 {
        MultiPoly::one(nvars)
    } else {
        mat_det(&mat, cap)
    };
    let d00 = det.constant_term();
    if d00.is_zero() {
        panic!("internal consistency: base determinant vanished for a knot closure");
    }
    let rest = det.sub(&MultiPoly::constant(nvars, d00.clone()));

    let mut terms = vec![(1u32, MultiPoly::one(nvars))];
    let mut pow = MultiPoly::one(nvars);
    let mut i = 0u32;
    loop {
        pow = pow.mul_capped(&rest, cap);
        i += 1;
        if pow.is_zero() {
            break;
        }
        let signed = if i % 2 == 1 { pow.neg() } else { pow.clone() };
        terms.push((i + 1, signed));
    }

    Ok(MultiTaylor {
        nvars,
        cap,
        d00,
        terms,
    })
}

impl MultiTaylor {
    /// Taylor coefficient of one offset monomial, as `(numerator, p)` pairs
    /// meaning `sum numerator / d00^p`.
    pub fn coeff_parts(&self, mono: &[u8]) -> Vec<(u32, Laurent)> {
        self.terms
            .iter()
            .filter_map(|(p, num)| {
                let c = num.coeff(mono);
                if c.is_zero() {
                    None
                } else {
                    Some((*p, c))
                }
            })
            .collect()
    }

    /// Collapse a coefficient over the common denominator `d00^target`.
    pub fn coeff_over_power(&self, mono: &[u8], target: u32) -> Laurent {
        let mut acc = Laurent::zero();
        for (p, num) in self.coeff_parts(mono) {
            assert!(p <= target, "denominator power exceeds the requested target");
            let mut lifted = num;
            for _ in p..target {
                lifted = lifted * self.d00.clone();
            }
            acc = acc + lifted;
        }
        acc
    }
}

/// Coefficients of `kappa^0 .. kappa^eta_max` in `det(1 - kappa B)` for the
/// plain (unparametrized) reduced Burau matrix.
pub fn det_kappa_coeffs(braid: &BraidWord, eta_max: usize) -> Vec<Laurent> {
    let b = reduced_burau(braid);
    det_kappa_coeffs_of(&b, eta_max)
}

fn det_kappa_coeffs_of(b: &LMat, eta_max: usize) -> Vec<Laurent> {
    let k = b.size();
    let mat: Vec<Vec<TruncSeries<Laurent>>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let mut s = TruncSeries::<Laurent>::new(eta_max);
                    if i == j {
                        s.set(0, Laurent::one());
                    }
                    if eta_max >= 1 {
                        s.set(1, -b.entry(i, j).clone());
                    }
                    s
                })
                .collect()
        })
        .collect();
    let det = series_det(&mat, eta_max);
    det.coeffs().to_vec()
}

fn series_det(m: &[Vec<TruncSeries<Laurent>>], order: usize) -> TruncSeries<Laurent> {
    let n = m.len();
    if n == 0 {
        return TruncSeries::one(order);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = TruncSeries::<Laurent>::new(order);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<TruncSeries<Laurent>>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&jj| jj != j)
                    .map(|jj| m[i][jj].clone())
                    .collect()
            })
            .collect();
        let cof = m[0][j].mul(&series_det(&minor, order));
        det = if j % 2 == 0 { det.add(&cof) } else { det.sub(&cof) };
    }
    det
}

/// `kappa`-series of `1/det(1 - kappa B_Burau)` through `kappa^eta_max`.
pub fn inv_det_kappa_series(braid: &BraidWord, eta_max: usize) -> Vec<Laurent> {
    let coeffs = det_kappa_coeffs(braid, eta_max);
    let det = TruncSeries::from_coeffs(eta_max, coeffs);
    det.recip().coeffs().to_vec()
}

/// Trace of the degree-`eta` piece of the multiplicative endomorphism
/// induced by the reduced Burau matrix (columns are images): expand each
/// image power product and read off the diagonal coefficient.
pub fn graded_trace_burau(braid: &BraidWord, eta: usize) -> Laurent {
    let b = reduced_burau(braid);
    let k = b.size();
    if k == 0 {
        return if eta == 0 { Laurent::one() } else { Laurent::zero() };
    }
    let mut total = Laurent::zero();
    for mono in compositions(k, eta) {
        // expand prod_j (sum_i B[i][j] z_i)^mono[j], coefficient of z^mono
        let mut acc: std::collections::BTreeMap<Vec<u32>, Laurent> =
            std::collections::BTreeMap::new();
        acc.insert(vec![0u32; k], Laurent::one());
        for (j, &mj) in mono.iter().enumerate() {
            for _ in 0..mj {
                let mut next: std::collections::BTreeMap<Vec<u32>, Laurent> =
                    std::collections::BTreeMap::new();
                for (vm, vc) in &acc {
                    for i in 0..k {
                        let w = b.entry(i, j);
                        if w.is_zero() {
                            continue;
                        }
                        let mut m2 = vm.clone();
                        m2[i] += 1;
                        // prune monomials that already exceed the target
                        if m2[i] > mono[i] {
                            continue;
                        }
                        let e = next.entry(m2).or_insert_with(Laurent::zero);
                        *e = std::mem::replace(e, Laurent::zero()) + vc.clone() * w.clone();
                    }
                }
                acc = next;
            }
        }
        if let Some(c) = acc.get(&mono) {
            total = total + c.clone();
        }
    }
    total
}

/// All weak compositions of `total` into `parts` slots.
fn compositions(parts: usize, total: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; parts];
    fn rec(cur: &mut Vec<u32>, idx: usize, left: usize, out: &mut Vec<Vec<u32>>) {
        if idx + 1 == cur.len() {
            cur[idx] = left as u32;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[idx] = v as u32;
            rec(cur, idx + 1, left - v, out);
        }
    }
    if parts == 0 {
        if total == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(&mut cur, 0, total, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burau::{alexander_conway, burau_letter};
    use crate::exactalg::ri;

    fn knot(word: &str, strands: usize) -> BraidWord {
        BraidWord::parse(word, strands).unwrap()
    }

    #[test]
    fn trefoil_base_determinant_is_alexander_numerator() {
        let b = knot("1,1,1", 2);
        let f = det_series(&b, 0).unwrap();
        // det(1 - Burau(trefoil reduced)) = 1 - t + t^2
        assert_eq!(f.d00, Laurent::from_int_pairs(&[(0, 1), (1, -1), (2, 1)]));
        // zeroth Taylor coefficient of the inverse is 1/d00
        let parts = f.coeff_parts(&[0u8; 13]);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0], (1, Laurent::one()));
        // and t^w * d00 is the symmetric Alexander form
        let delta = alexander_conway(&b).unwrap();
        let w = b.symmetrization_exponent();
        assert_eq!(f.d00.shift(w), delta.to_symmetric_laurent());
    }

    #[test]
    fn kappa_coefficients_of_det_match_characteristic_sums() {
        // for the trefoil the reduced matrix is 1x1 with entry t - t^2:
        // det(1 - kB) = 1 - k(t - t^2)
        let b = knot("1,1,1", 2);
        let c = det_kappa_coeffs(&b, 3);
        assert_eq!(c[0], Laurent::one());
        assert_eq!(c[1], Laurent::from_int_pairs(&[(1, -1), (2, 1)]));
        assert!(c[2].is_zero() && c[3].is_zero());
    }

    #[test]
    fn inverse_det_kappa_series_is_graded_trace_generating_function() {
        for (word, strands) in [("1,1,1", 2usize), ("1,-2,1,-2", 3)] {
            let b = knot(word, strands);
            let inv = inv_det_kappa_series(&b, 4);
            for eta in 0..=4usize {
                let tr = graded_trace_burau(&b, eta);
                assert_eq!(inv[eta], tr, "word {word} eta {eta}");
            }
        }
    }

    #[test]
    fn determinant_minus_one_vanishes_at_zero_a_base() {
        // with every a-parameter set to 0 the base blocks are permutation-like
        // and det(1 - kappa B) must be identically 1: all kappa-coefficients
        // beyond the constant vanish.
        for (word, strands) in [("1,1,1", 2usize), ("1,-2,1,-2", 3)] {
            let b = knot(word, strands);
            let n = b.strands();
            let mut prod = LMat::identity(n);
            for &letter in b.letters() {
                let mut m = burau_letter(n, letter);
                // zero out the a-entry: diagonal corner of the block
                let p = (letter.unsigned_abs() as usize) - 1;
                if letter > 0 {
                    m.set(p, p, Laurent::zero());
                } else {
                    m.set(p + 1, p + 1, Laurent::zero());
                }
                prod = m.mul(&prod);
            }
            let reduced = prod.delete_first();
            let coeffs = det_kappa_coeffs_of(&reduced, 4);
            assert_eq!(coeffs[0], Laurent::one(), "word {word}");
            for (j, c) in coeffs.iter().enumerate().skip(1) {
                assert!(c.is_zero(), "word {word} kappa^{j} coefficient {c:?}");
            }
        }
    }

    #[test]
    fn zero_a_base_matrix_is_nilpotent() {
        for (word, strands) in [("1,1,1", 2usize), ("1,-2,1,-2", 3), ("1,1,1,1,1", 2)] {
            let b = knot(word, strands);
            let n = b.strands();
            let mut prod = LMat::identity(n);
            for &letter in b.letters() {
                let mut m = burau_letter(n, letter);
                let p = (letter.unsigned_abs() as usize) - 1;
                if letter > 0 {
                    m.set(p, p, Laurent::zero());
                } else {
                    m.set(p + 1, p + 1, Laurent::zero());
                }
                prod = m.mul(&prod);
            }
            let reduced = prod.delete_first();
            let k = reduced.size();
            let mut pow = reduced.clone();
            for _ in 1..k {
                pow = pow.mul(&reduced);
            }
            for i in 0..k {
                for j in 0..k {
                    assert!(pow.entry(i, j).is_zero(), "word {word} entry {i},{j}");
                }
            }
        }
    }

    #[test]
    fn first_derivative_matches_finite_difference() {
        // the trefoil determinant is linear in the single-crossing offset
        // da_0, so the exact finite-difference quotient in a equals the
        // Taylor coefficient: (1/det|_{a+s} - 1/det|_a)/s = dF as rational
        // functions, verified here by cross-multiplication.
        let b = knot("1,1,1", 2);
        let f = det_series(&b, 2).unwrap();
        let mut mono = vec![0u8; f.nvars];
        mono[1 + SLOT_DA] = 1; // da of the first crossing
        let d_num = f.coeff_over_power(&mono, 2); // dF = d_num / d00^2

        // shifted determinant: a = (1 - t) + s at the first crossing only
        let s = ri(1) / ri(7);
        let n = b.strands();
        let mut prod = LMat::identity(n);
        for (c, &letter) in b.letters().iter().enumerate() {
            let mut m = burau_letter(n, letter);
            if c == 0 {
                let p = (letter.unsigned_abs() as usize) - 1;
                let shifted = m.entry(p, p).clone() + Laurent::constant(s.clone());
                m.set(p, p, shifted);
            }
            prod = m.mul(&prod);
        }
        let shifted_det = prod.delete_first().id_minus().det();
        let base_det = f.d00.clone();
        // (1/shifted - 1/base)/s == d_num/base^2
        // <=> (base - shifted) * base^2 == s * d_num * shifted * base
        let lhs = (base_det.clone() - shifted_det.clone()) * base_det.clone() * base_det.clone();
        let rhs = Laurent::constant(s) * d_num * shifted_det * base_det;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rejects_links() {
        let b = knot("1,-1", 2);
        assert!(det_series(&b, 0).is_err());
    }

    /// The 2x2 parametrized block, read as a multiplicative endomorphism on
    /// monomials (columns are images), must reproduce the closed-form
    /// transition coefficients: a positive crossing sends `(m1, m2)` to
    /// `(m2 + n, m1 - n)` with coefficient
    /// `C(m1, n) a^n e^(e1 m1) e^(e2 m2) e^(e12 n) t^(m2)`,
    /// and a negative crossing sends it to `(m2 - n, m1 + n)` with
    /// `C(m2, n) a'^n e^(e1 m1) e^(e2 m2) e^(e12 n) t^(-m1)`.
    #[test]
    fn block_endomorphism_matches_transition_coefficients() {
        let cap = 4usize;
        let nvars = num_vars(1);
        let base = 1usize;
        let t_pow = |k: i64| Laurent::term(k, ri(1));

        // e^(var * m) truncated by weight
        let exp_scaled = |slot: usize, m: u32| -> MultiPoly {
            let mut p = MultiPoly::zero(nvars);
            let mut inv_fact = ri(1);
            for r in 0..=cap {
                if r > 0 {
                    inv_fact = inv_fact / ri(r as i64);
                }
                let mut mono = vec![0u8; nvars];
                mono[slot] = r as u8;
                let mut c = inv_fact.clone();
                for _ in 0..r {
                    c *= ri(m as i64);
                }
                p.add_term(mono, Laurent::constant(c));
            }
            p
        };

        for letter in [1i32, -1] {
            let block = super::param_letter(2, letter, 0, nvars, cap);
            for m1 in 0..=3u32 {
                for m2 in 0..=(3 - m1) {
                    // expand (image z1)^m1 (image z2)^m2 over (z1, z2)
                    let mut acc: std::collections::BTreeMap<(u32, u32), MultiPoly> =
                        std::collections::BTreeMap::new();
                    acc.insert((0, 0), MultiPoly::one(nvars));
                    for (col, reps) in [(0usize, m1), (1usize, m2)] {
                        for _ in 0..reps {
                            let mut next: std::collections::BTreeMap<(u32, u32), MultiPoly> =
                                std::collections::BTreeMap::new();
                            for (&(d1, d2), c) in &acc {
                                for row in 0..2usize {
                                    if block[row][col].is_zero() {
                                        continue;
                                    }
                                    let key = if row == 0 { (d1 + 1, d2) } else { (d1, d2 + 1) };
                                    let add = c.mul_capped(&block[row][col], cap);
                                    let e = next.entry(key).or_insert_with(|| MultiPoly::zero(nvars));
                                    *e = e.add(&add);
                                }
                            }
                            acc = next;
                        }
                    }
                    acc.retain(|_, v| !v.is_zero());

                    // closed-form expectation
                    let mut expected: std::collections::BTreeMap<(u32, u32), MultiPoly> =
                        std::collections::BTreeMap::new();
                    let markers = |n: u32| {
                        exp_scaled(base + SLOT_E1, m1)
                            .mul_capped(&exp_scaled(base + SLOT_E2, m2), cap)
                            .mul_capped(&exp_scaled(base + SLOT_E12, n), cap)
                    };
                    if letter > 0 {
                        let a = MultiPoly::constant(
                            nvars,
                            Laurent::constant(ri(1)) - t_pow(1),
                        )
                        .add(&MultiPoly::var(nvars, base + SLOT_DA));
                        for n in 0..=m1 {
                            let mut c = MultiPoly::constant(
                                nvars,
                                Laurent::constant(crate::exactalg::binom(m1 as i64, n as u64))
                                    * t_pow(m2 as i64),
                            );
                            for _ in 0..n {
                                c = c.mul_capped(&a, cap);
                            }
                            c = c.mul_capped(&markers(n), cap);
                            expected.insert((m2 + n, m1 - n), c);
                        }
                    } else {
                        let a = MultiPoly::constant(
                            nvars,
                            Laurent::constant(ri(1)) - t_pow(-1),
                        )
                        .add(&MultiPoly::var(nvars, base + SLOT_DA));
                        for n in 0..=m2 {
                            let mut c = MultiPoly::constant(
                                nvars,
                                Laurent::constant(crate::exactalg::binom(m2 as i64, n as u64))
                                    * t_pow(-(m1 as i64)),
                            );
                            for _ in 0..n {
                                c = c.mul_capped(&a, cap);
                            }
                            c = c.mul_capped(&markers(n), cap);
                            expected.insert((m2 - n, m1 + n), c);
                        }
                    }
                    expected.retain(|_, v| !v.is_zero());

                    assert_eq!(
                        acc.len(),
                        expected.len(),
                        "letter {letter} state ({m1},{m2})"
                    );
                    for (k, v) in &expected {
                        let got = acc.get(k).unwrap_or_else(|| {
                            panic!("letter {letter} state ({m1},{m2}): missing target {k:?}")
                        });
                        assert!(
                            got.sub(v).is_zero(),
                            "letter {letter} state ({m1},{m2}) target {k:?}"
                        );
                    }
                }
            }
        }
    }
}
