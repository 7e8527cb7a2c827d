//! Assembly of a loop-expansion line from the determinant Taylor series and
//! the per-crossing operators.
//!
//! Each crossing contributes a differential operator in its four offset
//! variables, written here as a polynomial in commuting derivative symbols
//! `(da, e1, e2, e12)` with truncated `h`-series coefficients:
//!
//! ```text
//! positive:  [1 + sum_{j>=1} h^j da^j sum_k h^k T1_{j,k}(e2, e2+e12)]
//!          * [1 + sum_{j>=1} h^j T2_j(e1, e12)]
//!          * (1+h)^(e2 + e1 e2 + (e12^2 + e12)/2)
//! ```
//!
//! and the negative crossing is the same shape with `e1 <-> e2` in the
//! window arguments, `h` replaced by `hh = -h/(1+h)` in the polynomial
//! brackets, and the exponential factor inverted.  Pairing a derivative
//! monomial with a Taylor monomial multiplies by the factorials of the
//! matched exponents; the grading offset `dk` is substituted rather than
//! paired, with two selectable conventions for the substituted series.
//!
//! The `h^n` coefficient of the paired sum, restored to the common
//! denominator `D00^(2n+1)` and symmetrized, is the line numerator `P_n`.

use super::detseries::det_series;
use super::multipoly::{weight, KAPPA_SLOT, SLOT_DA, SLOT_E1, SLOT_E2, SLOT_E12};
use super::tpoly::{gen_t_r1, gen_t_r2, Poly2};
use crate::braid::BraidWord;
use crate::burau::{alexander_conway, symmetric_laurent_to_z2};
use crate::exactalg::{ri, Laurent, Rat, TruncSeries};
use crate::mmexpand::LineResult;
use crate::Error;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// How the grading parameter is evaluated after Taylor expansion around 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KappaVariant {
    /// Shift-operator reading of the printed expansion: `kappa -> 1 - h`.
    Shift,
    /// Direct substitution `kappa -> 1/(1+h)`, exact at every order.
    Direct,
}

impl KappaVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            KappaVariant::Shift => "shift",
            KappaVariant::Direct => "direct",
        }
    }

    fn series(self, order: usize) -> TruncSeries<Rat> {
        match self {
            KappaVariant::Shift => {
                let mut s = TruncSeries::new(order);
                if order >= 1 {
                    s.set(1, ri(-1));
                }
                s
            }
            KappaVariant::Direct => TruncSeries::neg_x_over_one_plus(order),
        }
    }
}

/// Per-crossing operator: derivative-symbol monomials `[da, e1, e2, e12]`
/// with `h`-series coefficients, truncated at symbol degree `2n` and
/// `h`-order `n`.
struct CrossingOp {
    terms: BTreeMap<[u8; 4], TruncSeries<Rat>>,
    cap: usize,
    order: usize,
}

impl CrossingOp {
    fn zero(order: usize, cap: usize) -> Self {
        CrossingOp {
            terms: BTreeMap::new(),
            cap,
            order,
        }
    }

    fn one(order: usize, cap: usize) -> Self {
        let mut op = Self::zero(order, cap);
        op.add([0; 4], TruncSeries::one(order));
        op
    }

    fn add(&mut self, mono: [u8; 4], s: TruncSeries<Rat>) {
        if s.is_zero() || mono.iter().map(|&e| e as usize).sum::<usize>() > self.cap {
            return;
        }
        let e = self
            .terms
            .entry(mono)
            .or_insert_with(|| TruncSeries::new(self.order));
        *e = e.add(&s);
        if e.is_zero() {
            self.terms.remove(&mono);
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.order, self.cap);
        for (m1, s1) in &self.terms {
            for (m2, s2) in &rhs.terms {
                let mono = [
                    m1[0] + m2[0],
                    m1[1] + m2[1],
                    m1[2] + m2[2],
                    m1[3] + m2[3],
                ];
                out.add(mono, s1.mul(s2));
            }
        }
        out
    }

    fn scale_series(&self, s: &TruncSeries<Rat>) -> Self {
        let mut out = Self::zero(self.order, self.cap);
        for (m, c) in &self.terms {
            out.add(*m, c.mul(s));
        }
        out
    }

    /// A single derivative symbol.
    fn sym(order: usize, cap: usize, slot: usize) -> Self {
        let mut op = Self::zero(order, cap);
        let mut mono = [0u8; 4];
        mono[slot] = 1;
        op.add(mono, TruncSeries::one(order));
        op
    }

    fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order, self.cap);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Lift a bivariate polynomial to symbol space: evaluate it at symbol
/// polynomials `(x, y)` with a constant series multiplier.
fn lift_poly2(p: &Poly2, x: &CrossingOp, y: &CrossingOp, order: usize, cap: usize) -> CrossingOp {
    let mut out = CrossingOp::zero(order, cap);
    for (&(a, b), c) in p.iter() {
        let term = x
            .pow(a as usize)
            .mul(&y.pow(b as usize))
            .scale_series(&TruncSeries::constant(order, c.clone()));
        for (m, s) in &term.terms {
            out.add(*m, s.clone());
        }
    }
    out
}

/// Build the operator for one crossing sign at line order `n`.
fn crossing_op(positive: bool, n: usize) -> CrossingOp {
    let order = n;
    let cap = 2 * n;
    let sym_da = CrossingOp::sym(order, cap, 0);
    let sym_e1 = CrossingOp::sym(order, cap, 1);
    let sym_e2 = CrossingOp::sym(order, cap, 2);
    let sym_e12 = CrossingOp::sym(order, cap, 3);

    // deformation parameter powers: h^m on positive crossings,
    // (-h/(1+h))^m on negative ones
    let hpow: Vec<TruncSeries<Rat>> = {
        let base = if positive {
            TruncSeries::monomial(order, 1)
        } else {
            TruncSeries::neg_x_over_one_plus(order)
        };
        let mut v = vec![TruncSeries::one(order)];
        for m in 1..=order {
            v.push(v[m - 1].mul(&base));
        }
        v
    };

    // window bracket: 1 + sum_{j>=1, j+k<=n} h^(j+k) da^j T1_{j,k}(lo, hi)
    let (lo, other) = if positive {
        (&sym_e2, &sym_e1)
    } else {
        (&sym_e1, &sym_e2)
    };
    let hi = {
        let mut s = lo.mul(&CrossingOp::one(order, cap));
        for (m, c) in &sym_e12.terms {
            s.add(*m, c.clone());
        }
        s
    };
    let mut bracket_a = CrossingOp::one(order, cap);
    for j in 1..=n {
        for k in 0..=(n - j) {
            let t1 = gen_t_r1(j, k);
            let lifted = lift_poly2(&t1, lo, &hi, order, cap);
            let with_da = sym_da.pow(j).mul(&lifted);
            let scaled = with_da.scale_series(&hpow[j + k]);
            for (m, s) in &scaled.terms {
                bracket_a.add(*m, s.clone());
            }
        }
    }

    // quotient bracket: 1 + sum_{j=1..n} h^j T2_j(other, e12)
    let mut bracket_b = CrossingOp::one(order, cap);
    for j in 1..=n {
        let t2 = gen_t_r2(j);
        let lifted = lift_poly2(&t2, other, &sym_e12, order, cap);
        let scaled = lifted.scale_series(&hpow[j]);
        for (m, s) in &scaled.terms {
            bracket_b.add(*m, s.clone());
        }
    }

    // exponential factor: (1+h)^(+/-(main + e1 e2 + (e12^2 + e12)/2))
    let phi = {
        let mut p = sym_e1.mul(&sym_e2);
        let sq = sym_e12.mul(&sym_e12);
        for (m, s) in &sq.terms {
            p.add(*m, s.scale(&(ri(1) / ri(2))));
        }
        for (m, s) in &sym_e12.terms {
            p.add(*m, s.scale(&(ri(1) / ri(2))));
        }
        let main = if positive { &sym_e2 } else { &sym_e1 };
        for (m, s) in &main.terms {
            p.add(*m, s.clone());
        }
        p
    };
    let lambda = {
        let l = TruncSeries::log1p(order);
        if positive {
            l
        } else {
            l.neg()
        }
    };
    let mut expf = CrossingOp::one(order, cap);
    let mut phi_pow = CrossingOp::one(order, cap);
    let mut lam_pow = TruncSeries::one(order);
    let mut inv_fact = Rat::one();
    for r in 1..=(2 * n).max(order) {
        phi_pow = phi_pow.mul(&phi);
        lam_pow = lam_pow.mul(&lambda);
        inv_fact = inv_fact / ri(r as i64);
        if lam_pow.is_zero() {
            break;
        }
        let term = phi_pow.scale_series(&lam_pow.scale(&inv_fact));
        for (m, s) in &term.terms {
            expf.add(*m, s.clone());
        }
    }

    bracket_a.mul(&bracket_b).mul(&expf)
}

/// Compute one line of the loop expansion through the perturbed-determinant
/// pipeline and return it in the same shape as the extraction pipeline,
/// with the `z^(2m)` prefix reported up to `2m + n <= order`.
pub fn line_via_perturbation(
    braid: &BraidWord,
    n: usize,
    order: usize,
    variant: KappaVariant,
) -> Result<LineResult, Error> {
    if n > 2 {
        return Err(Error::BadInput(format!(
            "perturbative pipeline supports lines 0..=2, got {n}"
        )));
    }
    if n > order {
        return Err(Error::BadInput(format!(
            "line {n} not available at truncation order {order}"
        )));
    }
    braid.require_knot()?;
    let w = braid.symmetrization_exponent();
    let cap = 2 * n;

    let f = det_series(braid, cap)?;
    let ops: Vec<CrossingOp> = braid
        .letters()
        .iter()
        .map(|&l| crossing_op(l > 0, n))
        .collect();

    // substitution series for the grading offset, and its powers
    let subst = variant.series(n);
    let mut subst_pows = vec![TruncSeries::<Rat>::one(n)];
    for d in 1..=n {
        subst_pows.push(subst_pows[d - 1].mul(&subst));
    }

    // pair every Taylor monomial with the operator coefficients
    let mut by_denpow: BTreeMap<u32, TruncSeries<Laurent>> = BTreeMap::new();
    for (p, num) in &f.terms {
        for (mono, tcoeff) in num.iter() {
            debug_assert!(weight(mono) <= cap);
            let dk = mono[KAPPA_SLOT] as usize;
            if dk > n {
                continue;
            }
            let mut factor = subst_pows[dk].clone();
            let mut dead = false;
            for (c, op) in ops.iter().enumerate() {
                let base = 1 + 4 * c;
                let sub = [
                    mono[base + SLOT_DA],
                    mono[base + SLOT_E1],
                    mono[base + SLOT_E2],
                    mono[base + SLOT_E12],
                ];
                if sub == [0; 4] {
                    continue;
                }
                match op.terms.get(&sub) {
                    None => {
                        dead = true;
                        break;
                    }
                    Some(s) => {
                        let mut fact = Rat::one();
                        for &e in &sub {
                            for i in 2..=(e as i64) {
                                fact *= ri(i);
                            }
                        }
                        factor = factor.mul(&s.scale(&fact));
                    }
                }
                if factor.is_zero() {
                    dead = true;
                    break;
                }
            }
            if dead || factor.is_zero() {
                continue;
            }
            let acc = by_denpow
                .entry(*p)
                .or_insert_with(|| TruncSeries::new(n));
            for k in 0..=n {
                if factor.coeff(k).is_zero() {
                    continue;
                }
                let add = tcoeff.clone() * Laurent::constant(factor.coeff(k).clone());
                acc.add_to(k, add);
            }
        }
    }

    // prefactor (1+h)^-w as a pure h-series; the t^-w shift is folded into
    // the final exponent bookkeeping below
    let pre = TruncSeries::<Rat>::one_plus_pow(n, -w);
    let mut numerator = Laurent::zero();
    for (p, series) in &by_denpow {
        assert!(
            *p <= 2 * n as u32 + 1,
            "internal consistency: denominator power exceeds 2n+1"
        );
        // h^n coefficient of pre * series
        let mut at_n = Laurent::zero();
        for i in 0..=n {
            let c = pre.coeff(i);
            if c.is_zero() || series.coeff(n - i).is_zero() {
                continue;
            }
            at_n = at_n + series.coeff(n - i).clone() * Laurent::constant(c.clone());
        }
        if at_n.is_zero() {
            continue;
        }
        let mut lifted = at_n;
        for _ in *p..(2 * n as u32 + 1) {
            lifted = lifted * f.d00.clone();
        }
        numerator = numerator + lifted;
    }

    // V^(n) = numerator / d00^(2n+1) with a leftover t^-w from the
    // prefactor; d00^(2n+1) = Delta^(2n+1) t^-(2n+1)w, so the symmetric
    // numerator over Delta^(2n+1) is numerator * t^(2nw).
    let p_laurent = numerator.shift(2 * (n as i64) * w);
    assert!(
        p_laurent.is_symmetric(),
        "internal consistency: line numerator is not symmetric in t <-> 1/t"
    );
    let p_z2 = symmetric_laurent_to_z2(&p_laurent);

    // expand P_n / Delta^(2n+1) for the reported line prefix
    let delta = alexander_conway(braid)?;
    let avail = (order - n) / 2;
    let mut dpow = vec![Rat::one()];
    for _ in 0..(2 * n + 1) {
        let mut next = vec![Rat::zero(); dpow.len() + delta.coeffs().len() - 1];
        for (i, a) in dpow.iter().enumerate() {
            for (j, b) in delta.coeffs().iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        dpow = next;
    }
    let den = TruncSeries::from_coeffs(avail, dpow.into_iter().take(avail + 1).collect());
    let num_series = TruncSeries::from_coeffs(
        avail,
        p_z2.iter().cloned().take(avail + 1).collect(),
    );
    let d: Vec<Rat> = num_series.mul(&den.recip()).coeffs().to_vec();

    let mut p = p_z2.clone();
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    if p.is_empty() {
        p.push(Rat::zero());
    }
    let d_integral = d.iter().all(|c| c.denom().is_one());
    let p_integral = p.iter().all(|c| c.denom().is_one());
    Ok(LineResult {
        n,
        d,
        p: Some(p),
        residual_zero_z_order: 2 * avail,
        undetermined_at: None,
        d_integral,
        p_integral,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mmexpand::{extract_d, recover_p};

    fn knot(word: &str, strands: usize) -> BraidWord {
        BraidWord::parse(word, strands).unwrap()
    }

    fn rats(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| ri(x)).collect()
    }

    #[test]
    fn zeroth_line_numerator_is_one() {
        for (word, strands) in [("1,1,1", 2usize), ("1,-2,1,-2", 3), ("1,1,1,1,1", 2)] {
            let b = knot(word, strands);
            for variant in [KappaVariant::Shift, KappaVariant::Direct] {
                let r = line_via_perturbation(&b, 0, 8, variant).unwrap();
                assert_eq!(r.p, Some(rats(&[1])), "word {word}");
                assert!(r.p_integral);
            }
        }
    }

    #[test]
    fn first_line_matches_extraction_pipeline() {
        for (word, strands) in [("1,1,1", 2usize), ("1,-2,1,-2", 3)] {
            let b = knot(word, strands);
            let table = extract_d(&b, 10).unwrap();
            let from_table = recover_p(&b, 1, &table).unwrap();
            for variant in [KappaVariant::Shift, KappaVariant::Direct] {
                let direct = line_via_perturbation(&b, 1, 10, variant).unwrap();
                assert_eq!(direct, from_table, "word {word} variant {variant:?}");
            }
        }
    }

    #[test]
    fn variants_agree_through_first_order() {
        let b = knot("1,1,1", 2);
        for n in 0..=1usize {
            let s = line_via_perturbation(&b, n, 8, KappaVariant::Shift).unwrap();
            let d = line_via_perturbation(&b, n, 8, KappaVariant::Direct).unwrap();
            assert_eq!(s, d, "line {n}");
        }
    }

    #[test]
    fn second_line_matches_extraction_pipeline() {
        for (word, strands) in [("1,1,1", 2usize), ("1,-2,1,-2", 3)] {
            let b = knot(word, strands);
            let table = extract_d(&b, 12).unwrap();
            let from_table = recover_p(&b, 2, &table).unwrap();
            let direct = line_via_perturbation(&b, 2, 12, KappaVariant::Direct).unwrap();
            assert_eq!(
                direct.p, from_table.p,
                "second-line numerators must agree for {word}"
            );
            assert_eq!(direct.d, from_table.d, "word {word}");
        }
    }

    #[test]
    fn unknot_lines_vanish_above_zero() {
        let b = knot("", 1);
        let r0 = line_via_perturbation(&b, 0, 6, KappaVariant::Direct).unwrap();
        assert_eq!(r0.p, Some(rats(&[1])));
        for n in 1..=2usize {
            let r = line_via_perturbation(&b, n, 6, KappaVariant::Direct).unwrap();
            assert_eq!(r.p, Some(rats(&[0])), "line {n}");
        }
    }

    #[test]
    fn rejects_lines_beyond_scope() {
        let b = knot("1,1,1", 2);
        match line_via_perturbation(&b, 3, 8, KappaVariant::Direct) {
            Err(Error::BadInput(msg)) => assert!(msg.contains("0..=2")),
            other => panic!("expected scope error, got {other:?}"),
        }
    }
}
