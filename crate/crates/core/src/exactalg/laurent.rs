//! Sparse Laurent polynomials over the rationals, plus the q-arithmetic
//! helpers (quantum integers, factorials, binomials) used by the R-matrix.

use super::{binom, ri, Rat, Ring, TruncSeries};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse Laurent polynomial `sum c_k x^k` with rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<i64, Rat>,
}

/// Laurent polynomial whose exponent field counts *quarter* powers of the
/// variable: exponent `k` stands for `q^(k/4)`.  The R-matrix coefficients
/// live here; honest integer powers only reappear after the full trace is
/// assembled (see [`Laurent::to_whole_exponents`]).
pub type QuarterLaurent = Laurent;

impl Laurent {
    pub fn term(exp: i64, coeff: Rat) -> Self {
        let mut t = BTreeMap::new();
        if !coeff.is_zero() {
            t.insert(exp, coeff);
        }
        Laurent { terms: t }
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(0, c)
    }

    pub fn from_int_pairs(pairs: &[(i64, i64)]) -> Self {
        let mut out = Laurent::zero();
        for &(exp, c) in pairs {
            out.add_term(exp, ri(c));
        }
        out
    }

    pub fn add_term(&mut self, exp: i64, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> Rat {
        self.terms.get(&exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Replace `x` by `x^k` (`k` may be negative; `k = -1` is the mirror).
    pub fn scale_exponents(&self, k: i64) -> Self {
        assert!(k != 0, "scale_exponents: k must be nonzero");
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// The mirror image `x -> 1/x`.
    pub fn mirror(&self) -> Self {
        self.scale_exponents(-1)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.mirror()
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Laurent::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            n >>= 1;
        }
        acc
    }

    pub fn eval_at_one(&self) -> Rat {
        let mut s = Rat::zero();
        for c in self.terms.values() {
            s += c;
        }
        s
    }

    /// True when every coefficient is an integer.
    pub fn coeffs_are_integers(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    /// Reinterpret quarter-unit exponents as whole powers: succeeds only when
    /// every exponent is divisible by four.
    pub fn to_whole_exponents(&self) -> Option<Laurent> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e % 4 != 0 {
                return None;
            }
            terms.insert(e / 4, c.clone());
        }
        Some(Laurent { terms })
    }

    /// Substitute `x = 1 + h` and truncate at `h^order`.  Negative exponents
    /// expand through the generalized binomial series, which is exact order
    /// by order.
    pub fn subst_one_plus(&self, order: usize) -> TruncSeries<Rat> {
        let mut out = TruncSeries::new(order);
        for (e, c) in &self.terms {
            for j in 0..=order {
                let b = binom(*e, j as u64);
                if !b.is_zero() {
                    out.add_to(j, c * &b);
                }
            }
        }
        out
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let cs = if c.denom().is_one() {
                c.numer().to_string()
            } else {
                format!("({c})")
            };
            let part = match *e {
                0 => cs,
                1 if c.is_one() => var.to_string(),
                1 => format!("{cs}*{var}"),
                _ if c.is_one() => format!("{var}^{e}"),
                _ => format!("{cs}*{var}^{e}"),
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(mut self, rhs: Laurent) -> Laurent {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(mut self, rhs: Laurent) -> Laurent {
        for (e, c) in rhs.terms {
            self.add_term(e, -c);
        }
        self
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Zero for Laurent {
    fn zero() -> Self {
        Laurent::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Laurent {
    fn one() -> Self {
        Laurent::term(0, Rat::one())
    }
}

impl Ring for Laurent {
    /// Long division from the top exponent; panics unless the division is
    /// exact.  Coefficients are rational, so any single term divides.
    fn exact_div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "exact_div: division by zero polynomial");
        if self.is_zero() {
            return Laurent::zero();
        }
        let lead_exp = rhs.max_exp().unwrap();
        let lead_coeff = rhs.coeff(lead_exp);
        let floor = self.min_exp().unwrap() - rhs.min_exp().unwrap();
        let mut rem = self.clone();
        let mut quot = Laurent::zero();
        while !rem.is_zero() {
            let re = rem.max_exp().unwrap();
            let qe = re - lead_exp;
            assert!(qe >= floor, "exact_div: {self} is not divisible by {rhs}");
            let qc = rem.coeff(re) / &lead_coeff;
            let t = Laurent::term(qe, qc);
            rem = rem - t.clone() * rhs.clone();
            quot = quot + t;
        }
        quot
    }
}

/// `q^(k/4)` in quarter units.
pub fn qpow(quarter_exp: i64) -> QuarterLaurent {
    Laurent::term(quarter_exp, Rat::one())
}

/// The balanced difference `q^(k/2) - q^(-k/2)`; zero when `k = 0`.
pub fn qdiff(k: i64) -> QuarterLaurent {
    Laurent::term(2 * k, Rat::one()) - Laurent::term(-2 * k, Rat::one())
}

/// Quantum integer `[k] = (q^(k/2) - q^(-k/2)) / (q^(1/2) - q^(-1/2))`.
pub fn qint(k: i64) -> QuarterLaurent {
    qdiff(k).exact_div(&qdiff(1))
}

/// Quantum factorial `[k]! = [1][2]...[k]`.
pub fn qfact(k: u32) -> QuarterLaurent {
    let mut acc = Laurent::one();
    for j in 1..=k {
        acc = acc * qint(j as i64);
    }
    acc
}

/// Quantum binomial `[m]! / ([m-n]! [n]!)`; requires `n <= m`.
pub fn qbinom(m: u32, n: u32) -> QuarterLaurent {
    assert!(n <= m, "qbinom: n must not exceed m");
    qfact(m).exact_div(&(qfact(m - n) * qfact(n)))
}

#[cfg(test)]
mod tests {
    use super::super::rq;
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_laurent(rng: &mut StdRng) -> Laurent {
        let mut p = Laurent::zero();
        for _ in 0..rng.gen_range(1..6) {
            p.add_term(rng.gen_range(-5..6), ri(rng.gen_range(-4..5)));
        }
        p
    }

    #[test]
    fn qint_two_and_three() {
        // [2] = q^(1/2) + q^(-1/2)
        assert_eq!(qint(2), Laurent::from_int_pairs(&[(2, 1), (-2, 1)]));
        // [3] = q + 1 + q^(-1)
        assert_eq!(qint(3), Laurent::from_int_pairs(&[(4, 1), (0, 1), (-4, 1)]));
    }

    #[test]
    fn qfact_three_is_product_of_qints() {
        assert_eq!(qfact(3), qint(2) * qint(3));
    }

    #[test]
    fn qint_counts_at_one() {
        for k in 0..8 {
            assert_eq!(qint(k).eval_at_one(), ri(k));
        }
    }

    #[test]
    fn qbinom_symmetric_and_counts() {
        assert_eq!(qbinom(4, 1), qbinom(4, 3));
        assert_eq!(qbinom(4, 2).eval_at_one(), ri(6));
        assert!(qbinom(5, 2).is_symmetric());
    }

    #[test]
    fn exact_div_undoes_mul() {
        let mut rng = StdRng::seed_from_u64(0xA1C3);
        for _ in 0..40 {
            let a = random_laurent(&mut rng);
            let mut b = random_laurent(&mut rng);
            if b.is_zero() {
                b = Laurent::one();
            }
            let prod = a.clone() * b.clone();
            assert_eq!(prod.exact_div(&b), a);
        }
    }

    #[test]
    #[should_panic]
    fn exact_div_rejects_remainder() {
        // (x + 1) does not divide (x^2 + 1)
        let num = Laurent::from_int_pairs(&[(2, 1), (0, 1)]);
        let den = Laurent::from_int_pairs(&[(1, 1), (0, 1)]);
        let _ = num.exact_div(&den);
    }

    #[test]
    fn subst_one_plus_geometric() {
        // 1/x = 1 - h + h^2 - h^3 + ...
        let s = Laurent::term(-1, ri(1)).subst_one_plus(4);
        for j in 0..=4 {
            assert_eq!(*s.coeff(j), ri(if j % 2 == 0 { 1 } else { -1 }));
        }
        // x = 1 + h exactly
        let s = Laurent::term(1, ri(1)).subst_one_plus(4);
        assert_eq!(*s.coeff(0), ri(1));
        assert_eq!(*s.coeff(1), ri(1));
        assert_eq!(*s.coeff(2), ri(0));
    }

    #[test]
    fn whole_exponent_conversion() {
        let q = qpow(4) + qpow(-8);
        let w = q.to_whole_exponents().unwrap();
        assert_eq!(w, Laurent::from_int_pairs(&[(1, 1), (-2, 1)]));
        assert!(qpow(2).to_whole_exponents().is_none());
    }

    #[test]
    fn mirror_and_symmetry() {
        let p = Laurent::from_int_pairs(&[(3, 2), (-3, 2), (0, -1)]);
        assert!(p.is_symmetric());
        let q = Laurent::from_int_pairs(&[(1, 1)]);
        assert!(!q.is_symmetric());
        assert_eq!(q.mirror(), Laurent::from_int_pairs(&[(-1, 1)]));
    }

    #[test]
    fn ring_laws_spot_checked() {
        let mut rng = StdRng::seed_from_u64(0xB2D4);
        for _ in 0..25 {
            let a = random_laurent(&mut rng);
            let b = random_laurent(&mut rng);
            let c = random_laurent(&mut rng);
            let left = a.clone() * (b.clone() + c.clone());
            let right = a.clone() * b.clone() + a.clone() * c.clone();
            assert_eq!(left, right);
            assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        }
        assert_eq!(rq(1, 2), rq(2, 4));
    }
}
