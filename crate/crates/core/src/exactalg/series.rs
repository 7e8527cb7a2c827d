//! Truncated power series with pessimistic order tracking: a series knows
//! through which order its coefficients are trustworthy, and every operation
//! propagates the weakest bound of its inputs.

use super::{rq, Rat, Ring};
use num_traits::One;

/// `sum_{k=0..=order} c[k] x^k`, with all higher coefficients unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<R: Ring> {
    order: usize,
    c: Vec<R>,
}

impl<R: Ring> TruncSeries<R> {
    pub fn new(order: usize) -> Self {
        TruncSeries {
            order,
            c: vec![R::zero(); order + 1],
        }
    }

    pub fn from_coeffs(order: usize, mut c: Vec<R>) -> Self {
        assert!(c.len() <= order + 1, "more coefficients than the order allows");
        c.resize(order + 1, R::zero());
        TruncSeries { order, c }
    }

    pub fn constant(order: usize, value: R) -> Self {
        let mut s = Self::new(order);
        s.c[0] = value;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, R::one())
    }

    /// The monomial `x^k`.
    pub fn monomial(order: usize, k: usize) -> Self {
        let mut s = Self::new(order);
        if k <= order {
            s.c[k] = R::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &R {
        assert!(k <= self.order, "coefficient past the trusted order");
        &self.c[k]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    pub fn set(&mut self, k: usize, value: R) {
        assert!(k <= self.order);
        self.c[k] = value;
    }

    pub fn add_to(&mut self, k: usize, value: R) {
        assert!(k <= self.order);
        let old = std::mem::replace(&mut self.c[k], R::zero());
        self.c[k] = old + value;
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = Self::new(order);
        for k in 0..=order {
            out.c[k] = self.c[k].clone() + rhs.c[k].clone();
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = Self::new(order);
        for k in 0..=order {
            out.c[k] = self.c[k].clone() - rhs.c[k].clone();
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for x in &mut out.c {
            *x = -std::mem::replace(x, R::zero());
        }
        out
    }

    pub fn scale(&self, factor: &R) -> Self {
        let mut out = self.clone();
        for x in &mut out.c {
            *x = std::mem::replace(x, R::zero()) * factor.clone();
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = Self::new(order);
        for i in 0..=order.min(self.order) {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i).min(rhs.order) {
                if rhs.c[j].is_zero() {
                    continue;
                }
                let add = self.c[i].clone() * rhs.c[j].clone();
                let old = std::mem::replace(&mut out.c[i + j], R::zero());
                out.c[i + j] = old + add;
            }
        }
        out
    }

    /// Multiply by `x^k`.  Coefficients known through `order` stay correct
    /// through `order + k`, so the trusted order rises.
    pub fn mul_monomial(&self, k: usize) -> Self {
        let mut out = Self::new(self.order + k);
        for (i, v) in self.c.iter().enumerate() {
            out.c[i + k] = v.clone();
        }
        out
    }

    /// Divide by `x^k`; the `k` lowest coefficients must vanish.
    pub fn div_monomial(&self, k: usize) -> Self {
        assert!(k <= self.order);
        for i in 0..k {
            assert!(self.c[i].is_zero(), "div_monomial: low-order coefficient is nonzero");
        }
        TruncSeries {
            order: self.order - k,
            c: self.c[k..].to_vec(),
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "truncate cannot extend the trusted order");
        TruncSeries {
            order,
            c: self.c[..=order].to_vec(),
        }
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute `rhs` for the variable; `rhs` must have zero constant term.
    pub fn compose(&self, rhs: &Self) -> Self {
        assert!(
            rhs.c[0].is_zero(),
            "compose: inner series must have zero constant term"
        );
        let order = self.order.min(rhs.order);
        // Horner evaluation from the top coefficient down.
        let mut acc = Self::constant(order, self.c[order.min(self.order)].clone());
        let inner = rhs.truncate(order);
        for k in (0..order).rev() {
            acc = acc.mul(&inner);
            acc.c[0] = acc.c[0].clone() + self.c[k].clone();
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be invertible in `R`.
    pub fn recip(&self) -> Self {
        assert!(!self.c[0].is_zero(), "recip: constant term is zero");
        let mut out = Self::new(self.order);
        out.c[0] = R::one().exact_div(&self.c[0]);
        for k in 1..=self.order {
            let mut s = R::zero();
            for i in 1..=k {
                s = s + self.c[i].clone() * out.c[k - i].clone();
            }
            out.c[k] = (-s).exact_div(&self.c[0]);
        }
        out
    }
}

impl TruncSeries<Rat> {
    /// `log(1 + x)` through `x^order`.
    pub fn log1p(order: usize) -> Self {
        let mut s = Self::new(order);
        for k in 1..=order {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            s.c[k] = rq(sign, k as i64);
        }
        s
    }

    /// `exp(x) - 1` through `x^order`.
    pub fn expm1(order: usize) -> Self {
        let mut s = Self::new(order);
        let mut inv_fact = Rat::one();
        for k in 1..=order {
            inv_fact = inv_fact / super::ri(k as i64);
            s.c[k] = inv_fact.clone();
        }
        s
    }

    /// `-x / (1 + x)` through `x^order`: the series that plays the role of
    /// the deformation parameter on negative crossings.
    pub fn neg_x_over_one_plus(order: usize) -> Self {
        let mut s = Self::new(order);
        for k in 1..=order {
            s.c[k] = super::ri(if k % 2 == 1 { -1 } else { 1 });
        }
        s
    }

    /// `x / log(1 + x)` through `x^order` (constant term 1).
    pub fn x_over_log1p(order: usize) -> Self {
        Self::log1p(order + 1).div_monomial(1).recip()
    }

    /// `2 * arcsinh(x/2)` through `x^order`; odd series starting `x - x^3/24 + ...`.
    pub fn two_arcsinh_half(order: usize) -> Self {
        let mut s = Self::new(order);
        // 2*arcsinh(x/2) = sum_k (-1)^k C(2k, k) x^(2k+1) / (16^k (2k+1))
        let mut k: usize = 0;
        let mut central = Rat::one(); // C(2k, k)
        let mut sixteen_pow = Rat::one();
        while 2 * k + 1 <= order {
            let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
            s.c[2 * k + 1] =
                sign * &central / (&sixteen_pow * super::ri(2 * k as i64 + 1));
            // C(2k+2, k+1) = C(2k, k) * (2k+1)(2k+2) / (k+1)^2
            let kk = k as i64;
            central = central * rq((2 * kk + 1) * (2 * kk + 2), (kk + 1) * (kk + 1));
            sixteen_pow = sixteen_pow * super::ri(16);
            k += 1;
        }
        s
    }

    /// `(1 + x)^e` for an integer exponent, through `x^order`.
    pub fn one_plus_pow(order: usize, e: i64) -> Self {
        let mut s = Self::new(order);
        for k in 0..=order {
            s.c[k] = super::binom(e, k as u64);
        }
        s
    }
}
