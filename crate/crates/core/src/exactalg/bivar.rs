//! Truncated series in two variables `h` and `z` at once, stored densely as
//! `c[i][j]` = coefficient of `h^i z^j`.  Odd powers of `z` are representable
//! on purpose: evenness in `z` is a theorem about the output, so it is
//! asserted where it is claimed rather than baked into the container.

use super::{Rat, TruncSeries};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct BivarSeries {
    h_order: usize,
    z_order: usize,
    c: Vec<Vec<Rat>>,
}

impl BivarSeries {
    pub fn new(h_order: usize, z_order: usize) -> Self {
        BivarSeries {
            h_order,
            z_order,
            c: vec![vec![Rat::zero(); z_order + 1]; h_order + 1],
        }
    }

    pub fn one(h_order: usize, z_order: usize) -> Self {
        let mut s = Self::new(h_order, z_order);
        s.c[0][0] = Rat::one();
        s
    }

    pub fn h_order(&self) -> usize {
        self.h_order
    }

    pub fn z_order(&self) -> usize {
        self.z_order
    }

    pub fn coeff(&self, h_pow: usize, z_pow: usize) -> &Rat {
        &self.c[h_pow][z_pow]
    }

    pub fn set(&mut self, h_pow: usize, z_pow: usize, v: Rat) {
        self.c[h_pow][z_pow] = v;
    }

    /// Outer product of an `h`-series and a `z`-series.
    pub fn from_factors(hs: &TruncSeries<Rat>, zs: &TruncSeries<Rat>) -> Self {
        let mut out = Self::new(hs.order(), zs.order());
        for i in 0..=hs.order() {
            if hs.coeff(i).is_zero() {
                continue;
            }
            for j in 0..=zs.order() {
                out.c[i][j] = hs.coeff(i) * zs.coeff(j);
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let h_order = self.h_order.min(rhs.h_order);
        let z_order = self.z_order.min(rhs.z_order);
        let mut out = Self::new(h_order, z_order);
        for i in 0..=h_order {
            for j in 0..=z_order {
                out.c[i][j] = &self.c[i][j] + &rhs.c[i][j];
            }
        }
        out
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        let mut out = self.clone();
        for row in &mut out.c {
            for v in row.iter_mut() {
                *v = &*v * factor;
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let h_order = self.h_order.min(rhs.h_order);
        let z_order = self.z_order.min(rhs.z_order);
        let mut out = Self::new(h_order, z_order);
        for i1 in 0..=h_order.min(self.h_order) {
            for j1 in 0..=z_order.min(self.z_order) {
                if self.c[i1][j1].is_zero() {
                    continue;
                }
                for i2 in 0..=(h_order - i1).min(rhs.h_order) {
                    for j2 in 0..=(z_order - j1).min(rhs.z_order) {
                        if rhs.c[i2][j2].is_zero() {
                            continue;
                        }
                        let add = &self.c[i1][j1] * &rhs.c[i2][j2];
                        out.c[i1 + i2][j1 + j2] = &out.c[i1 + i2][j1 + j2] + add;
                    }
                }
            }
        }
        out
    }

    /// Multiply by `h^k` without losing trusted coefficients.
    pub fn mul_h(&self, k: usize) -> Self {
        let mut out = Self::new(self.h_order + k, self.z_order);
        for i in 0..=self.h_order {
            out.c[i + k] = self.c[i].clone();
        }
        out
    }

    pub fn truncate_h(&self, h_order: usize) -> Self {
        assert!(h_order <= self.h_order);
        BivarSeries {
            h_order,
            z_order: self.z_order,
            c: self.c[..=h_order].to_vec(),
        }
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::one(self.h_order, self.z_order);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// The coefficient of `h^n` as a `z`-coefficient vector.
    pub fn h_line(&self, n: usize) -> Vec<Rat> {
        self.c[n].clone()
    }

    pub fn is_even_in_z(&self) -> bool {
        self.c
            .iter()
            .all(|row| row.iter().skip(1).step_by(2).all(|v| v.is_zero()))
    }
}

/// The product `alpha * h` rewritten in the bound-state variable `z`:
/// `A(z, h) = 2 * arcsinh(z/2) * h / log(1 + h)`.
pub fn alpha_h_in_z(h_order: usize, z_order: usize) -> BivarSeries {
    BivarSeries::from_factors(
        &TruncSeries::x_over_log1p(h_order),
        &TruncSeries::two_arcsinh_half(z_order),
    )
}
