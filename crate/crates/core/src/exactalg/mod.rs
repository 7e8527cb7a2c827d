//! Exact algebra shared by every pipeline:
//!
//! * [`Rat`] -- arbitrary-precision rationals, the only scalar type in the crate
//! * [`Laurent`] -- sparse Laurent polynomials with rational coefficients
//! * [`QuarterLaurent`] -- the same type with exponents counted in quarter
//!   powers of the deformation variable (the R-matrix lives in `q^(1/4)`)
//! * [`TruncSeries`] -- truncated power series with pessimistic order tracking
//! * [`BivarSeries`] -- truncated series in two variables at once

pub mod ring;
pub mod laurent;
pub mod series;
pub mod bivar;

pub use ring::Ring;
pub use laurent::{Laurent, QuarterLaurent, qpow, qdiff, qint, qfact, qbinom};
pub use series::TruncSeries;
pub use bivar::{alpha_h_in_z, BivarSeries};

/// The scalar type everything is built on.
pub type Rat = num::BigRational;

use num::BigInt;

/// Rational from an integer.
pub fn ri(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational from a fraction.
pub fn rq(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Exact factorial.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::from(1);
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// Binomial coefficient with a (possibly negative) integer top argument:
/// `top * (top-1) * ... * (top-k+1) / k!`.
pub fn binom(top: i64, k: u64) -> Rat {
    let mut num = BigInt::from(1);
    for i in 0..k {
        num *= BigInt::from(top) - BigInt::from(i);
    }
    Rat::new(num, factorial(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_matches_pascal() {
        assert_eq!(binom(5, 2), ri(10));
        assert_eq!(binom(6, 0), ri(1));
        // negative top: C(-2, 3) = (-2)(-3)(-4)/6 = -4
        assert_eq!(binom(-2, 3), ri(-4));
    }

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
