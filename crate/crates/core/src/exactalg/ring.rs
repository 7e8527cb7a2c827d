//! Minimal commutative-ring bound used by the generic containers.

use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Neg, Sub};

/// Commutative ring with exact division.  `exact_div` must panic when the
/// divisor does not divide evenly: a non-exact division anywhere in the
/// pipeline is a bug, never something to round away.
pub trait Ring:
    Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
    fn exact_div(&self, rhs: &Self) -> Self;
}

impl Ring for super::Rat {
    fn exact_div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "exact_div: division by zero");
        self / rhs
    }
}

#[cfg(test)]
mod tests {
    use super::super::{ri, rq};
    use super::*;

    #[test]
    fn rat_exact_div() {
        assert_eq!(ri(6).exact_div(&ri(4)), rq(3, 2));
    }

    #[test]
    #[should_panic]
    fn rat_div_by_zero_panics() {
        let _ = ri(1).exact_div(&ri(0));
    }
}
