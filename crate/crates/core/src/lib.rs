//! Exact-arithmetic invariants of knots presented as braid closures.
//!
//! Everything here is computed over exact rationals; there is no floating
//! point anywhere in the pipeline.  The main entry points are:
//!
//! * [`braid`] -- braid words, closure permutations, writhe bookkeeping
//! * [`rmatrix`] -- the R-matrix action on highest-weight state vectors
//! * [`qtrace`] -- colored Jones polynomials via broken-strand quantum traces
//! * [`burau`] -- reduced Burau matrices and the Alexander-Conway polynomial
//! * [`mmexpand`] -- the Melvin-Morton table `D_{m,n}` and its diagonal lines
//! * [`perturb`] -- an independent perturbative pipeline for the first lines,
//!   built from a parametrized deformation of the Burau representation
//! * [`exactalg`] -- the shared exact algebra (Laurent polynomials in a
//!   quarter-power variable, truncated power series, bivariate series)

pub mod exactalg;
pub mod braid;
pub mod rmatrix;
pub mod qtrace;
pub mod burau;
pub mod mmexpand;
pub mod perturb;

pub use exactalg::{Laurent, QuarterLaurent, TruncSeries, BivarSeries, Rat};
pub use braid::{BraidWord, ClosureInfo};
pub use burau::ConwayPolynomial;
pub use mmexpand::{MMTable, LineResult};
pub use perturb::{line_via_perturbation, KappaVariant};

/// Laurent polynomial in the deformation variable `t` with rational coefficients.
pub type TLaurent = Laurent;

/// Errors surfaced to callers (as opposed to internal-consistency panics,
/// which indicate a bug and are deliberately loud).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The input could not be parsed or is out of range.
    BadInput(String),
    /// The braid closure is a link with more than one component.
    NotAKnot { cycles: Vec<Vec<usize>> },
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::BadInput(msg) => write!(f, "bad input: {msg}"),
            Error::NotAKnot { cycles } => {
                write!(f, "closure is not a knot: {} components (", cycles.len())?;
                for (i, c) in cycles.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    let strands: Vec<String> = c.iter().map(|s| (s + 1).to_string()).collect();
                    write!(f, "{{{}}}", strands.join(" "))?;
                }
                write!(f, ")")
            }
        }
    }
}

impl std::error::Error for Error {}
