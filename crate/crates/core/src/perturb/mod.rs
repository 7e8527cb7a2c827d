//! Independent perturbative pipeline for the lines of the loop expansion.
//!
//! Instead of extracting lines from full colored-Jones evaluations, this
//! module Taylor-expands the inverse Alexander determinant of a parametrized
//! braid matrix around the Burau point and pairs the Taylor coefficients
//! with per-crossing differential operators whose coefficients are the
//! polynomials from [`tpoly`].  The result is a closed rational form for a
//! line `V^(n)` with denominator a power of the Alexander polynomial, which
//! cross-validates the extraction pipeline.

pub mod detseries;
pub mod line;
pub mod multipoly;
pub mod tpoly;

pub use detseries::{det_series, graded_trace_burau, inv_det_kappa_series, MultiTaylor};
pub use line::{line_via_perturbation, KappaVariant};
pub use multipoly::MultiPoly;
pub use tpoly::{gen_t_r1, gen_t_r2, Poly2, PolyU};
