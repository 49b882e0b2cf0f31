//! Exact arithmetic: Gaussian rationals, polynomials and dense linear algebra.

pub mod gauss;
pub mod matrix;
pub mod mpoly;
pub mod poly;

pub use gauss::GaussRat;
pub use matrix::{row_reduce, GaussMatrix, RowReduction, Span};
pub use mpoly::{MMono, MPoly};
pub use poly::{poly, GaussPoly, Monomial};

/// Product of two polynomials.
pub fn poly_mul(f: &GaussPoly, g: &GaussPoly) -> GaussPoly {
    f * g
}
