//! Exact integer and integer-polynomial arithmetic.
//!
//! Everything the solver and the oracles compute goes through this module:
//! Horner evaluation, Lagrange interpolation with a single exactness check,
//! polynomial divisibility and fraction-free determinants.

mod interpolate;
mod matrix;
mod poly;

pub use interpolate::{interpolate, interpolate_consecutive};
pub use matrix::IntMatrix;
pub use poly::IntPolynomial;

use thiserror::Error;

/// Signed integer of unbounded magnitude.
pub type ExactInt = num_bigint::BigInt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("duplicate interpolation node {0}")]
    DuplicateNode(ExactInt),
    #[error("interpolated coefficients are not integral")]
    NonIntegerResult,
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("fraction-free elimination hit an inexact division")]
    InexactDivision,
}

/// Convenience wrapper around [`IntPolynomial::divides_by`].
pub fn poly_divides(d: &IntPolynomial, p: &IntPolynomial) -> Result<Option<(IntPolynomial, ExactInt)>, AlgebraError> {
    p.divides_by(d)
}
