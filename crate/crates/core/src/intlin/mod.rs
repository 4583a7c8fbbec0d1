//! Exact integer matrices and the Smith normal form.
//!
//! Everything here is generic over an exact integer [`Scalar`]; the rest of the
//! crate works with the arbitrary-precision instantiation [`crate::IntMatrix`].
//! Fixed-width scalars are available for callers that can bound their entries,
//! but intermediate Smith-form entries grow quickly, so overflow in a fixed
//! width type panics (debug) or wraps (release) exactly as the primitive does.

mod matrix;
mod smith;

pub use matrix::Matrix;
pub use smith::{cokernel_invariants, smith_normal_form, CokernelInvariants, SmithForm};

use std::fmt;

use num_integer::Integer;
use num_traits::Signed;

/// An exact, signed Euclidean integer type.
pub trait Scalar:
    Integer + Signed + Clone + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntLinError {
    #[error("matrix of shape {rows}x{cols} needs {expected} entries, got {found}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("cannot multiply {left_rows}x{left_cols} by {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
}

impl IntLinError {
    pub fn name(&self) -> &'static str {
        match self {
            IntLinError::ShapeMismatch { .. } => "ShapeMismatch",
            IntLinError::RaggedRows { .. } => "RaggedRows",
            IntLinError::DimensionMismatch { .. } => "DimensionMismatch",
        }
    }
}

/// Exact product `a · b`.
pub fn matrix_product<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>, IntLinError> {
    a.mul(b)
}
