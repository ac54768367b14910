//! Exact rational linear algebra.

pub mod matrix;
pub mod rref;
pub mod scalar;
pub mod subspace;

pub use matrix::Matrix;
pub use rref::{rank, rref, Rref, SparseEliminator, SparseRow};
pub use scalar::Scalar;
pub use subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("form is degenerate on the subspace")]
    DegenerateForm,
    #[error("form is not positive definite on the subspace")]
    NotPositiveDefinite,
}
