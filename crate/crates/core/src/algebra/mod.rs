//! Lie algebra models: classical families, exceptional algebras as derivation
//! algebras, and the special subalgebras and embeddings used by the catalog.

pub mod blocks;
pub mod classical;
pub mod composition;
pub mod derivation;
pub mod embed;
pub mod jordan;
pub mod json;
pub mod lie;
pub mod models;

pub use blocks::{block_generators, Block, BlockKind};
pub use classical::{build_classical, Family, Field};
pub use composition::CompositionAlgebra;
pub use derivation::{derivation_algebra, stabilizer_subalgebra};
pub use jordan::JordanAlgebraH3O;
pub use lie::{LieAlgebra, Subalgebra};

use crate::linalg::{LinalgError, Scalar};

/// An algebra given by structure constants on a basis `e_0..e_{n-1}`.
pub trait BilinearProduct {
    fn dim(&self) -> usize;
    /// `e_a e_b` as sparse coordinates.
    fn product(&self, a: usize, b: usize) -> Vec<(usize, Scalar)>;
    fn is_commutative(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not closed under the bracket: {0}")]
    NotClosed(String),
    #[error("not in the algebra: {0}")]
    NotInAlgebra(String),
    #[error("invariant failed: {0}")]
    InvariantFailed(String),
    #[error("action matrices do not match the given vectors")]
    ActionMissing,
    #[error("slope (0, 0) is not allowed")]
    ZeroSlope,
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("bad algebra document: {0}")]
    Document(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
