//! Nested triples `h ⊂ k ⊂ g` and the positivity machinery built on them.

pub mod certificate;
pub mod extend;
pub mod fat;
pub mod isotropy;
pub mod reduce;
pub mod refute;
pub mod rng;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, LieAlgebra};
use crate::linalg::matrix::{vec_add, Matrix};
use crate::linalg::{LinalgError, Scalar, Subspace};

pub use certificate::{prop_certificate, Certificate, CertificateConfig};
pub use extend::{cheeger_extend, Extension};
pub use fat::{is_fat, is_strongly_fat, search_fat, FatKind, FatVector};
pub use isotropy::{decompose_isotropy, dim_filters, transitivity_evidence, trivial_factor, Component, DimViolation};
pub use reduce::{common_ideal, reduce};
pub use refute::{refute_for_a, universal_refuter, CommutingPair, ScriptedFamily};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TripleError {
    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("h is not contained in k")]
    NotNested,
    #[error("inclusions must be strict: dim h = {h}, dim k = {k}, dim g = {g}")]
    NotStrict { h: usize, k: usize, g: usize },
    #[error("vector is not a nonzero element of p: {0}")]
    NotInP(String),
    #[error("slope ({0}, {1}) is not allowed")]
    SlopeNotAllowed(i64, i64),
    #[error("the embedded factor does not commute with h")]
    EmbeddingNotCommuting,
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Table row numbers (1 to 16) of the positively curved pairs matching the
/// base pair `k ⊂ g` and the fiber pair `h ⊂ k`, possibly after removing a
/// common ideal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tags {
    pub base: Option<u8>,
    pub fiber: Option<u8>,
}

/// Base types whose isotropy representation is transitive on the unit sphere.
pub const TRANSITIVE_BASE_TYPES: [u8; 6] = [1, 5, 6, 7, 9, 10];

impl Tags {
    pub fn new(base: u8, fiber: u8) -> Self {
        Tags { base: Some(base), fiber: Some(fiber) }
    }

    pub fn base_transitive(&self) -> bool {
        self.base.is_some_and(|b| TRANSITIVE_BASE_TYPES.contains(&b))
    }
}

/// Catalog data that steers searches without affecting soundness.
#[derive(Clone, Debug, Default)]
pub struct Hints {
    /// Tried first by the fat-vector search.
    pub fat_candidates: Vec<Vec<Scalar>>,
    /// A subspace of `p` known to hold no strongly fat vector.
    pub non_strongly_fat: Option<Subspace>,
    pub family: Option<ScriptedFamily>,
}

#[derive(Clone, Debug)]
pub struct NestedTriple {
    pub id: String,
    g: Arc<LieAlgebra>,
    k: Subspace,
    h: Subspace,
    m: Subspace,
    p: Subspace,
    mp: Subspace,
    proj_h: Matrix,
    proj_m: Matrix,
    proj_p: Matrix,
    pub tags: Tags,
    pub hints: Hints,
}

/// Builds `h ⊂ k ⊂ g` and its complements `m = k ⊖ h`, `p = g ⊖ k`.
pub fn make_triple(
    id: impl Into<String>,
    g: Arc<LieAlgebra>,
    k: Subspace,
    h: Subspace,
) -> Result<NestedTriple, TripleError> {
    let d = g.dim();
    if k.ambient_dim() != d || h.ambient_dim() != d {
        return Err(LinalgError::DimensionMismatch { left: d, right: k.ambient_dim().max(h.ambient_dim()) }.into());
    }
    if !g.is_closed(&k) {
        return Err(TripleError::NotSubalgebra("k".into()));
    }
    if !g.is_closed(&h) {
        return Err(TripleError::NotSubalgebra("h".into()));
    }
    if !k.contains_subspace(&h) {
        return Err(TripleError::NotNested);
    }
    if h.dim() >= k.dim() || k.dim() >= d {
        return Err(TripleError::NotStrict { h: h.dim(), k: k.dim(), g: d });
    }
    let m = g.complement(&h, &k)?;
    let p = g.complement(&k, &g.full())?;
    let mp = m.sum(&p)?;
    let proj_h = g.projector(&h)?;
    let proj_m = g.projector(&m)?;
    let proj_p = g.projector(&p)?;
    Ok(NestedTriple {
        id: id.into(),
        g,
        k,
        h,
        m,
        p,
        mp,
        proj_h,
        proj_m,
        proj_p,
        tags: Tags::default(),
        hints: Hints::default(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    H,
    M,
    P,
    K,
}

impl NestedTriple {
    pub fn with_tags(mut self, tags: Tags) -> Self {
        self.tags = tags;
        self
    }

    pub fn with_hints(mut self, hints: Hints) -> Self {
        self.hints = hints;
        self
    }

    pub fn g(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn g_arc(&self) -> &Arc<LieAlgebra> {
        &self.g
    }

    pub fn k(&self) -> &Subspace {
        &self.k
    }

    pub fn h(&self) -> &Subspace {
        &self.h
    }

    pub fn m(&self) -> &Subspace {
        &self.m
    }

    pub fn p(&self) -> &Subspace {
        &self.p
    }

    /// `m ⊕ p`.
    pub fn mp(&self) -> &Subspace {
        &self.mp
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.g.bracket(u, v)
    }

    pub fn ad(&self, u: &[Scalar]) -> Matrix {
        self.g.ad(u)
    }

    /// Orthogonal projector onto a part, acting on column coordinates.
    pub fn projector(&self, part: Part) -> Matrix {
        match part {
            Part::H => self.proj_h.clone(),
            Part::M => self.proj_m.clone(),
            Part::P => self.proj_p.clone(),
            Part::K => self.proj_h.add(&self.proj_m),
        }
    }

    pub fn project(&self, part: Part, v: &[Scalar]) -> Vec<Scalar> {
        match part {
            Part::H => self.proj_h.mul_vec(v),
            Part::M => self.proj_m.mul_vec(v),
            Part::P => self.proj_p.mul_vec(v),
            Part::K => vec_add(&self.proj_h.mul_vec(v), &self.proj_m.mul_vec(v)),
        }
    }

    pub(crate) fn require_in_p(&self, a: &[Scalar]) -> Result<(), TripleError> {
        if a.len() != self.dim() {
            return Err(TripleError::NotInP(format!("length {} in a {}-dimensional algebra", a.len(), self.dim())));
        }
        if crate::linalg::matrix::vec_is_zero(a) {
            return Err(TripleError::NotInP("zero vector".into()));
        }
        if !self.p.contains(a) {
            return Err(TripleError::NotInP("vector has a component in k".into()));
        }
        Ok(())
    }

    /// `[h, m] ⊆ m` and `[k, p] ⊆ p`, checked on all basis pairs.
    pub fn verify_invariance(&self) -> bool {
        let hb = self.h.basis_vecs();
        let kb = self.k.basis_vecs();
        let mb = self.m.basis_vecs();
        let pb = self.p.basis_vecs();
        hb.iter().all(|x| mb.iter().all(|y| self.m.contains(&self.bracket(x, y))))
            && kb.iter().all(|x| pb.iter().all(|y| self.p.contains(&self.bracket(x, y))))
    }

    pub fn matrices(&self, s: &Subspace) -> Vec<Matrix> {
        self.g.matrices_of(s)
    }
}
