//! Versioned JSON documents for algebras.

use serde::{Deserialize, Serialize};

use super::lie::LieAlgebra;
use super::AlgebraError;
use crate::linalg::matrix::Matrix;
use crate::linalg::scalar;

pub const ALGEBRA_SCHEMA: &str = "postrip.algebra/v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub schema: String,
    pub name: String,
    pub matrix_size: usize,
    /// Always `rational`; irrational bases are conjugated to rational ones.
    pub scalar_ext: String,
    pub dim: usize,
    pub basis: Vec<Matrix>,
    /// Symmetric `F` with `X^T F + F X = 0` on the basis, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant_form: Option<Matrix>,
    /// `[i, j, k, c]` for `[b_i, b_j] = ... + c b_k`, with `i < j`.
    pub structure_constants: Vec<(usize, usize, usize, String)>,
}

pub fn export(l: &LieAlgebra) -> AlgebraDoc {
    let mut sc = Vec::new();
    for i in 0..l.dim() {
        for j in i + 1..l.dim() {
            for (k, c) in l.structure(i, j) {
                sc.push((i, j, *k, scalar::to_string(c)));
            }
        }
    }
    AlgebraDoc {
        schema: ALGEBRA_SCHEMA.into(),
        name: l.name().into(),
        matrix_size: l.matrix_size(),
        scalar_ext: "rational".into(),
        dim: l.dim(),
        basis: l.basis().to_vec(),
        invariant_form: l.invariant_form().cloned(),
        structure_constants: sc,
    }
}

/// Rebuilds the algebra and checks the document's basis and structure constants agree exactly.
pub fn import(doc: &AlgebraDoc) -> Result<LieAlgebra, AlgebraError> {
    if doc.schema != ALGEBRA_SCHEMA {
        return Err(AlgebraError::Document(format!("unsupported schema `{}`", doc.schema)));
    }
    if doc.scalar_ext != "rational" {
        return Err(AlgebraError::Document(format!("unsupported scalar extension `{}`", doc.scalar_ext)));
    }
    let mut l = LieAlgebra::from_matrices(doc.name.clone(), doc.matrix_size, &doc.basis)?;
    if let Some(f) = &doc.invariant_form {
        l = l.with_invariant_form(f.clone())?;
    }
    if l.basis() != doc.basis.as_slice() || l.dim() != doc.dim {
        return Err(AlgebraError::Document("basis is not in canonical form".into()));
    }
    if export(&l).structure_constants != doc.structure_constants {
        return Err(AlgebraError::Document("structure constants disagree with the basis".into()));
    }
    Ok(l)
}

pub fn to_json(l: &LieAlgebra) -> String {
    serde_json::to_string_pretty(&export(l)).expect("algebra documents serialize")
}

pub fn from_json(s: &str) -> Result<LieAlgebra, AlgebraError> {
    let doc: AlgebraDoc = serde_json::from_str(s).map_err(|e| AlgebraError::Document(e.to_string()))?;
    import(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::classical::{build_classical, Family};

    #[test]
    fn round_trip_is_exact() {
        let g = build_classical(Family::Sp, 2).unwrap();
        let s = to_json(&g);
        let back = from_json(&s).unwrap();
        assert_eq!(back.basis(), g.basis());
        assert_eq!(to_json(&back), s);
    }

    #[test]
    fn tampered_constants_are_rejected() {
        let g = build_classical(Family::So, 3).unwrap();
        let mut doc = export(&g);
        doc.structure_constants[0].3 = "7".into();
        assert!(import(&doc).is_err());
    }
}
