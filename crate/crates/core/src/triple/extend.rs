//! Extension of a triple by a circle or `sp(1)` factor embedded in `k`:
//! `h ⊕ Δa ⊂ k ⊕ a ⊂ g ⊕ a`.

use std::sync::Arc;

use super::{make_triple, Hints, NestedTriple, TripleError};
use crate::algebra::embed::{direct_sum, pad};
use crate::algebra::LieAlgebra;
use crate::linalg::matrix::{vec_add, vec_is_zero, vec_scale};
use crate::linalg::scalar::int;
use crate::linalg::{Scalar, Subspace};

#[derive(Clone, Debug)]
pub struct Extension {
    pub triple: NestedTriple,
    /// The vector `(A, 0)`, when a vector `A ∈ p` was supplied or hinted.
    pub transported_a: Option<Vec<Scalar>>,
}

fn check_embedding(t: &NestedTriple, a: &LieAlgebra, iota: &[Vec<Scalar>]) -> Result<(), TripleError> {
    if iota.len() != a.dim() || iota.iter().any(|v| v.len() != t.dim()) {
        return Err(TripleError::InvalidEmbedding(format!("expected {} images in g", a.dim())));
    }
    if iota.iter().any(|v| !t.k().contains(v)) {
        return Err(TripleError::InvalidEmbedding("image is not contained in k".into()));
    }
    let img = Subspace::span(t.dim(), iota);
    if img.dim() != a.dim() {
        return Err(TripleError::InvalidEmbedding("map is not injective".into()));
    }
    if !img.intersect(t.h())?.is_zero() {
        return Err(TripleError::InvalidEmbedding("image meets h".into()));
    }
    let d = a.dim();
    for i in 0..d {
        for j in i + 1..d {
            let ei = crate::linalg::matrix::unit_vec(d, i);
            let ej = crate::linalg::matrix::unit_vec(d, j);
            let br = a.bracket(&ei, &ej);
            let mut mapped = vec![int(0); t.dim()];
            for (c, v) in br.iter().zip(iota) {
                mapped = vec_add(&mapped, &vec_scale(v, c));
            }
            if mapped != t.bracket(&iota[i], &iota[j]) {
                return Err(TripleError::InvalidEmbedding("map is not a homomorphism".into()));
            }
        }
    }
    let hb = t.h().basis_vecs();
    if iota.iter().any(|v| hb.iter().any(|y| !vec_is_zero(&t.bracket(v, y)))) {
        return Err(TripleError::EmbeddingNotCommuting);
    }
    Ok(())
}

/// Builds `h ⊕ {(l ι(x), k x)} ⊂ k ⊕ a ⊂ g ⊕ a` for `a ∈ {u(1), sp(1)}`.
///
/// `iota` lists the images in `g` of the basis of `a`. Slopes must be nonzero,
/// and `(1, 1)` when `a` is `sp(1)`. `p` is unchanged, so a vector `A ∈ p`
/// carries over as `(A, 0)` and is put first among the fat-vector hints.
pub fn cheeger_extend(
    t: &NestedTriple,
    a: &LieAlgebra,
    iota: &[Vec<Scalar>],
    slope: (i64, i64),
    vector: Option<&[Scalar]>,
) -> Result<Extension, TripleError> {
    let (k, l) = slope;
    if k == 0 || l == 0 {
        return Err(TripleError::SlopeNotAllowed(k, l));
    }
    match a.dim() {
        1 => {}
        3 if (k, l) == (1, 1) => {}
        3 => return Err(TripleError::SlopeNotAllowed(k, l)),
        d => return Err(TripleError::InvalidEmbedding(format!("factor of dimension {d}"))),
    }
    check_embedding(t, a, iota)?;
    let g = t.g();
    let (n, na) = (g.matrix_size(), a.matrix_size());
    let g2 = Arc::new(direct_sum(g, a)?);
    let lift_g = |v: &[Scalar]| -> Vec<Scalar> { g2.coords(&pad(&g.element(v), 0, na)).expect("block lies in the sum") };
    let lift_a = |v: &[Scalar]| -> Vec<Scalar> { g2.coords(&pad(&a.element(v), n, 0)).expect("block lies in the sum") };
    let a_basis: Vec<Vec<Scalar>> = a.full().basis_vecs();
    let mut kv: Vec<Vec<Scalar>> = t.k().basis_vecs().iter().map(|v| lift_g(v)).collect();
    kv.extend(a_basis.iter().map(|e| lift_a(e)));
    let mut hv: Vec<Vec<Scalar>> = t.h().basis_vecs().iter().map(|v| lift_g(v)).collect();
    for (e, img) in a_basis.iter().zip(iota) {
        hv.push(vec_add(&vec_scale(&lift_g(img), &int(l)), &vec_scale(&lift_a(e), &int(k))));
    }
    let d = g2.dim();
    let id = format!("{}+ext({k},{l})", t.id);
    let out = make_triple(id, g2.clone(), Subspace::span(d, &kv), Subspace::span(d, &hv))?;
    let source = vector.map(|v| v.to_vec()).or_else(|| t.hints.fat_candidates.first().cloned());
    let transported_a = source.map(|v| lift_g(&v));
    let mut fat_candidates: Vec<Vec<Scalar>> = transported_a.iter().cloned().collect();
    fat_candidates.extend(t.hints.fat_candidates.iter().map(|v| lift_g(v)));
    let hints = Hints { fat_candidates, non_strongly_fat: None, family: None };
    Ok(Extension { triple: out.with_tags(t.tags).with_hints(hints), transported_a })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_classical, Family};
    use crate::test_support::so2_so3_so4;

    fn u1() -> LieAlgebra {
        build_classical(Family::So, 2).unwrap()
    }

    #[test]
    fn circle_inside_h_is_rejected() {
        let t = so2_so3_so4();
        let z = t.h().basis_vecs()[0].clone();
        let err = cheeger_extend(&t, &u1(), &[z], (1, 1), None).unwrap_err();
        assert!(matches!(err, TripleError::InvalidEmbedding(_)));
    }

    #[test]
    fn slopes_are_checked() {
        let t = so2_so3_so4();
        let v = t.m().basis_vecs()[0].clone();
        assert!(matches!(cheeger_extend(&t, &u1(), &[v.clone()], (0, 0), None), Err(TripleError::SlopeNotAllowed(0, 0))));
        assert!(matches!(cheeger_extend(&t, &u1(), &[v.clone()], (1, 0), None), Err(TripleError::SlopeNotAllowed(1, 0))));
        assert!(matches!(cheeger_extend(&t, &u1(), &[v], (1, 1), None), Err(TripleError::EmbeddingNotCommuting)));
    }
}
