//! Common ideals of `h` and `g`, and the reduced triple without them.

use std::sync::Arc;

use super::{make_triple, Hints, NestedTriple, TripleError};
use crate::algebra::LieAlgebra;
use crate::linalg::matrix::Matrix;
use crate::linalg::{Scalar, Subspace};

/// Largest ideal of `g` inside `h`, by the descending fixpoint
/// `a_{i+1} = {X ∈ a_i : [g, X] ⊆ a_i}`.
pub fn common_ideal(t: &NestedTriple) -> Subspace {
    let g = t.g();
    let full = g.full();
    let mut a = t.h().clone();
    loop {
        if a.is_zero() {
            return a;
        }
        let comp = g.complement(&a, &full).expect("form is positive definite");
        let next = g.normalizer(&a, &full, &comp);
        if next.dim() == a.dim() {
            return a;
        }
        a = next;
    }
}

/// Rows and columns used by some matrix.
fn support(mats: &[Matrix], n: usize) -> Vec<usize> {
    (0..n)
        .filter(|&i| mats.iter().any(|m| (0..n).any(|j| !num::Zero::is_zero(&m[(i, j)]) || !num::Zero::is_zero(&m[(j, i)]))))
        .collect()
}

/// The triple with the common ideal of `h` and `g` split off.
///
/// Works on orthocomplements of the ideal and drops matrix rows and columns
/// that no remaining element uses. Hints are carried over by projection.
pub fn reduce(t: &NestedTriple) -> Result<NestedTriple, TripleError> {
    let a = common_ideal(t);
    if a.is_zero() {
        return Ok(t.clone());
    }
    let g = t.g();
    let gram = g.gram();
    let rest_g = a.orthocomplement(&g.full(), gram)?;
    let rest_k = a.orthocomplement(t.k(), gram)?;
    let rest_h = a.orthocomplement(t.h(), gram)?;
    let mats = g.matrices_of(&rest_g);
    let n = g.matrix_size();
    let keep = support(&mats, n);
    let shrink = |m: &Matrix| m.submatrix(&keep, &keep);
    let shrunk: Vec<Matrix> = mats.iter().map(shrink).collect();
    let mut g2 = LieAlgebra::from_matrices(format!("{}/ideal", g.name()), keep.len(), &shrunk)?;
    if let Some(f) = g.invariant_form() {
        g2 = g2.with_invariant_form(shrink(f))?;
    }
    let transfer = |s: &Subspace| -> Result<Subspace, TripleError> {
        let ms: Vec<Matrix> = g.matrices_of(s).iter().map(shrink).collect();
        Ok(g2.span_of(&ms)?)
    };
    let k2 = transfer(&rest_k)?;
    let h2 = transfer(&rest_h)?;
    let proj = g.projector(&rest_g)?;
    let g2 = Arc::new(g2);
    let move_vec = |v: &[Scalar]| g2.coords(&shrink(&g.element(&proj.mul_vec(v))));
    let out = make_triple(t.id.clone(), g2.clone(), k2, h2)?;
    let fat_candidates = t.hints.fat_candidates.iter().filter_map(|v| move_vec(v)).collect();
    let non_strongly_fat = match &t.hints.non_strongly_fat {
        Some(s) => Some(Subspace::span(out.dim(), &s.basis_vecs().iter().filter_map(|v| move_vec(v)).collect::<Vec<_>>())),
        None => None,
    };
    let hints = Hints { fat_candidates, non_strongly_fat, family: None };
    Ok(out.with_tags(t.tags).with_hints(hints))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::embed::{direct_sum, pad};
    use crate::algebra::{build_classical, Family};
    use crate::test_support::so2_so3_so4;

    #[test]
    fn reduced_triple_has_no_common_ideal() {
        let t = so2_so3_so4();
        assert!(common_ideal(&t).is_zero());
        let r = reduce(&t).unwrap();
        assert_eq!(r.dim(), t.dim());
    }

    #[test]
    fn padding_by_an_ideal_is_undone() {
        let t = so2_so3_so4();
        let a = build_classical(Family::So, 3).unwrap();
        let g2 = Arc::new(direct_sum(t.g(), &a).unwrap());
        let lift = |s: &Subspace| {
            let mut ms: Vec<Matrix> = t.matrices(s).iter().map(|m| pad(m, 0, 3)).collect();
            ms.extend(a.basis().iter().map(|m| pad(m, 4, 0)));
            g2.span_of(&ms).unwrap()
        };
        let padded = make_triple("padded", g2.clone(), lift(t.k()), lift(t.h())).unwrap();
        let ideal = common_ideal(&padded);
        assert_eq!(ideal.dim(), 3);
        // Oracle: the result is an ideal of g.
        for x in ideal.basis_vecs() {
            for y in g2.full().basis_vecs() {
                assert!(ideal.contains(&g2.bracket(&x, &y)));
            }
        }
        let r = reduce(&padded).unwrap();
        assert_eq!(r.g().matrix_size(), 4);
        assert_eq!(r.g().basis(), t.g().basis());
        assert_eq!(r.k(), t.k());
        assert_eq!(r.h(), t.h());
    }
}
