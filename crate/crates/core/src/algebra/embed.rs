use num::{Integer, Zero};

use super::lie::{LieAlgebra, Subalgebra};
use super::AlgebraError;
use crate::linalg::matrix::{vec_add, vec_scale, Matrix};
use crate::linalg::scalar::{self, Scalar};
use crate::linalg::subspace::Subspace;

/// `block_diag(zeros(before), m, zeros(after))`.
pub fn pad(m: &Matrix, before: usize, after: usize) -> Matrix {
    Matrix::block_diag(&[&Matrix::zeros(before, before), m, &Matrix::zeros(after, after)])
}

/// Block-diagonal direct sum of a list of algebras.
pub fn direct_sum_all(name: impl Into<String>, parts: &[&LieAlgebra]) -> Result<LieAlgebra, AlgebraError> {
    let total: usize = parts.iter().map(|p| p.matrix_size()).sum();
    let mut mats = Vec::new();
    let mut offset = 0;
    for p in parts {
        for b in p.basis() {
            mats.push(pad(b, offset, total - offset - p.matrix_size()));
        }
        offset += p.matrix_size();
    }
    let out = LieAlgebra::from_matrices(name, total, &mats)?;
    if parts.iter().all(|p| p.invariant_form().is_some()) {
        let forms: Vec<&Matrix> = parts.iter().map(|p| p.invariant_form().unwrap()).collect();
        return out.with_invariant_form(Matrix::block_diag(&forms));
    }
    Ok(out)
}

pub fn direct_sum(l1: &LieAlgebra, l2: &LieAlgebra) -> Result<LieAlgebra, AlgebraError> {
    direct_sum_all(format!("{}+{}", l1.name(), l2.name()), &[l1, l2])
}

/// `L + L` with the diagonal `{(X, X)}`.
pub fn diagonal_embed(l: &LieAlgebra) -> Result<(LieAlgebra, Subalgebra), AlgebraError> {
    let sum = direct_sum(l, l)?;
    let mats: Vec<Matrix> = l.basis().iter().map(|b| Matrix::block_diag(&[b, b])).collect();
    let space = sum.span_of(&mats)?;
    let sub = Subalgebra::new(&sum, space)?;
    Ok((sum, sub))
}

/// Reduces `(k, l)` to coprime form with `k > 0`, or `k = 0, l > 0`.
pub fn normalize_slope(k: i64, l: i64) -> Result<(i64, i64), AlgebraError> {
    if k == 0 && l == 0 {
        return Err(AlgebraError::ZeroSlope);
    }
    let g = k.gcd(&l);
    let (mut k, mut l) = (k / g, l / g);
    if k < 0 || (k == 0 && l < 0) {
        k = -k;
        l = -l;
    }
    Ok((k, l))
}

/// `span{k t1 + l t2}` for commuting `t1, t2` in ambient coordinates.
pub fn slope_embed_u1(
    ambient: &LieAlgebra,
    torus: (&[Scalar], &[Scalar]),
    k: i64,
    l: i64,
) -> Result<Subalgebra, AlgebraError> {
    let (k, l) = normalize_slope(k, l)?;
    let br = ambient.bracket(torus.0, torus.1);
    if br.iter().any(|x| !x.is_zero()) {
        return Err(AlgebraError::InvalidParameter("torus generators do not commute".into()));
    }
    let v = vec_add(&vec_scale(torus.0, &scalar::int(k)), &vec_scale(torus.1, &scalar::int(l)));
    Subalgebra::new(ambient, Subspace::span(ambient.dim(), &[v]))
}
