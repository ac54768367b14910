use num::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::{self, Matrix};
use super::rref::{self, Rref};
use super::scalar::Scalar;
use super::LinalgError;

/// A linear subspace of `Q^n`, stored as the RREF of a row basis.
///
/// Two subspaces are equal exactly when their canonical bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    #[serde(skip)]
    pivots: Vec<usize>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in Q^{}) {:?}", self.dim(), self.ambient_dim, self.basis)
    }
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::zeros(0, ambient_dim), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::identity(ambient_dim), pivots: (0..ambient_dim).collect() }
    }

    /// Span of the given vectors (dependent or zero vectors are fine).
    pub fn span(ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Self {
        Self::from_rows_matrix(&Matrix::from_rows(ambient_dim, vectors))
    }

    pub fn from_rows_matrix(m: &Matrix) -> Self {
        let Rref { matrix, pivots, .. } = rref::rref(m);
        Subspace { ambient_dim: m.cols(), basis: matrix, pivots }
    }

    fn from_rref(r: Rref) -> Self {
        Subspace { ambient_dim: r.matrix.cols(), basis: r.matrix, pivots: r.pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vecs(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Restores cached pivots after deserialization.
    pub fn normalized(self) -> Self {
        Self::from_rows_matrix(&self.basis)
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    ///
    /// Because the basis is in RREF, the coordinates are the entries of `v` at the pivots.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient_dim);
        let c: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.vec_mul(&c);
        (back.as_slice() == v).then_some(c)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vecs().iter().all(|v| self.contains(v))
    }

    pub fn combination(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        self.basis.vec_mul(coeffs)
    }

    fn check_dims(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::DimensionMismatch { left: self.ambient_dim, right: other.ambient_dim });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_dims(other)?;
        Ok(Self::from_rows_matrix(&self.basis.stack(&other.basis)))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_dims(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        // x = a U = b V  <=>  [a | -b] [U; V] = 0.
        let stacked = self.basis.stack(&other.basis.neg());
        let null = rref::nullspace_rows(&stacked.transpose());
        let vecs: Vec<Vec<Scalar>> = null.iter().map(|c| self.basis.vec_mul(&c[..self.dim()])).collect();
        Ok(Subspace::span(self.ambient_dim, &vecs))
    }

    /// Restriction of the form `g` to this subspace, in its canonical basis.
    pub fn gram(&self, g: &Matrix) -> Matrix {
        self.basis.mul(g).mul(&self.basis.transpose())
    }

    fn check_form(&self, g: &Matrix) -> Result<(), LinalgError> {
        if g.rows() != self.ambient_dim || g.cols() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch { left: self.ambient_dim, right: g.rows() });
        }
        Ok(())
    }

    fn check_positive(&self, g: &Matrix) -> Result<(), LinalgError> {
        let gw = self.gram(g);
        if rref::inverse(&gw).is_none() {
            return Err(LinalgError::DegenerateForm);
        }
        if !rref::is_positive_definite(&gw) {
            return Err(LinalgError::NotPositiveDefinite);
        }
        Ok(())
    }

    /// `{x in within : g(x, u) = 0 for all u in self}`.
    pub fn orthocomplement(&self, within: &Subspace, g: &Matrix) -> Result<Subspace, LinalgError> {
        self.check_dims(within)?;
        within.check_form(g)?;
        within.check_positive(g)?;
        if within.is_zero() {
            return Ok(within.clone());
        }
        if self.is_zero() {
            return Ok(within.clone());
        }
        // c W G U^T = 0
        let m = within.basis.mul(g).mul(&self.basis.transpose());
        let null = rref::nullspace_rows(&m.transpose());
        let vecs: Vec<Vec<Scalar>> = null.iter().map(|c| within.basis.vec_mul(c)).collect();
        Ok(Subspace::span(self.ambient_dim, &vecs))
    }

    /// Orthogonal projector onto this subspace as a matrix acting on column vectors.
    pub fn projector(&self, g: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_form(g)?;
        if self.is_zero() {
            return Ok(Matrix::zeros(self.ambient_dim, self.ambient_dim));
        }
        let gu = self.gram(g);
        let inv = rref::inverse(&gu).ok_or(LinalgError::DegenerateForm)?;
        if !rref::is_positive_definite(&gu) {
            return Err(LinalgError::NotPositiveDefinite);
        }
        // P = U^T (U G U^T)^{-1} U G
        Ok(self.basis.transpose().mul(&inv).mul(&self.basis).mul(g))
    }

    pub fn project(&self, v: &[Scalar], g: &Matrix) -> Result<Vec<Scalar>, LinalgError> {
        Ok(self.projector(g)?.mul_vec(v))
    }
}

/// Basis of `{v : M v = 0}`.
pub fn nullspace(m: &Matrix) -> Subspace {
    let vecs = rref::nullspace_rows(m);
    if vecs.is_empty() {
        return Subspace::zero(m.cols());
    }
    let s = Subspace::from_rref(rref::rref(&Matrix::from_rows(m.cols(), &vecs)));
    debug_assert!(s.basis_vecs().iter().all(|v| matrix::vec_is_zero(&m.mul_vec(v))));
    s
}

/// Checks `a` and `b` are linearly independent.
pub fn independent(a: &[Scalar], b: &[Scalar]) -> bool {
    Subspace::span(a.len(), &[a.to_vec(), b.to_vec()]).dim() == 2
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::unit_vec;
    use crate::linalg::scalar::int;

    fn e(n: usize, i: usize) -> Vec<Scalar> {
        unit_vec(n, i)
    }

    #[test]
    fn nullspace_basic_cases() {
        assert_eq!(nullspace(&Matrix::identity(4)).dim(), 0);
        assert_eq!(nullspace(&Matrix::zeros(3, 5)).dim(), 5);
        let n = nullspace(&Matrix::from_i64(1, 3, &[1, 1, 0]));
        assert_eq!(n.dim(), 2);
        assert!(n.contains(&[int(1), int(-1), int(0)]));
        assert!(n.contains(&[int(0), int(0), int(1)]));
    }

    #[test]
    fn complement_and_intersection() {
        let g = Matrix::identity(3);
        let u = Subspace::span(3, &[e(3, 0)]);
        let c = u.orthocomplement(&Subspace::full(3), &g).unwrap();
        assert_eq!(c, Subspace::span(3, &[e(3, 1), e(3, 2)]));
        let a = Subspace::span(3, &[e(3, 0), e(3, 1)]);
        let b = Subspace::span(3, &[e(3, 1), e(3, 2)]);
        assert_eq!(a.intersect(&b).unwrap(), Subspace::span(3, &[e(3, 1)]));
    }

    #[test]
    fn errors() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(matches!(a.sum(&b), Err(LinalgError::DimensionMismatch { .. })));
        let g = Matrix::from_i64(2, 2, &[1, 0, 0, 0]);
        let u = Subspace::span(2, &[e(2, 0)]);
        assert!(matches!(u.orthocomplement(&a, &g), Err(LinalgError::DegenerateForm)));
        let h = Matrix::from_i64(2, 2, &[1, 0, 0, -1]);
        assert!(matches!(u.orthocomplement(&a, &h), Err(LinalgError::NotPositiveDefinite)));
    }
}
