use num::Zero;

use super::AlgebraError;
use crate::linalg::matrix::{self, Matrix};
use crate::linalg::rref;
use crate::linalg::scalar::{self, Scalar};
use crate::linalg::subspace::{self, Subspace};

pub type SparseVec = Vec<(usize, Scalar)>;

/// A real matrix Lie algebra with bracket `XY - YX` and form `<X,Y> = -tr(XY)`.
///
/// The basis is canonical: the RREF of the flattened spanning matrices, so
/// basis order is lexicographic in the leading matrix position. The
/// coordinates of a member `X` are its entries at the pivot positions.
#[derive(Clone)]
pub struct LieAlgebra {
    name: String,
    matrix_size: usize,
    basis: Vec<Matrix>,
    space: Subspace,
    gram: Matrix,
    structure: Vec<Vec<SparseVec>>,
    invariant_form: Option<Matrix>,
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra({}, dim {}, {}x{})", self.name, self.dim(), self.matrix_size, self.matrix_size)
    }
}

fn sparse(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

impl LieAlgebra {
    /// Span of the given matrices, which must close under the bracket.
    pub fn from_matrices(name: impl Into<String>, matrix_size: usize, mats: &[Matrix]) -> Result<Self, AlgebraError> {
        let name = name.into();
        let n2 = matrix_size * matrix_size;
        let mut rows = Vec::with_capacity(mats.len());
        for m in mats {
            if m.rows() != matrix_size || m.cols() != matrix_size {
                return Err(AlgebraError::InvalidParameter(format!(
                    "{name}: expected {matrix_size}x{matrix_size} matrices, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
            rows.push(m.data().to_vec());
        }
        let space = Subspace::span(n2, &rows);
        let basis: Vec<Matrix> = space
            .basis_vecs()
            .into_iter()
            .map(|v| Matrix::from_vec(matrix_size, matrix_size, v))
            .collect();
        let d = basis.len();
        let mut structure = vec![vec![SparseVec::new(); d]; d];
        for i in 0..d {
            for j in i + 1..d {
                let br = basis[i].commutator(&basis[j]);
                let c = space
                    .coords(br.data())
                    .ok_or_else(|| AlgebraError::NotClosed(format!("{name}: [b{i}, b{j}] leaves the span")))?;
                let s = sparse(&c);
                structure[j][i] = s.iter().map(|(k, x)| (*k, -x)).collect();
                structure[i][j] = s;
            }
        }
        let mut gram = Matrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let v = -basis[i].trace_product(&basis[j]);
                gram[(j, i)] = v.clone();
                gram[(i, j)] = v;
            }
        }
        if !rref::is_positive_definite(&gram) {
            return Err(AlgebraError::InvariantFailed(format!("{name}: -tr(XY) is not positive definite")));
        }
        Ok(LieAlgebra { name, matrix_size, basis, space, gram, structure, invariant_form: None })
    }

    /// Records a symmetric matrix `F` with `X^T F + F X = 0` for every basis element.
    pub fn with_invariant_form(mut self, form: Matrix) -> Result<Self, AlgebraError> {
        for (i, b) in self.basis.iter().enumerate() {
            if !b.transpose().mul(&form).add(&form.mul(b)).is_zero() {
                return Err(AlgebraError::InvariantFailed(format!("{}: b{i} does not preserve the form", self.name)));
            }
        }
        self.invariant_form = Some(form);
        Ok(self)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn matrix_size(&self) -> usize {
        self.matrix_size
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn invariant_form(&self) -> Option<&Matrix> {
        self.invariant_form.as_ref()
    }

    /// `[b_i, b_j]` in coordinates, sparse.
    pub fn structure(&self, i: usize, j: usize) -> &SparseVec {
        &self.structure[i][j]
    }

    pub fn element(&self, c: &[Scalar]) -> Matrix {
        assert_eq!(c.len(), self.dim());
        let data = self.space.combination(c);
        Matrix::from_vec(self.matrix_size, self.matrix_size, data)
    }

    pub fn coords(&self, x: &Matrix) -> Option<Vec<Scalar>> {
        if x.rows() != self.matrix_size || x.cols() != self.matrix_size {
            return None;
        }
        self.space.coords(x.data())
    }

    pub fn contains(&self, x: &Matrix) -> bool {
        self.coords(x).is_some()
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![Scalar::zero(); d];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() || i == j {
                    continue;
                }
                let c = ui * vj;
                for (k, x) in &self.structure[i][j] {
                    out[*k] += &c * x;
                }
            }
        }
        out
    }

    /// `ad(u)` as a `dim x dim` matrix acting on column coordinate vectors.
    pub fn ad(&self, u: &[Scalar]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for j in 0..d {
                for (k, x) in &self.structure[i][j] {
                    m[(*k, j)] += ui * x;
                }
            }
        }
        m
    }

    pub fn inner(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        matrix::form(&self.gram, u, v)
    }

    /// Coordinates of the given member matrices, spanned as a subspace.
    pub fn span_of(&self, mats: &[Matrix]) -> Result<Subspace, AlgebraError> {
        let mut vecs = Vec::with_capacity(mats.len());
        for (i, m) in mats.iter().enumerate() {
            vecs.push(
                self.coords(m)
                    .ok_or_else(|| AlgebraError::NotInAlgebra(format!("matrix {i} is not in {}", self.name)))?,
            );
        }
        Ok(Subspace::span(self.dim(), &vecs))
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.dim())
    }

    pub fn matrices_of(&self, s: &Subspace) -> Vec<Matrix> {
        s.basis_vecs().iter().map(|v| self.element(v)).collect()
    }

    pub fn is_closed(&self, s: &Subspace) -> bool {
        let b = s.basis_vecs();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                if !s.contains(&self.bracket(&b[i], &b[j])) {
                    return false;
                }
            }
        }
        true
    }

    /// The subalgebra spanned by `s`, as a Lie algebra of its own.
    pub fn restrict(&self, name: impl Into<String>, s: &Subspace) -> Result<LieAlgebra, AlgebraError> {
        let out = LieAlgebra::from_matrices(name, self.matrix_size, &self.matrices_of(s))?;
        Ok(match &self.invariant_form {
            Some(f) => LieAlgebra { invariant_form: Some(f.clone()), ..out },
            None => out,
        })
    }

    /// Re-expresses a subspace of `self` in the coordinates of `other`, which must contain it.
    pub fn transfer(&self, s: &Subspace, other: &LieAlgebra) -> Result<Subspace, AlgebraError> {
        other.span_of(&self.matrices_of(s))
    }

    /// `{x in domain : [x, y] = 0 for all y in of}`.
    pub fn centralizer(&self, domain: &Subspace, of: &[Vec<Scalar>]) -> Subspace {
        let images: Vec<Matrix> = of.iter().map(|y| self.ad(y)).collect();
        let m = stack_all(self.dim(), &images);
        kernel_on(&m, domain)
    }

    /// `{x in domain : [x, s] in s}`.
    pub fn normalizer(&self, domain: &Subspace, s: &Subspace, form_complement: &Subspace) -> Subspace {
        // [x, y] in s  <=>  [x, y] is orthogonal to the complement of s.
        let comp = form_complement.basis_vecs();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for y in s.basis_vecs() {
            let ad_y = self.ad(&y);
            for c in &comp {
                // <c, [y, x]> as a row in x.
                let gc = self.gram.mul_vec(c);
                rows.push(ad_y.transpose().mul_vec(&gc));
            }
        }
        let m = Matrix::from_rows(self.dim(), &rows);
        kernel_on(&m, domain)
    }

    /// Orthogonal complement of `s` within `within` under the Killing-type form.
    pub fn complement(&self, s: &Subspace, within: &Subspace) -> Result<Subspace, AlgebraError> {
        Ok(s.orthocomplement(within, &self.gram)?)
    }

    pub fn projector(&self, s: &Subspace) -> Result<Matrix, AlgebraError> {
        Ok(s.projector(&self.gram)?)
    }

    pub fn verify_invariants(&self) -> Result<(), AlgebraError> {
        let d = self.dim();
        let err = |m: String| Err(AlgebraError::InvariantFailed(format!("{}: {m}", self.name)));
        if self.space.dim() != d {
            return err("basis is dependent".into());
        }
        for i in 0..d {
            if !self.structure[i][i].is_empty() {
                return err(format!("[b{i}, b{i}] != 0"));
            }
            for j in 0..d {
                let neg: SparseVec = self.structure[j][i].iter().map(|(k, x)| (*k, -x)).collect();
                if self.structure[i][j] != neg {
                    return err(format!("antisymmetry fails at ({i},{j})"));
                }
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                let br = self.basis[i].commutator(&self.basis[j]);
                let c = dense(&self.structure[i][j], d);
                if self.element(&c) != br {
                    return err(format!("structure constants wrong at ({i},{j})"));
                }
            }
        }
        if !rref::is_positive_definite(&self.gram) {
            return err("gram not positive definite".into());
        }
        let ads: Vec<Matrix> = (0..d).map(|i| self.ad(&matrix::unit_vec(d, i))).collect();
        for i in 0..d {
            // ad-invariance: G ad_i + ad_i^T G = 0.
            let g_ad = self.gram.mul(&ads[i]);
            if !g_ad.add(&g_ad.transpose()).is_zero() {
                return err(format!("form not ad-invariant for b{i}"));
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                // Jacobi as ad_[i,j] = [ad_i, ad_j].
                let c = dense(&self.structure[i][j], d);
                let lhs = self.ad(&c);
                let rhs = ads[i].commutator(&ads[j]);
                if lhs != rhs {
                    return err(format!("Jacobi fails at ({i},{j})"));
                }
            }
        }
        Ok(())
    }
}

/// A subspace of a parent algebra, verified closed under the parent bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    parent: String,
    space: Subspace,
}

impl Subalgebra {
    pub fn new(parent: &LieAlgebra, space: Subspace) -> Result<Self, AlgebraError> {
        if space.ambient_dim() != parent.dim() {
            return Err(AlgebraError::InvalidParameter(format!(
                "subspace of Q^{} used in {} of dim {}",
                space.ambient_dim(),
                parent.name(),
                parent.dim()
            )));
        }
        if !parent.is_closed(&space) {
            return Err(AlgebraError::NotClosed(format!("subspace of {} is not a subalgebra", parent.name())));
        }
        Ok(Subalgebra { parent: parent.name().to_string(), space })
    }

    pub fn parent_name(&self) -> &str {
        &self.parent
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn into_space(self) -> Subspace {
        self.space
    }
}

pub fn dense(s: &SparseVec, d: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); d];
    for (k, x) in s {
        v[*k] = x.clone();
    }
    v
}

fn stack_all(cols: usize, ms: &[Matrix]) -> Matrix {
    let mut out = Matrix::zeros(0, cols);
    for m in ms {
        out = out.stack(m);
    }
    out
}

/// `{x in domain : M x = 0}` for a map given on ambient coordinates.
pub fn kernel_on(m: &Matrix, domain: &Subspace) -> Subspace {
    if domain.is_zero() {
        return domain.clone();
    }
    // M B^T c = 0
    let restricted = m.mul(&domain.basis().transpose());
    let null = subspace::nullspace(&restricted);
    let vecs: Vec<Vec<Scalar>> = null.basis_vecs().iter().map(|c| domain.combination(c)).collect();
    Subspace::span(domain.ambient_dim(), &vecs)
}

/// Random element of a subspace with small-denominator coefficients.
pub fn random_in<R: rand::Rng>(s: &Subspace, rng: &mut R) -> Vec<Scalar> {
    loop {
        let c: Vec<Scalar> = (0..s.dim()).map(|_| scalar::random_small(rng)).collect();
        let v = s.combination(&c);
        if !matrix::vec_is_zero(&v) || s.is_zero() {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn so3() -> LieAlgebra {
        let e = |i: usize, j: usize| {
            let mut m = Matrix::zeros(3, 3);
            m[(i, j)] = scalar::one();
            m[(j, i)] = scalar::int(-1);
            m
        };
        LieAlgebra::from_matrices("so(3)", 3, &[e(0, 1), e(0, 2), e(1, 2)]).unwrap()
    }

    #[test]
    fn so3_invariants_and_brackets() {
        let g = so3();
        g.verify_invariants().unwrap();
        assert_eq!(g.dim(), 3);
        let b = g.bracket(&matrix::unit_vec(3, 0), &matrix::unit_vec(3, 1));
        assert_eq!(g.element(&b), g.basis()[0].commutator(&g.basis()[1]));
    }

    #[test]
    fn non_closed_span_is_rejected() {
        let mut a = Matrix::zeros(3, 3);
        a[(0, 1)] = scalar::one();
        a[(1, 0)] = scalar::int(-1);
        let mut b = Matrix::zeros(3, 3);
        b[(1, 2)] = scalar::one();
        b[(2, 1)] = scalar::int(-1);
        assert!(matches!(LieAlgebra::from_matrices("x", 3, &[a, b]), Err(AlgebraError::NotClosed(_))));
    }

    #[test]
    fn centralizer_in_so3() {
        let g = so3();
        let c = g.centralizer(&g.full(), &[matrix::unit_vec(3, 0)]);
        assert_eq!(c, Subspace::span(3, &[matrix::unit_vec(3, 0)]));
    }
}
