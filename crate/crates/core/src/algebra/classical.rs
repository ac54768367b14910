//! Classical matrix algebras, realified.
//!
//! A matrix over `K in {R, C, H}` becomes a real matrix whose `(l, m)` block is
//! left multiplication by the entry on `K = R^d`. This is multiplicative, so
//! brackets of realified matrices are realified brackets.

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use super::composition::CompositionAlgebra;
use super::lie::LieAlgebra;
use super::AlgebraError;
use crate::linalg::matrix::Matrix;
use crate::linalg::scalar::{self, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    R,
    C,
    H,
}

impl Field {
    pub fn dim(self) -> usize {
        match self {
            Field::R => 1,
            Field::C => 2,
            Field::H => 4,
        }
    }

    pub fn parse(s: &str) -> Option<Field> {
        match s {
            "R" | "r" | "real" => Some(Field::R),
            "C" | "c" | "complex" => Some(Field::C),
            "H" | "h" | "quaternion" => Some(Field::H),
            _ => None,
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Field::R => "R",
            Field::C => "C",
            Field::H => "H",
        }
    }

    /// Left multiplication by `x` (coefficients on `1, i, j, k` truncated to `dim`).
    pub fn left_mul(self, x: &[Scalar]) -> Matrix {
        let d = self.dim();
        assert_eq!(x.len(), d);
        let h = CompositionAlgebra::quaternions();
        let mut m = Matrix::zeros(d, d);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for s in 0..d {
                let (r, sign) = h.unit_product(a, s);
                m[(r, s)] += if sign > 0 { xa.clone() } else { -xa };
            }
        }
        m
    }

    pub fn unit(self, u: usize) -> Vec<Scalar> {
        crate::linalg::matrix::unit_vec(self.dim(), u)
    }

    pub fn conj(x: &[Scalar]) -> Vec<Scalar> {
        x.iter().enumerate().map(|(i, v)| if i == 0 { v.clone() } else { -v }).collect()
    }
}

/// Sparse `n x n` matrix over a field, entries as coefficient vectors.
#[derive(Clone, Debug)]
pub struct KMatrix {
    pub field: Field,
    pub n: usize,
    pub entries: Vec<(usize, usize, Vec<Scalar>)>,
}

impl KMatrix {
    pub fn new(field: Field, n: usize) -> Self {
        KMatrix { field, n, entries: Vec::new() }
    }

    pub fn set(mut self, l: usize, m: usize, x: Vec<Scalar>) -> Self {
        self.entries.push((l, m, x));
        self
    }

    pub fn realify(&self) -> Matrix {
        let d = self.field.dim();
        let mut out = Matrix::zeros(d * self.n, d * self.n);
        for (l, m, x) in &self.entries {
            let b = self.field.left_mul(x);
            for r in 0..d {
                for s in 0..d {
                    out[(l * d + r, m * d + s)] += b[(r, s)].clone();
                }
            }
        }
        out
    }
}

/// Realified `diag(weights)` over the field, as a real symmetric matrix.
pub fn hermitian_form(field: Field, weights: &[Scalar]) -> Matrix {
    let mut k = KMatrix::new(field, weights.len());
    for (l, w) in weights.iter().enumerate() {
        let mut x = vec![Scalar::zero(); field.dim()];
        x[0] = w.clone();
        k = k.set(l, l, x);
    }
    k.realify()
}

/// Basis of `{Y : Y* H + H Y = 0}` for `H = diag(weights)`, realified.
///
/// Off-diagonal generators put `u` at `(l, m)` and `-(h_l / h_m) conj(u)` at `(m, l)`.
pub fn skew_hermitian_basis(field: Field, weights: &[Scalar]) -> Vec<Matrix> {
    let d = field.dim();
    let diag: Vec<usize> = (1..d).collect();
    let off: Vec<usize> = (0..d).collect();
    skew_hermitian_basis_units(field, weights, &diag, &off)
}

/// Like [`skew_hermitian_basis`] but only with the given units on and off the
/// diagonal; units `{1, i}` over `H` give the complex subalgebra `u(n)`.
pub fn skew_hermitian_basis_units(field: Field, weights: &[Scalar], diag: &[usize], off: &[usize]) -> Vec<Matrix> {
    let n = weights.len();
    let mut out = Vec::new();
    for l in 0..n {
        for &u in diag {
            out.push(KMatrix::new(field, n).set(l, l, field.unit(u)).realify());
        }
    }
    for l in 0..n {
        for m in l + 1..n {
            let ratio = &weights[l] / &weights[m];
            for &u in off {
                let x = field.unit(u);
                let y: Vec<Scalar> = Field::conj(&x).iter().map(|c| -(c * &ratio)).collect();
                out.push(KMatrix::new(field, n).set(l, m, x).set(m, l, y).realify());
            }
        }
    }
    out
}

pub fn ones(n: usize) -> Vec<Scalar> {
    vec![Scalar::one(); n]
}

fn su_basis(n: usize) -> Vec<Matrix> {
    let w = ones(n);
    let mut out: Vec<Matrix> = skew_hermitian_basis(Field::C, &w).into_iter().skip(n).collect();
    for l in 0..n.saturating_sub(1) {
        let i = Field::C.unit(1);
        let mi: Vec<Scalar> = i.iter().map(|c| -c).collect();
        out.push(KMatrix::new(Field::C, n).set(l, l, i).set(l + 1, l + 1, mi).realify());
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    So,
    U,
    Su,
    Sp,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "so" => Some(Family::So),
            "u" => Some(Family::U),
            "su" => Some(Family::Su),
            "sp" => Some(Family::Sp),
            _ => None,
        }
    }
}

/// `G(n)` over a field: `so(n)`, `u(n)` or `sp(n)`, relative to `diag(weights)`.
pub fn unitary_algebra(field: Field, weights: &[Scalar]) -> Result<LieAlgebra, AlgebraError> {
    let n = weights.len();
    if n < 1 {
        return Err(AlgebraError::InvalidParameter("n must be at least 1".into()));
    }
    if weights.iter().any(|w| !scalar::is_positive(w)) {
        return Err(AlgebraError::InvalidParameter("hermitian weights must be positive".into()));
    }
    let name = match field {
        Field::R => format!("so({n})"),
        Field::C => format!("u({n})"),
        Field::H => format!("sp({n})"),
    };
    let size = n * field.dim();
    LieAlgebra::from_matrices(name, size, &skew_hermitian_basis(field, weights))?
        .with_invariant_form(hermitian_form(field, weights))
}

pub fn build_classical(family: Family, n: usize) -> Result<LieAlgebra, AlgebraError> {
    if n < 1 {
        return Err(AlgebraError::InvalidParameter(format!("n = {n} must be at least 1")));
    }
    match family {
        Family::So => unitary_algebra(Field::R, &ones(n)),
        Family::U => unitary_algebra(Field::C, &ones(n)),
        Family::Sp => unitary_algebra(Field::H, &ones(n)),
        Family::Su => LieAlgebra::from_matrices(format!("su({n})"), 2 * n, &su_basis(n))?
            .with_invariant_form(Matrix::identity(2 * n)),
    }
}

/// Quaternion `a + bi + cj + dk = alpha + beta j` as the complex matrix
/// `[[alpha, -beta], [conj(beta), conj(alpha)]]`, realified to `4 x 4`.
///
/// Placed at complex block position `(l0, l0)` inside an `n x n` complex matrix.
pub fn quaternion_as_complex(q: &[Scalar], n: usize, l0: usize) -> KMatrix {
    let alpha = vec![q[0].clone(), q[1].clone()];
    let beta = vec![q[2].clone(), q[3].clone()];
    let neg_beta: Vec<Scalar> = beta.iter().map(|c| -c).collect();
    KMatrix::new(Field::C, n)
        .set(l0, l0, alpha.clone())
        .set(l0, l0 + 1, neg_beta)
        .set(l0 + 1, l0, Field::conj(&beta))
        .set(l0 + 1, l0 + 1, Field::conj(&alpha))
}

/// The three quaternion units `i, j, k` as coefficient vectors.
pub fn imaginary_units() -> [Vec<Scalar>; 3] {
    [Field::H.unit(1), Field::H.unit(2), Field::H.unit(3)]
}

/// Basis of the maximal `so(3)` in `sp(2)`, conjugated by `diag(sqrt 3, 1)` so
/// every entry is rational. The result lies in `sp(2)` relative to
/// `diag(1/3, 1)`:
///
/// `diag(3i/2, i/2)`, `[[0, 3/2], [-1/2, j]]`, `[[0, 3i/2], [i/2, k]]`.
///
/// `n >= 2` is the quaternionic size of the ambient matrices.
pub fn so3max_generators(n: usize) -> Vec<Matrix> {
    let h = Field::H;
    let q = |a: i64, b: i64, c: i64, d: i64, den: i64| -> Vec<Scalar> {
        vec![scalar::frac(a, den), scalar::frac(b, den), scalar::frac(c, den), scalar::frac(d, den)]
    };
    vec![
        KMatrix::new(h, n).set(0, 0, q(0, 3, 0, 0, 2)).set(1, 1, q(0, 1, 0, 0, 2)).realify(),
        KMatrix::new(h, n).set(0, 1, q(3, 0, 0, 0, 2)).set(1, 0, q(-1, 0, 0, 0, 2)).set(1, 1, q(0, 0, 1, 0, 1)).realify(),
        KMatrix::new(h, n).set(0, 1, q(0, 3, 0, 0, 2)).set(1, 0, q(0, 1, 0, 0, 2)).set(1, 1, q(0, 0, 0, 1, 1)).realify(),
    ]
}

/// Weights of the rational model: `(1/3, 1, ..., 1)`.
pub fn so3max_weights(n: usize) -> Vec<Scalar> {
    let mut w = ones(n);
    w[0] = scalar::frac(1, 3);
    w
}

/// `sp(2)` relative to `diag(1/3, 1)` with its maximal `so(3)` coordinates.
pub fn so3max_sp2() -> Result<(LieAlgebra, crate::linalg::Subspace), AlgebraError> {
    let g = unitary_algebra(Field::H, &so3max_weights(2))?.renamed("sp(2)_H");
    let s = g.span_of(&so3max_generators(2))?;
    if !g.is_closed(&s) {
        return Err(AlgebraError::NotClosed("so(3)_max".into()));
    }
    Ok((g, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(build_classical(Family::So, 3).unwrap().dim(), 3);
        let sp2 = build_classical(Family::Sp, 2).unwrap();
        assert_eq!(sp2.dim(), 10);
        assert_eq!(sp2.matrix_size(), 8);
        let su3 = build_classical(Family::Su, 3).unwrap();
        assert_eq!(su3.dim(), 8);
        for i in 0..8 {
            assert!(scalar::is_positive(&su3.gram()[(i, i)]));
        }
        assert_eq!(build_classical(Family::So, 1).unwrap().dim(), 0);
        assert!(matches!(build_classical(Family::U, 0), Err(AlgebraError::InvalidParameter(_))));
    }

    #[test]
    fn quaternion_to_complex_is_multiplicative() {
        let h = CompositionAlgebra::quaternions();
        let p = vec![scalar::int(1), scalar::int(2), scalar::frac(-1, 2), scalar::int(3)];
        let q = vec![scalar::int(0), scalar::int(-1), scalar::int(4), scalar::frac(1, 3)];
        let pq = h.mul(&p, &q);
        let lhs = quaternion_as_complex(&pq, 2, 0).realify();
        let rhs = quaternion_as_complex(&p, 2, 0).realify().mul(&quaternion_as_complex(&q, 2, 0).realify());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn so3max_closes() {
        let (g, s) = so3max_sp2().unwrap();
        assert_eq!(s.dim(), 3);
        g.verify_invariants().unwrap();
    }
}
