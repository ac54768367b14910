//! The exceptional Jordan algebra of 3x3 Hermitian octonion matrices.
//!
//! Basis (27): `E_11, E_22, E_33`, then for each slot `(0,1), (0,2), (1,2)`
//! and octonion unit `e_a` the matrix with `e_a` at the slot and `conj(e_a)`
//! at its mirror. Product `x o y = (xy + yx) / 2`.

use num::Zero;

use super::composition::CompositionAlgebra;
use super::{AlgebraError, BilinearProduct};
use crate::linalg::matrix::{vec_add, vec_sub};
use crate::linalg::scalar::{self, Scalar};

const SLOTS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

type OctMatrix = Vec<Vec<Vec<Scalar>>>;

#[derive(Clone, Debug)]
pub struct JordanAlgebraH3O {
    /// `table[a][b]` = coordinates of `x_a o x_b`, sparse.
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
}

fn zero_oct() -> Vec<Scalar> {
    vec![Scalar::zero(); 8]
}

impl JordanAlgebraH3O {
    pub const DIM: usize = 27;

    pub fn new() -> Self {
        let o = CompositionAlgebra::octonions();
        let mats: Vec<OctMatrix> = (0..Self::DIM).map(|a| basis_matrix(&o, a)).collect();
        let mut table = vec![vec![Vec::new(); Self::DIM]; Self::DIM];
        for a in 0..Self::DIM {
            for b in a..Self::DIM {
                let xy = mat_mul(&o, &mats[a], &mats[b]);
                let yx = mat_mul(&o, &mats[b], &mats[a]);
                let half = scalar::frac(1, 2);
                let mut sum = vec![vec![zero_oct(); 3]; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        sum[i][j] = vec_add(&xy[i][j], &yx[i][j]).iter().map(|c| c * &half).collect();
                    }
                }
                let c = decompose(&o, &sum).expect("Jordan product stays Hermitian");
                table[a][b] = c.clone();
                table[b][a] = c;
            }
        }
        JordanAlgebraH3O { table }
    }

    /// Index of the diagonal idempotent `E_ii`.
    pub fn diagonal(i: usize) -> usize {
        i
    }

    pub fn identity(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); Self::DIM];
        for i in 0..3 {
            v[i] = scalar::one();
        }
        v
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); Self::DIM];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let t = xa * yb;
                for (c, v) in &self.table[a][b] {
                    out[*c] += &t * v;
                }
            }
        }
        out
    }

    /// Commutativity, unit, and the Jordan identity on all basis pairs.
    pub fn verify_invariants(&self) -> Result<(), AlgebraError> {
        let n = Self::DIM;
        let one = self.identity();
        let unit = |i| crate::linalg::matrix::unit_vec(n, i);
        for a in 0..n {
            let x = unit(a);
            if self.mul(&one, &x) != x {
                return Err(AlgebraError::InvariantFailed(format!("identity fails on x{a}")));
            }
            let x2 = self.mul(&x, &x);
            for b in 0..n {
                let y = unit(b);
                if self.mul(&x, &y) != self.mul(&y, &x) {
                    return Err(AlgebraError::InvariantFailed(format!("not commutative at ({a},{b})")));
                }
                let lhs = self.mul(&self.mul(&x2, &y), &x);
                let rhs = self.mul(&x2, &self.mul(&y, &x));
                if lhs != rhs {
                    return Err(AlgebraError::InvariantFailed(format!("Jordan identity fails at ({a},{b})")));
                }
            }
        }
        Ok(())
    }
}

impl Default for JordanAlgebraH3O {
    fn default() -> Self {
        Self::new()
    }
}

impl BilinearProduct for JordanAlgebraH3O {
    fn dim(&self) -> usize {
        Self::DIM
    }

    fn product(&self, a: usize, b: usize) -> Vec<(usize, Scalar)> {
        self.table[a][b].clone()
    }

    fn is_commutative(&self) -> bool {
        true
    }
}

fn basis_matrix(o: &CompositionAlgebra, a: usize) -> OctMatrix {
    let mut m = vec![vec![zero_oct(); 3]; 3];
    if a < 3 {
        m[a][a][0] = scalar::one();
    } else {
        let (i, j) = SLOTS[(a - 3) / 8];
        let u = o.unit((a - 3) % 8);
        m[j][i] = o.conj(&u);
        m[i][j] = u;
    }
    m
}

fn mat_mul(o: &CompositionAlgebra, x: &OctMatrix, y: &OctMatrix) -> OctMatrix {
    let mut out = vec![vec![zero_oct(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out[i][j] = vec_add(&out[i][j], &o.mul(&x[i][k], &y[k][j]));
            }
        }
    }
    out
}

fn decompose(o: &CompositionAlgebra, m: &OctMatrix) -> Option<Vec<(usize, Scalar)>> {
    let mut out = Vec::new();
    for i in 0..3 {
        if m[i][i][1..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        if !m[i][i][0].is_zero() {
            out.push((i, m[i][i][0].clone()));
        }
    }
    for (s, &(i, j)) in SLOTS.iter().enumerate() {
        if vec_sub(&m[j][i], &o.conj(&m[i][j])).iter().any(|c| !c.is_zero()) {
            return None;
        }
        for (u, c) in m[i][j].iter().enumerate() {
            if !c.is_zero() {
                out.push((3 + 8 * s + u, c.clone()));
            }
        }
    }
    out.sort_by_key(|p| p.0);
    Some(out)
}
