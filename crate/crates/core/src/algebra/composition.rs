//! Quaternions and octonions as rational structure-constant tables.
//!
//! Octonions come from Cayley-Dickson doubling of the quaternions:
//! `(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))`.
//! Basis: `e0 = 1`, `e1, e2, e3 = i, j, k`, and `e(4+t) = (0, u_t)` for
//! `u = (1, i, j, k)`. Under this table `e1 e2 = e3`, `e1 e4 = e5`,
//! `e2 e4 = e6`, `e3 e4 = e7`.

use num::Zero;

use super::{AlgebraError, BilinearProduct};
use crate::linalg::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionAlgebra {
    dim: usize,
    /// `table[a][b] = (c, s)` means `e_a e_b = s e_c`.
    table: Vec<Vec<(usize, i8)>>,
}

fn quaternion_unit(a: usize, b: usize) -> (usize, i8) {
    // Rows/cols: 1, i, j, k.
    const T: [[(usize, i8); 4]; 4] = [
        [(0, 1), (1, 1), (2, 1), (3, 1)],
        [(1, 1), (0, -1), (3, 1), (2, -1)],
        [(2, 1), (3, -1), (0, -1), (1, 1)],
        [(3, 1), (2, 1), (1, -1), (0, -1)],
    ];
    T[a][b]
}

impl CompositionAlgebra {
    pub fn new(dim: usize) -> Result<Self, AlgebraError> {
        match dim {
            4 => Ok(Self::quaternions()),
            8 => Ok(Self::octonions()),
            _ => Err(AlgebraError::InvalidParameter(format!("composition algebra of dim {dim}"))),
        }
    }

    pub fn quaternions() -> Self {
        let table = (0..4).map(|a| (0..4).map(|b| quaternion_unit(a, b)).collect()).collect();
        CompositionAlgebra { dim: 4, table }
    }

    pub fn octonions() -> Self {
        let h = Self::quaternions();
        let mut table = vec![vec![(0, 0i8); 8]; 8];
        for x in 0..8 {
            for y in 0..8 {
                let mut ex = vec![Scalar::zero(); 8];
                ex[x] = scalar::one();
                let mut ey = vec![Scalar::zero(); 8];
                ey[y] = scalar::one();
                let p = cayley_dickson(&h, &ex, &ey);
                let (c, v) = p.iter().enumerate().find(|(_, v)| !v.is_zero()).expect("unit product is nonzero");
                table[x][y] = (c, if *v == scalar::one() { 1 } else { -1 });
            }
        }
        CompositionAlgebra { dim: 8, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit_product(&self, a: usize, b: usize) -> (usize, i8) {
        self.table[a][b]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let (c, s) = self.table[a][b];
                let t = xa * yb;
                if s > 0 {
                    out[c] += t;
                } else {
                    out[c] -= t;
                }
            }
        }
        out
    }

    pub fn conj(&self, x: &[Scalar]) -> Vec<Scalar> {
        x.iter().enumerate().map(|(i, v)| if i == 0 { v.clone() } else { -v }).collect()
    }

    pub fn norm(&self, x: &[Scalar]) -> Scalar {
        x.iter().map(|v| v * v).sum()
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        crate::linalg::matrix::unit_vec(self.dim, i)
    }

    /// `(xy)z - x(yz)`.
    pub fn associator(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        let l = self.mul(&self.mul(x, y), z);
        let r = self.mul(x, &self.mul(y, z));
        crate::linalg::matrix::vec_sub(&l, &r)
    }

    /// Unital, multiplicative norm on basis products and sums of pairs, alternative on basis pairs.
    pub fn verify_invariants(&self) -> Result<(), AlgebraError> {
        let n = self.dim;
        let one = self.unit(0);
        for a in 0..n {
            let ea = self.unit(a);
            if self.mul(&one, &ea) != ea || self.mul(&ea, &one) != ea {
                return Err(AlgebraError::InvariantFailed(format!("e0 is not a unit for e{a}")));
            }
            for b in 0..n {
                let eb = self.unit(b);
                let x: Vec<Scalar> = crate::linalg::matrix::vec_add(&ea, &eb);
                let y: Vec<Scalar> = crate::linalg::matrix::vec_sub(&eb, &self.unit((a + 1) % n));
                if self.norm(&self.mul(&x, &y)) != self.norm(&x) * self.norm(&y) {
                    return Err(AlgebraError::InvariantFailed(format!("norm not multiplicative at ({a},{b})")));
                }
                if self.norm(&self.mul(&ea, &eb)) != scalar::one() {
                    return Err(AlgebraError::InvariantFailed(format!("|e{a} e{b}| != 1")));
                }
                let left = self.mul(&ea, &self.mul(&ea, &eb));
                let right = self.mul(&self.mul(&ea, &ea), &eb);
                let left2 = self.mul(&self.mul(&eb, &ea), &ea);
                let right2 = self.mul(&eb, &self.mul(&ea, &ea));
                if left != right || left2 != right2 {
                    return Err(AlgebraError::InvariantFailed(format!("not alternative at ({a},{b})")));
                }
            }
        }
        Ok(())
    }
}

impl BilinearProduct for CompositionAlgebra {
    fn dim(&self) -> usize {
        self.dim
    }

    fn product(&self, a: usize, b: usize) -> Vec<(usize, Scalar)> {
        let (c, s) = self.table[a][b];
        vec![(c, scalar::int(s as i64))]
    }
}

fn cayley_dickson(h: &CompositionAlgebra, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let (a, b) = x.split_at(4);
    let (c, d) = y.split_at(4);
    let first = crate::linalg::matrix::vec_sub(&h.mul(a, c), &h.mul(&h.conj(d), b));
    let second = crate::linalg::matrix::vec_add(&h.mul(d, a), &h.mul(b, &h.conj(c)));
    first.into_iter().chain(second).collect()
}
