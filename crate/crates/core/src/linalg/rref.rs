//! Echelon forms.
//!
//! Dense inputs go through fraction-free Gauss-Jordan elimination over the
//! integers (Bareiss division keeps every intermediate entry a minor of the
//! scaled input), followed by a single normalization back to rationals.
//! Tall sparse systems use [`SparseEliminator`], which never densifies rows.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use super::matrix::Matrix;
use super::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Nonzero rows only.
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

fn lcm_of_denoms(row: &[Scalar]) -> BigInt {
    row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Reduced row echelon form with zero rows dropped.
pub fn rref(m: &Matrix) -> Rref {
    let rows = m.rows();
    let cols = m.cols();
    // Integer rows; zero rows are discarded up front.
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let r = m.row(i);
        if r.iter().all(Zero::is_zero) {
            continue;
        }
        let l = lcm_of_denoms(r);
        let mut ints: Vec<BigInt> = r.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            for x in &mut ints {
                *x /= &g;
            }
        }
        a.push(ints);
    }

    let n = a.len();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        let (top, rest) = a.split_at_mut(r);
        let (prow, bottom) = rest.split_first_mut().unwrap();
        for row in top.iter_mut().chain(bottom.iter_mut()) {
            let f = row[c].clone();
            for j in 0..cols {
                let v = &piv * &row[j] - &f * &prow[j];
                if v.is_zero() {
                    row[j] = BigInt::zero();
                } else {
                    debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                    row[j] = v / &prev;
                }
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }

    let rank = r;
    let mut data = Vec::with_capacity(rank * cols);
    for (i, &pc) in pivots.iter().enumerate() {
        let d = a[i][pc].clone();
        for j in 0..cols {
            data.push(BigRational::new(a[i][j].clone(), d.clone()));
        }
    }
    Rref { matrix: Matrix::from_vec(rank, cols, data), rank, pivots }
}

pub fn rank(m: &Matrix) -> usize {
    if m.rows() > 4 * m.cols().max(1) {
        let mut e = SparseEliminator::new(m.cols());
        for i in 0..m.rows() {
            e.push_dense(m.row(i));
        }
        e.rank()
    } else {
        rref(m).rank
    }
}

/// Basis of `{v : M v = 0}` as rows, in the standard free-variable form.
pub fn nullspace_rows(m: &Matrix) -> Vec<Vec<Scalar>> {
    let cols = m.cols();
    let red = if m.rows() > 2 * cols.max(1) {
        let mut e = SparseEliminator::new(cols);
        for i in 0..m.rows() {
            e.push_dense(m.row(i));
        }
        e.into_rref()
    } else {
        rref(m)
    };
    nullspace_from_rref(&red, cols)
}

pub fn nullspace_from_rref(red: &Rref, cols: usize) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; cols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (i, &p) in red.pivots.iter().enumerate() {
            v[p] = -red.matrix[(i, free)].clone();
        }
        out.push(v);
    }
    out
}

pub type SparseRow = Vec<(usize, Scalar)>;

/// Incremental row echelon reducer over sparse rational rows.
///
/// Rows are reduced against existing pivots as they arrive, so only the
/// independent part of a large constraint system is ever stored.
pub struct SparseEliminator {
    cols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl SparseEliminator {
    pub fn new(cols: usize) -> Self {
        SparseEliminator { cols, pivots: BTreeMap::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn push_dense(&mut self, row: &[Scalar]) -> bool {
        let sparse: SparseRow = row
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.clone()))
            .collect();
        self.push(sparse)
    }

    /// Adds a row (sorted by column, no explicit zeros). Returns true if it raised the rank.
    pub fn push(&mut self, mut row: SparseRow) -> bool {
        loop {
            let Some((c, v)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&c) {
                Some(prow) => row = axpy_sparse(&row, &(-v), prow),
                None => {
                    let inv = Scalar::one() / &v;
                    let normalized: SparseRow = row.into_iter().map(|(j, x)| (j, x * &inv)).collect();
                    self.pivots.insert(c, normalized);
                    return true;
                }
            }
        }
    }

    /// Back-substitutes into reduced row echelon form.
    pub fn into_rref(self) -> Rref {
        let cols = self.cols;
        let keys: Vec<usize> = self.pivots.keys().copied().collect();
        let mut reduced: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for &c in keys.iter().rev() {
            let mut row = self.pivots[&c].clone();
            // Clear every later pivot column using already-reduced rows.
            loop {
                let hit = row
                    .iter()
                    .find(|(j, _)| *j != c && reduced.contains_key(j))
                    .map(|(j, x)| (*j, x.clone()));
                match hit {
                    Some((j, x)) => row = axpy_sparse(&row, &(-x), &reduced[&j]),
                    None => break,
                }
            }
            reduced.insert(c, row);
        }
        let rank = reduced.len();
        let mut m = Matrix::zeros(rank, cols);
        let mut pivots = Vec::with_capacity(rank);
        for (i, (c, row)) in reduced.into_iter().enumerate() {
            pivots.push(c);
            for (j, x) in row {
                m[(i, j)] = x;
            }
        }
        Rref { matrix: m, rank, pivots }
    }
}

fn axpy_sparse(a: &SparseRow, c: &Scalar, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |x| x.0);
        let cb = b.get(j).map_or(usize::MAX, |x| x.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + c * &b[j].1;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Determinant-free positive definiteness test: symmetric elimination without
/// pivoting must produce only positive pivots.
pub fn is_positive_definite(g: &Matrix) -> bool {
    assert!(g.is_square());
    let n = g.rows();
    let mut a = g.clone();
    for k in 0..n {
        let p = a[(k, k)].clone();
        if !p.is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = &a[(i, k)] / &p;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = &f * &a[(k, j)];
                a[(i, j)] -= v;
            }
        }
    }
    true
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    assert!(m.is_square());
    let n = m.rows();
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n + i)] = Scalar::one();
    }
    let red = rref(&aug);
    if red.rank < n || red.pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (n..2 * n).collect();
    Some(red.matrix.submatrix(&rows, &cols))
}

/// Solves `x A = b` for a row vector `x`, where the rows of `A` are independent.
pub fn solve_row_combination(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    // [A^T | b]: columns of the system are the rows of A.
    let n = a.rows();
    let mut sys = Matrix::zeros(a.cols(), n + 1);
    for i in 0..n {
        for j in 0..a.cols() {
            sys[(j, i)] = a[(i, j)].clone();
        }
    }
    for (j, x) in b.iter().enumerate() {
        sys[(j, n)] = x.clone();
    }
    let red = if sys.rows() > 2 * (n + 1) {
        let mut e = SparseEliminator::new(n + 1);
        for i in 0..sys.rows() {
            e.push_dense(sys.row(i));
        }
        e.into_rref()
    } else {
        rref(&sys)
    };
    if red.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Scalar::zero(); n];
    for (i, &p) in red.pivots.iter().enumerate() {
        x[p] = red.matrix[(i, n)].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{frac, int};

    #[test]
    fn identity_is_its_own_rref() {
        let r = rref(&Matrix::identity(3));
        assert_eq!(r.matrix, Matrix::identity(3));
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn zero_matrix() {
        let r = rref(&Matrix::zeros(2, 4));
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
        assert_eq!(r.matrix.rows(), 0);
    }

    #[test]
    fn proportional_rows() {
        let r = rref(&Matrix::from_i64(2, 2, &[1, 2, 2, 4]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.matrix, Matrix::from_i64(1, 2, &[1, 2]));
    }

    #[test]
    fn fractions_are_normalized() {
        let m = Matrix::from_vec(2, 3, vec![frac(1, 2), frac(1, 3), int(0), int(2), int(0), frac(-1, 5)]);
        let r = rref(&m);
        assert_eq!(r.rank, 2);
        assert_eq!(r.matrix[(0, 0)], int(1));
        assert_eq!(r.matrix[(1, 1)], int(1));
        assert_eq!(r.matrix[(0, 1)], int(0));
    }

    #[test]
    fn sparse_matches_dense() {
        let m = Matrix::from_i64(5, 4, &[1, 2, 0, 3, 2, 4, 1, 0, 0, 0, 1, -6, 3, 6, 1, 3, 1, 1, 1, 1]);
        let mut e = SparseEliminator::new(4);
        for i in 0..5 {
            e.push_dense(m.row(i));
        }
        assert_eq!(e.into_rref(), rref(&m));
    }

    #[test]
    fn inverse_and_pd() {
        let g = Matrix::from_i64(2, 2, &[2, 1, 1, 2]);
        assert!(is_positive_definite(&g));
        let inv = inverse(&g).unwrap();
        assert_eq!(g.mul(&inv), Matrix::identity(2));
        assert!(!is_positive_definite(&Matrix::from_i64(2, 2, &[1, 2, 2, 1])));
        assert!(inverse(&Matrix::from_i64(2, 2, &[1, 2, 2, 4])).is_none());
    }
}
