use std::collections::BTreeMap;

use num::Zero;

use super::lie::{kernel_on, LieAlgebra, Subalgebra};
use super::{AlgebraError, BilinearProduct};
use crate::linalg::matrix::Matrix;
use crate::linalg::rref::{nullspace_from_rref, SparseEliminator};
use crate::linalg::scalar::Scalar;
use crate::linalg::subspace::Subspace;

/// `{D : D(xy) = D(x) y + x D(y)}` on an algebra with explicit structure constants.
///
/// With `restrict_to`, each derivation is written in the basis of that
/// (necessarily invariant) subspace; otherwise it acts on the whole algebra.
pub fn derivation_algebra(
    name: &str,
    alg: &dyn BilinearProduct,
    restrict_to: Option<&Subspace>,
) -> Result<LieAlgebra, AlgebraError> {
    let n = alg.dim();
    let products: Vec<Vec<Vec<(usize, Scalar)>>> =
        (0..n).map(|a| (0..n).map(|b| alg.product(a, b)).collect()).collect();
    let mut elim = SparseEliminator::new(n * n);
    for a in 0..n {
        let b_start = if alg.is_commutative() { a } else { 0 };
        for b in b_start..n {
            let mut eqs: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); n];
            // D(e_a e_b): sum_c P_ab^c D_rc
            for (c, v) in &products[a][b] {
                for (r, eq) in eqs.iter_mut().enumerate() {
                    *eq.entry(r * n + c).or_insert_with(Scalar::zero) += v;
                }
            }
            // -(D e_a) e_b - e_a (D e_b)
            for s in 0..n {
                for (r, v) in &products[s][b] {
                    *eqs[*r].entry(s * n + a).or_insert_with(Scalar::zero) -= v;
                }
                for (r, v) in &products[a][s] {
                    *eqs[*r].entry(s * n + b).or_insert_with(Scalar::zero) -= v;
                }
            }
            for eq in eqs {
                let row: Vec<(usize, Scalar)> = eq.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !row.is_empty() {
                    elim.push(row);
                }
            }
        }
    }
    let red = elim.into_rref();
    let derivations: Vec<Matrix> = nullspace_from_rref(&red, n * n)
        .into_iter()
        .map(|v| Matrix::from_vec(n, n, v))
        .collect();
    for d in &derivations {
        verify_leibniz(alg, &products, d)?;
    }
    match restrict_to {
        None => LieAlgebra::from_matrices(name, n, &derivations),
        Some(s) => {
            let mut mats = Vec::with_capacity(derivations.len());
            for d in &derivations {
                mats.push(restrict_action(d, s)?);
            }
            LieAlgebra::from_matrices(name, s.dim(), &mats)
        }
    }
}

fn verify_leibniz(
    alg: &dyn BilinearProduct,
    products: &[Vec<Vec<(usize, Scalar)>>],
    d: &Matrix,
) -> Result<(), AlgebraError> {
    let n = alg.dim();
    let apply = |v: &[(usize, Scalar)]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); n];
        for (c, x) in v {
            for r in 0..n {
                let e = &d[(r, *c)];
                if !e.is_zero() {
                    out[r] += x * e;
                }
            }
        }
        out
    };
    let mul = |x: &[Scalar], b: usize, left: bool| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); n];
        for (s, xs) in x.iter().enumerate() {
            if xs.is_zero() {
                continue;
            }
            let p = if left { &products[s][b] } else { &products[b][s] };
            for (r, v) in p {
                out[*r] += xs * v;
            }
        }
        out
    };
    for a in 0..n {
        let da: Vec<Scalar> = (0..n).map(|r| d[(r, a)].clone()).collect();
        for b in 0..n {
            let db: Vec<Scalar> = (0..n).map(|r| d[(r, b)].clone()).collect();
            let lhs = apply(&products[a][b]);
            let rhs = crate::linalg::matrix::vec_add(&mul(&da, b, true), &mul(&db, a, false));
            if lhs != rhs {
                return Err(AlgebraError::InvariantFailed(format!("Leibniz rule fails at ({a},{b})")));
            }
        }
    }
    Ok(())
}

/// Matrix of `d` on an invariant subspace, in that subspace's canonical basis.
pub fn restrict_action(d: &Matrix, s: &Subspace) -> Result<Matrix, AlgebraError> {
    let k = s.dim();
    let mut out = Matrix::zeros(k, k);
    for (i, v) in s.basis_vecs().iter().enumerate() {
        let img = d.mul_vec(v);
        let c = s
            .coords(&img)
            .ok_or_else(|| AlgebraError::InvariantFailed("subspace is not invariant".into()))?;
        for (r, x) in c.into_iter().enumerate() {
            out[(r, i)] = x;
        }
    }
    Ok(out)
}

/// `{X in L : X v = 0 for all v in fixed}`, with `L` acting by its own matrices.
pub fn stabilizer_subalgebra(l: &LieAlgebra, fixed: &[Vec<Scalar>]) -> Result<Subalgebra, AlgebraError> {
    for v in fixed {
        if v.len() != l.matrix_size() {
            return Err(AlgebraError::ActionMissing);
        }
    }
    let d = l.dim();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for v in fixed {
        let images: Vec<Vec<Scalar>> = l.basis().iter().map(|b| b.mul_vec(v)).collect();
        for r in 0..l.matrix_size() {
            rows.push((0..d).map(|i| images[i][r].clone()).collect());
        }
    }
    let m = Matrix::from_rows(d, &rows);
    let space = kernel_on(&m, &l.full());
    Subalgebra::new(l, space)
}
