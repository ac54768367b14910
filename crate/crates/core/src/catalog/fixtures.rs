//! Triples that are not plain block layouts: exceptional algebras, the
//! maximal `so(3)`, quaternionic embeddings into unitary algebras, and the
//! negative fixtures.

use std::sync::Arc;

use num::Zero;

use super::CatalogError;
use crate::algebra::classical::{
    imaginary_units, skew_hermitian_basis_units, so3max_generators, so3max_weights, unitary_algebra, Field, KMatrix,
};
use crate::algebra::embed::{direct_sum, pad};
use crate::algebra::models::{g2, spin7_spinor, spin8_in_f4, spin9_in_f4, f4, su2_in_g2, su3_in_g2};
use crate::algebra::{build_classical, stabilizer_subalgebra, Family, LieAlgebra};
use crate::linalg::matrix::{unit_vec, Matrix};
use crate::linalg::scalar::{frac, int};
use crate::linalg::{Scalar, Subspace};
use crate::triple::{make_triple, Hints, NestedTriple, ScriptedFamily, Tags};

fn span(g: &LieAlgebra, mats: &[Matrix]) -> Result<Subspace, CatalogError> {
    Ok(g.span_of(mats)?)
}

fn triple(
    id: &str,
    g: LieAlgebra,
    k: &[Matrix],
    h: &[Matrix],
    tags: Tags,
) -> Result<NestedTriple, CatalogError> {
    let ks = span(&g, k)?;
    let hs = span(&g, h)?;
    Ok(make_triple(id, Arc::new(g), ks, hs)?.with_tags(tags))
}

/// A quaternion as a realified `1 x 1` matrix.
fn quat(q: &[Scalar]) -> Matrix {
    KMatrix::new(Field::H, 1).set(0, 0, q.to_vec()).realify()
}

/// The complex `2n x 2n` matrix of a realified quaternionic `n x n` matrix,
/// entrywise `a + bi + (c + di) j -> [[a + bi, -(c + di)], [c - di, a - bi]]`,
/// realified and placed at complex offset `offset` in size `total`.
pub fn complexify(m: &Matrix, n: usize, total: usize, offset: usize) -> Matrix {
    let mut out = KMatrix::new(Field::C, total);
    for l in 0..n {
        for c in 0..n {
            let q: Vec<Scalar> = (0..4).map(|r| m[(4 * l + r, 4 * c)].clone()).collect();
            if q.iter().all(|x| x.is_zero()) {
                continue;
            }
            let alpha = vec![q[0].clone(), q[1].clone()];
            let beta = vec![q[2].clone(), q[3].clone()];
            let (r0, c0) = (offset + 2 * l, offset + 2 * c);
            out = out
                .set(r0, c0, alpha.clone())
                .set(r0, c0 + 1, vec![-beta[0].clone(), -beta[1].clone()])
                .set(r0 + 1, c0, Field::conj(&beta))
                .set(r0 + 1, c0 + 1, Field::conj(&alpha));
        }
    }
    out.realify()
}

/// `su(3) ⊂ g2 ⊂ so(7)`.
pub fn g2_in_so7(id: &str) -> Result<NestedTriple, CatalogError> {
    let g = build_classical(Family::So, 7)?;
    let k = g2().basis().to_vec();
    let h = g2().matrices_of(su3_in_g2()?.space());
    triple(id, g, &k, &h, Tags::new(5, 6))
}

/// `su(2) ⊂ su(3) ⊂ g2`, or `u(2) ⊂ su(3) ⊂ g2` when `enlarged`.
pub fn su3_in_g2_triple(id: &str, enlarged: bool) -> Result<NestedTriple, CatalogError> {
    let g = g2().clone();
    let k = su3_in_g2()?.into_space();
    let mut h = su2_in_g2()?.into_space();
    let mut tags = Tags::new(6, 2);
    if enlarged {
        let circle = g.centralizer(&k, &h.basis_vecs());
        h = h.sum(&circle)?;
        tags = Tags::new(6, 7);
    }
    Ok(make_triple(id, Arc::new(g), k, h)?.with_tags(tags))
}

/// `spin(8) ⊂ spin(9) ⊂ f4`.
pub fn spin9_in_f4_triple(id: &str) -> Result<NestedTriple, CatalogError> {
    let g = f4().clone();
    let k = spin9_in_f4()?.into_space();
    let h = spin8_in_f4()?.into_space();
    Ok(make_triple(id, Arc::new(g), k, h)?.with_tags(Tags::new(10, 1)))
}

/// `sp(2)` relative to `diag(1/3, 1)`, padded to quaternionic size `n`.
fn weighted_sp2(n: usize) -> Vec<Matrix> {
    unitary_algebra(Field::H, &so3max_weights(2)).expect("positive weights").basis().iter().map(|m| pad(m, 0, 4 * (n - 2))).collect()
}

fn sp1_at(n: usize, index: usize) -> Vec<Matrix> {
    imaginary_units()
        .iter()
        .map(|u| KMatrix::new(Field::H, n).set(index, index, u.clone()).realify())
        .collect()
}

/// `so(3)_max ⊕ sp(1) ⊂ sp(2) ⊕ sp(1) ⊂ sp(3)`, in the rational model
/// relative to `diag(1/3, 1, 1)`. The hinted vector is the `(1, 0)` entry of
/// the column, `E_02 - (1/3) E_20`.
pub fn so3max_in_sp3(id: &str) -> Result<NestedTriple, CatalogError> {
    let g = unitary_algebra(Field::H, &so3max_weights(3))?.renamed("sp(3)_H");
    let mut k = weighted_sp2(3);
    k.extend(sp1_at(3, 2));
    let mut h = so3max_generators(3);
    h.extend(sp1_at(3, 2));
    let a = KMatrix::new(Field::H, 3).set(0, 2, Field::H.unit(0)).set(2, 0, vec![frac(-1, 3), int(0), int(0), int(0)]).realify();
    let hint = g.coords(&a).ok_or_else(|| CatalogError::Build("hinted vector is not in sp(3)".into()))?;
    let t = triple(id, g, &k, &h, Tags::new(9, 11))?;
    Ok(t.with_hints(Hints { fat_candidates: vec![hint], ..Hints::default() }))
}

/// `so(2) ⊂ so(3)_max ⊂ sp(2)`, with the hint `(sp(2) ⊖ u(2)) ∩ p`.
pub fn so3max_in_sp2(id: &str) -> Result<NestedTriple, CatalogError> {
    let w = so3max_weights(2);
    let g = unitary_algebra(Field::H, &w)?.renamed("sp(2)_H");
    let k = so3max_generators(2);
    let h = vec![k[0].clone()];
    let u2 = span(&g, &skew_hermitian_basis_units(Field::H, &w, &[1], &[0, 1]))?;
    let l = g.complement(&u2, &g.full())?;
    let t = triple(id, g, &k, &h, Tags::new(11, 1))?;
    let hint = l.intersect(t.p())?;
    Ok(t.with_hints(Hints { non_strongly_fat: Some(hint), ..Hints::default() }))
}

/// `sp(2) ⊂ sp(2) ⊕ u(1) ⊂ su(5)`, with `sp(2)` acting on `C^4` and the
/// circle `diag(i, i, i, i, -4i)`.
pub fn sp2_in_su5(id: &str) -> Result<NestedTriple, CatalogError> {
    let g = build_classical(Family::Su, 5)?;
    let sp2 = build_classical(Family::Sp, 2)?;
    let h: Vec<Matrix> = sp2.basis().iter().map(|m| complexify(m, 2, 5, 0)).collect();
    let i = Field::C.unit(1);
    let mut circle = KMatrix::new(Field::C, 5);
    for l in 0..4 {
        circle = circle.set(l, l, i.clone());
    }
    let circle = circle.set(4, 4, vec![int(0), int(-4)]).realify();
    let mut k = h.clone();
    k.push(circle);
    triple(id, g, &k, &h, Tags::new(12, 1))
}

/// `sp(n) ⊕ span{(i, i)} ⊂ sp(n) ⊕ Δsp(1) ⊂ sp(n+1) ⊕ sp(1)`, with the
/// witness family in the column `H^n`.
pub fn delta_sp1(id: &str, n: usize) -> Result<NestedTriple, CatalogError> {
    let sp = build_classical(Family::Sp, n + 1)?;
    let sp1 = build_classical(Family::Sp, 1)?;
    let g = direct_sum(&sp, &sp1)?;
    let (big, small) = (4 * (n + 1), 4);
    let inner = |m: &Matrix| pad(m, 0, small);
    let outer = |m: &Matrix| pad(m, big, 0);
    let spn: Vec<Matrix> = build_classical(Family::Sp, n)?.basis().iter().map(|m| inner(&pad(m, 0, 4))).collect();
    let units = imaginary_units();
    let delta: Vec<Matrix> = units
        .iter()
        .map(|u| inner(&KMatrix::new(Field::H, n + 1).set(n, n, u.clone()).realify()).add(&outer(&quat(u))))
        .collect();
    let mut k = spn.clone();
    k.extend(delta.iter().cloned());
    let mut h = spn;
    h.push(delta[0].clone());
    let gs = Arc::new(g);
    let ks = span(&gs, &k)?;
    let hs = span(&gs, &h)?;
    let t = make_triple(id, gs.clone(), ks, hs)?.with_tags(Tags::new(16, 1));
    let column: Vec<Matrix> = (0..n)
        .flat_map(|l| {
            (0..4).map(move |u| {
                let x = unit_vec(4, u);
                let mx: Vec<Scalar> = Field::conj(&x).iter().map(|c| -c).collect();
                KMatrix::new(Field::H, n + 1).set(l, n, x).set(n, l, mx).realify()
            })
        })
        .map(|m| inner(&m))
        .collect();
    let column = span(&gs, &column)?;
    let rotation = gs.coords(&inner(&KMatrix::new(Field::H, n + 1).set(n, n, units[0].clone()).realify())).expect("in g");
    let outer_units: Vec<Vec<Scalar>> = units[1..].iter().map(|u| gs.coords(&outer(&quat(u))).expect("in g")).collect();
    let family = ScriptedFamily { column, rotation, outer: outer_units };
    Ok(t.with_hints(Hints { family: Some(family), ..Hints::default() }))
}

/// `g2 ⊂ spin(7) ⊂ so(9)`, with `spin(7)` acting on `R^8` by spinors.
pub fn spin7_in_so9(id: &str) -> Result<NestedTriple, CatalogError> {
    let g = build_classical(Family::So, 9)?;
    let spin7 = spin7_spinor()?;
    let stab = stabilizer_subalgebra(&spin7, &[unit_vec(8, 0)])?;
    let k: Vec<Matrix> = spin7.basis().iter().map(|m| pad(m, 0, 1)).collect();
    let h: Vec<Matrix> = spin7.matrices_of(stab.space()).iter().map(|m| pad(m, 0, 1)).collect();
    triple(id, g, &k, &h, Tags::new(4, 5))
}

/// `Δsu(2) ⊂ Δu(2) ⊂ su(3) ⊕ sp(1)`.
pub fn delta_u2(id: &str) -> Result<NestedTriple, CatalogError> {
    let su3 = build_classical(Family::Su, 3)?;
    let sp1 = build_classical(Family::Sp, 1)?;
    let g = direct_sum(&su3, &sp1)?;
    let units = imaginary_units();
    let diag: Vec<Matrix> = units
        .iter()
        .map(|u| {
            let c = crate::algebra::classical::quaternion_as_complex(u, 3, 0).realify();
            Matrix::block_diag(&[&c, &quat(u)])
        })
        .collect();
    let center = KMatrix::new(Field::C, 3)
        .set(0, 0, vec![int(0), int(1)])
        .set(1, 1, vec![int(0), int(1)])
        .set(2, 2, vec![int(0), int(-2)])
        .realify();
    let mut k = diag.clone();
    k.push(pad(&center, 0, 4));
    triple(id, g, &k, &diag, Tags::new(13, 1))
}

/// `span{diag(i, -i, 0)} ⊂ su(2) ⊂ su(3)`.
pub fn su2_in_su3(id: &str) -> Result<NestedTriple, CatalogError> {
    let g = build_classical(Family::Su, 3)?;
    let k: Vec<Matrix> = build_classical(Family::Su, 2)?.basis().iter().map(|m| pad(m, 0, 2)).collect();
    let h = KMatrix::new(Field::C, 3).set(0, 0, vec![int(0), int(1)]).set(1, 1, vec![int(0), int(-1)]).realify();
    triple(id, g, &k, &[h], Tags::new(2, 1))
}

/// `u(1) ⊂ sp(1) ⊂ sp(2)` with both on the second index.
pub fn sp1_in_sp2(id: &str) -> Result<NestedTriple, CatalogError> {
    let g = build_classical(Family::Sp, 2)?;
    let k = sp1_at(2, 1);
    let h = vec![k[0].clone()];
    triple(id, g, &k, &h, Tags::new(3, 1))
}

/// `su(2) ⊂ u(2) ⊂ u(3)` on the last two indices.
pub fn u2_in_u3(id: &str) -> Result<NestedTriple, CatalogError> {
    let g = build_classical(Family::U, 3)?;
    let k: Vec<Matrix> = build_classical(Family::U, 2)?.basis().iter().map(|m| pad(m, 2, 0)).collect();
    let h: Vec<Matrix> = build_classical(Family::Su, 2)?.basis().iter().map(|m| pad(m, 2, 0)).collect();
    triple(id, g, &k, &h, Tags::new(14, 1))
}

/// `sp(1) ⊂ sp(1) ⊕ Δu(1) ⊂ sp(2) ⊕ u(1)`, the circle pairing `i` at the
/// first index with the extra factor.
pub fn sp1_circle(id: &str) -> Result<NestedTriple, CatalogError> {
    let sp2 = build_classical(Family::Sp, 2)?;
    let u1 = build_classical(Family::U, 1)?;
    let g = direct_sum(&sp2, &u1)?;
    let h: Vec<Matrix> = sp1_at(2, 1).iter().map(|m| pad(m, 0, 2)).collect();
    let i0 = KMatrix::new(Field::H, 2).set(0, 0, Field::H.unit(1)).realify();
    let ic = KMatrix::new(Field::C, 1).set(0, 0, Field::C.unit(1)).realify();
    let mut k = h.clone();
    k.push(Matrix::block_diag(&[&i0, &ic]));
    triple(id, g, &k, &h, Tags::new(15, 1))
}

/// `so(3) ⊕ so(2) ⊂ so(3) ⊕ so(3) ⊂ so(4) ⊕ so(3)`: `p` lies in the first
/// ideal and part of `m` in the second.
pub fn split_ideal(id: &str) -> Result<NestedTriple, CatalogError> {
    let so4 = build_classical(Family::So, 4)?;
    let so3 = build_classical(Family::So, 3)?;
    let g = direct_sum(&so4, &so3)?;
    let first: Vec<Matrix> = so3.basis().iter().map(|m| pad(m, 0, 4)).collect();
    let second: Vec<Matrix> = so3.basis().iter().map(|m| pad(m, 4, 0)).collect();
    let rot = {
        let mut r = Matrix::zeros(3, 3);
        r[(0, 1)] = int(1);
        r[(1, 0)] = int(-1);
        pad(&r, 4, 0)
    };
    let mut k = first.clone();
    k.extend(second);
    let mut h = first;
    h.push(rot);
    triple(id, g, &k, &h, Tags::default())
}

/// The circle in `su(3)` centralizing `su(2)` inside `g2`, in `g2`
/// coordinates.
pub fn u1_commuting_with_su2(t: &NestedTriple) -> Vec<Scalar> {
    let c = t.g().centralizer(t.k(), &t.h().basis_vecs());
    c.basis_vecs().into_iter().next().expect("one-dimensional centralizer")
}
