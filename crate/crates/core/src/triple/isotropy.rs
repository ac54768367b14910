//! The isotropy representation of `k` on `p`: trivial factors, invariant
//! splittings, dimension bounds and transitivity evidence.

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::rng;
use super::NestedTriple;
use crate::linalg::matrix::{vec_is_zero, Matrix};
use crate::linalg::rref::{self, nullspace_from_rref, SparseEliminator};
use crate::linalg::{rank, Scalar, Subspace};

/// `{W ∈ p : [Y, W] = 0 for all Y ∈ k}`, when nonzero.
pub fn trivial_factor(t: &NestedTriple) -> Option<Subspace> {
    let fixed = t.g().centralizer(t.p(), &t.k().basis_vecs());
    (!fixed.is_zero()).then_some(fixed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub space: Subspace,
    /// The symmetric part of the commutant is one-dimensional.
    pub certified: bool,
}

fn k_ads(t: &NestedTriple) -> Vec<Matrix> {
    t.k().basis_vecs().iter().map(|y| t.ad(y)).collect()
}

/// Smallest `ad(k)`-invariant subspace containing `v`.
fn invariant_span(ads: &[Matrix], v: &[Scalar]) -> Subspace {
    let mut span = Subspace::span(v.len(), &[v.to_vec()]);
    let mut frontier = vec![v.to_vec()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for ad in ads {
                let img = ad.mul_vec(w);
                if !vec_is_zero(&img) && !span.contains(&img) {
                    let mut vecs = span.basis_vecs();
                    vecs.push(img.clone());
                    span = Subspace::span(v.len(), &vecs);
                    next.push(img);
                }
            }
        }
        frontier = next;
    }
    span
}

/// Matrices of `ad(Y)` on an invariant subspace, in its basis coordinates.
fn restricted_action(ads: &[Matrix], v: &Subspace) -> Vec<Matrix> {
    let basis = v.basis_vecs();
    let d = basis.len();
    ads.iter()
        .map(|ad| {
            let mut m = Matrix::zeros(d, d);
            for (j, b) in basis.iter().enumerate() {
                let c = v.coords(&ad.mul_vec(b)).expect("subspace is invariant");
                for (i, x) in c.into_iter().enumerate() {
                    m[(i, j)] = x;
                }
            }
            m
        })
        .collect()
}

/// Basis of `{T : T A_Y = A_Y T for all Y, T symmetric for the form}` on `v`.
fn symmetric_commutant(ads: &[Matrix], v: &Subspace, gram: &Matrix) -> Vec<Matrix> {
    let d = v.dim();
    let actions = restricted_action(ads, v);
    let gv = v.gram(gram);
    let idx = |i: usize, j: usize| i * d + j;
    let mut elim = SparseEliminator::new(d * d);
    for a in &actions {
        for i in 0..d {
            for j in 0..d {
                // (T A - A T)_{ij}
                let mut row: Vec<(usize, Scalar)> = Vec::new();
                for l in 0..d {
                    if !a[(l, j)].is_zero() {
                        row.push((idx(i, l), a[(l, j)].clone()));
                    }
                    if !a[(i, l)].is_zero() {
                        row.push((idx(l, j), -a[(i, l)].clone()));
                    }
                }
                push_combined(&mut elim, row);
            }
        }
    }
    for i in 0..d {
        for j in 0..d {
            // (G T - T^T G)_{ij} = sum_l G_il T_lj - T_li G_lj
            let mut row = Vec::new();
            for l in 0..d {
                if !gv[(i, l)].is_zero() {
                    row.push((idx(l, j), gv[(i, l)].clone()));
                }
                if !gv[(l, j)].is_zero() {
                    row.push((idx(l, i), -gv[(l, j)].clone()));
                }
            }
            push_combined(&mut elim, row);
        }
    }
    let red = elim.into_rref();
    nullspace_from_rref(&red, d * d).into_iter().map(|c| Matrix::from_vec(d, d, c)).collect()
}

fn push_combined(elim: &mut SparseEliminator, mut row: Vec<(usize, Scalar)>) {
    row.sort_by_key(|e| e.0);
    let mut merged: Vec<(usize, Scalar)> = Vec::with_capacity(row.len());
    for (c, x) in row {
        match merged.last_mut() {
            Some((lc, lx)) if *lc == c => *lx += x,
            _ => merged.push((c, x)),
        }
    }
    merged.retain(|e| !e.1.is_zero());
    if !merged.is_empty() {
        elim.push(merged);
    }
}

/// Monic minimal polynomial, coefficients from constant term up.
fn minimal_polynomial(t: &Matrix) -> Vec<Scalar> {
    let d = t.rows();
    let mut powers: Vec<Vec<Scalar>> = Vec::new();
    let mut cur = Matrix::identity(d);
    loop {
        let v = cur.data().to_vec();
        if !powers.is_empty() {
            let stacked = Matrix::from_rows(d * d, &powers);
            if let Some(c) = rref::solve_row_combination(&stacked, &v) {
                let mut poly: Vec<Scalar> = c.into_iter().map(|x| -x).collect();
                poly.push(Scalar::one());
                return poly;
            }
        }
        powers.push(v);
        cur = cur.mul(t);
    }
}

fn eval(poly: &[Scalar], x: &Scalar) -> Scalar {
    poly.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
}

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    Some(out)
}

/// Rational roots of a polynomial, by the rational root test.
fn rational_roots(poly: &[Scalar]) -> Vec<Scalar> {
    let lcm = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = poly.iter().map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    while ints.len() > 1 && ints[0].is_zero() {
        ints.remove(0);
        if !roots.contains(&Scalar::zero()) {
            roots.push(Scalar::zero());
        }
    }
    if ints.len() <= 1 {
        return roots;
    }
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return roots;
    };
    let reduced: Vec<Scalar> = ints.iter().map(|c| Scalar::from_integer(c.clone())).collect();
    for p in &ps {
        for q in &qs {
            for sign in [1i64, -1] {
                let x = Scalar::new(BigInt::from(*p) * sign, BigInt::from(*q));
                if !roots.contains(&x) && eval(&reduced, &x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// A proper invariant subspace of `v` from an eigenspace of a symmetric commutant element.
fn eigen_split(comm: &[Matrix], v: &Subspace) -> Option<Subspace> {
    let d = v.dim();
    for t in comm {
        let mp = minimal_polynomial(t);
        if mp.len() <= 2 {
            continue;
        }
        for lambda in rational_roots(&mp) {
            let shifted = t.sub(&Matrix::identity(d).scale(&lambda));
            let null = rref::nullspace_rows(&shifted);
            if !null.is_empty() && null.len() < d {
                let vecs: Vec<Vec<Scalar>> = null.iter().map(|c| v.combination(c)).collect();
                return Some(Subspace::span(v.ambient_dim(), &vecs));
            }
        }
    }
    None
}

/// Splits `p` into `ad(k)`-invariant, pairwise orthogonal components.
///
/// Cyclic spans of basis and seeded vectors split first; a component whose
/// symmetric commutant is larger than the scalars is refined by rational
/// eigenspaces, and left uncertified when that stalls.
pub fn decompose_isotropy(t: &NestedTriple, seed: u64) -> Vec<Component> {
    let ads = k_ads(t);
    let gram = t.g().gram();
    let mut r = rng::stream(seed, &format!("isotropy/{}", t.id));
    let mut queue = vec![t.p().clone()];
    let mut done = Vec::new();
    while let Some(v) = queue.pop() {
        if v.is_zero() {
            continue;
        }
        let mut seeds = v.basis_vecs();
        seeds.extend(rng::samples(&v, 2, &mut r));
        let cyclic = seeds.iter().map(|s| invariant_span(&ads, s)).find(|u| u.dim() < v.dim());
        if let Some(u) = cyclic {
            let rest = u.orthocomplement(&v, gram).expect("form is positive definite");
            queue.push(rest);
            queue.push(u);
            continue;
        }
        let comm = symmetric_commutant(&ads, &v, gram);
        if comm.len() <= 1 {
            done.push(Component { space: v, certified: true });
            continue;
        }
        match eigen_split(&comm, &v) {
            Some(u) => {
                let rest = u.orthocomplement(&v, gram).expect("form is positive definite");
                queue.push(rest);
                queue.push(u);
            }
            None => done.push(Component { space: v, certified: false }),
        }
    }
    done.sort_by_key(|c| c.space.dim());
    done
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimRule {
    /// `k ⊕ p1` is a subalgebra, forcing `dim m < dim p2 - dim p1`.
    Split,
    /// Every invariant component forces `dim m < dim p_i`.
    Component,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimViolation {
    pub rule: DimRule,
    pub dim_m: usize,
    pub dim_p1: usize,
    pub dim_p2: Option<usize>,
    pub bound: i64,
    /// The violated inequality, e.g. `dim(m) < 8-7 = 1`.
    pub statement: String,
    pub p1: Subspace,
    pub p2: Option<Subspace>,
}

/// Dimension bounds a positive triple must satisfy on an invariant splitting
/// of `p`. Split-bound violations come first.
pub fn dim_filters(t: &NestedTriple, components: &[Component]) -> Vec<DimViolation> {
    let dim_m = t.m().dim();
    let mut split = Vec::new();
    let mut single = Vec::new();
    if components.len() > 1 {
        for c in components {
            let l = t.k().sum(&c.space).expect("same ambient");
            if !t.g().is_closed(&l) {
                continue;
            }
            let p2 = c.space.orthocomplement(t.p(), t.g().gram()).expect("form is positive definite");
            let (d1, d2) = (c.space.dim(), p2.dim());
            let bound = d2 as i64 - d1 as i64;
            if dim_m as i64 >= bound {
                split.push(DimViolation {
                    rule: DimRule::Split,
                    dim_m,
                    dim_p1: d1,
                    dim_p2: Some(d2),
                    bound,
                    statement: format!("dim(m) < {d2}-{d1} = {bound}"),
                    p1: c.space.clone(),
                    p2: Some(p2),
                });
            }
        }
    }
    for c in components {
        let d = c.space.dim();
        if dim_m >= d {
            single.push(DimViolation {
                rule: DimRule::Component,
                dim_m,
                dim_p1: d,
                dim_p2: None,
                bound: d as i64,
                statement: format!("dim(m) < dim(p_i) = {d}"),
                p1: c.space.clone(),
                p2: None,
            });
        }
    }
    split.extend(single);
    split
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityEvidence {
    /// Sampled `W` with the rank of `Y -> [Y, W]` on `k`.
    pub samples: Vec<(Vec<Scalar>, usize)>,
    pub expected: usize,
    pub pass: bool,
}

/// Orbit-dimension evidence that `k` is transitive on the unit sphere of `p`.
pub fn transitivity_evidence(t: &NestedTriple, samples: usize, seed: u64) -> TransitivityEvidence {
    let mut r = rng::stream(seed, &format!("transitivity/{}", t.id));
    let kb = t.k().basis_vecs();
    let expected = t.p().dim() - 1;
    let samples: Vec<(Vec<Scalar>, usize)> = rng::samples(t.p(), samples.max(1), &mut r)
        .into_iter()
        .map(|w| {
            let images: Vec<Vec<Scalar>> = kb.iter().map(|y| t.bracket(y, &w)).collect();
            let rk = rank(&Matrix::from_rows(t.dim(), &images));
            (w, rk)
        })
        .collect();
    let pass = samples.iter().all(|(_, rk)| *rk == expected);
    TransitivityEvidence { samples, expected, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{frac, int};
    use crate::test_support::so2_so3_so4;

    #[test]
    fn roots_of_small_polynomials() {
        // (x - 2)(x + 1/3) x = x^3 - (5/3) x^2 - (2/3) x
        let p = vec![int(0), frac(-2, 3), frac(-5, 3), int(1)];
        assert_eq!(rational_roots(&p), vec![frac(-1, 3), int(0), int(2)]);
        // x^2 - 2 has none
        assert!(rational_roots(&[int(-2), int(0), int(1)]).is_empty());
    }

    #[test]
    fn minimal_polynomial_of_projector() {
        let mut m = Matrix::zeros(3, 3);
        m[(0, 0)] = int(1);
        m[(1, 1)] = int(1);
        assert_eq!(minimal_polynomial(&m), vec![int(0), int(-1), int(1)]);
    }

    #[test]
    fn so3_in_so4_is_irreducible_and_transitive() {
        let t = so2_so3_so4();
        assert!(trivial_factor(&t).is_none());
        let comps = decompose_isotropy(&t, 1);
        assert_eq!(comps.len(), 1);
        assert!(comps[0].certified);
        assert!(dim_filters(&t, &comps).is_empty());
        let ev = transitivity_evidence(&t, 4, 1);
        assert!(ev.pass);
        assert_eq!(ev.expected, 2);
    }
}
