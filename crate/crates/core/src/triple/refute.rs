//! Commuting-pair refutations of the condition on `A`: pairs `(Z, W)` with
//! `Z ∈ m ⊕ p`, `W ∈ p`, `[Z, W] = 0` and `[Z^m, [A, W]^k] = 0`.

use serde::{Deserialize, Serialize};

use super::rng;
use super::{NestedTriple, Part, TripleError};
use crate::algebra::lie::kernel_on;
use crate::linalg::matrix::{vec_is_zero, vec_sub, vec_scale, Matrix};
use crate::linalg::subspace::independent;
use crate::linalg::{Scalar, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "from", content = "index")]
pub enum PairSource {
    CenterOfK(usize),
    FlatInM(usize),
    BasisM(usize),
    BasisP(usize),
    RandomMP(usize),
    RandomM(usize),
    /// `W` from the hinted subspace without strongly fat vectors.
    HintedSubspace(usize),
    Scripted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingPair {
    pub z: Vec<Scalar>,
    pub w: Vec<Scalar>,
    pub source: PairSource,
}

/// Data for replaying a parametrized witness family.
///
/// For `A ∈ p` let `w` be its component in `column` and pick `v ∈ column`
/// orthogonal to `[rotation, w]`. Then `W = v` and `Z = q + v` with `q` in the
/// span of `outer`, an ideal commuting with `column`, solved so that
/// `[q^m, [A, v]^k] = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptedFamily {
    pub column: Subspace,
    pub rotation: Vec<Scalar>,
    pub outer: Vec<Vec<Scalar>>,
}

fn shape_ok(t: &NestedTriple, z: &[Scalar], w: &[Scalar]) -> bool {
    z.len() == t.dim()
        && w.len() == t.dim()
        && t.mp().contains(z)
        && t.p().contains(w)
        && independent(z, w)
        && vec_is_zero(&t.bracket(z, w))
}

/// Rows are `[Z^m, [a, W]^k]` for the basis vectors `a` of `g`.
pub fn universal_map(t: &NestedTriple, z: &[Scalar], w: &[Scalar]) -> Matrix {
    let x = t.project(Part::M, z);
    let rows: Vec<Vec<Scalar>> = t
        .g()
        .full()
        .basis_vecs()
        .iter()
        .map(|a| t.bracket(&x, &t.project(Part::K, &t.bracket(a, w))))
        .collect();
    Matrix::from_rows(t.dim(), &rows)
}

/// `(Z, W)` refutes the condition for every `A`.
pub fn is_universal_pair(t: &NestedTriple, z: &[Scalar], w: &[Scalar]) -> bool {
    shape_ok(t, z, w) && universal_map(t, z, w).is_zero()
}

/// `(Z, W)` refutes the condition for this `A`.
pub fn is_pair_for_a(t: &NestedTriple, a: &[Scalar], z: &[Scalar], w: &[Scalar]) -> bool {
    if !shape_ok(t, z, w) {
        return false;
    }
    let x = t.project(Part::M, z);
    vec_is_zero(&t.bracket(&x, &t.project(Part::K, &t.bracket(a, w))))
}

fn pick_independent(space: &Subspace, z: &[Scalar]) -> Option<Vec<Scalar>> {
    space.basis_vecs().into_iter().find(|w| independent(z, w))
}

fn universal_candidates(t: &NestedTriple, seed: u64, random: usize) -> Vec<(PairSource, Vec<Scalar>)> {
    let mut out = Vec::new();
    let kb = t.k().basis_vecs();
    let center = t.g().centralizer(t.m(), &kb);
    out.extend(center.basis_vecs().into_iter().enumerate().map(|(i, v)| (PairSource::CenterOfK(i), v)));
    let flat = t.g().centralizer(t.m(), &t.p().basis_vecs());
    out.extend(flat.basis_vecs().into_iter().enumerate().map(|(i, v)| (PairSource::FlatInM(i), v)));
    out.extend(t.m().basis_vecs().into_iter().enumerate().map(|(i, v)| (PairSource::BasisM(i), v)));
    out.extend(t.p().basis_vecs().into_iter().enumerate().map(|(i, v)| (PairSource::BasisP(i), v)));
    let mut r = rng::stream(seed, &format!("universal/{}", t.id));
    out.extend(rng::samples(t.mp(), random, &mut r).into_iter().enumerate().map(|(i, v)| (PairSource::RandomMP(i), v)));
    out.extend(rng::samples(t.m(), random, &mut r).into_iter().enumerate().map(|(i, v)| (PairSource::RandomM(i), v)));
    out
}

/// A pair refuting the condition for every `A ∈ g`.
///
/// For fixed `Z` the admissible `W` form the linear space
/// `p ∩ ker ad_Z ∩ ker ad_q`, where `q` is the orthocomplement in `k` of the
/// centralizer of `Z^m`. Every returned pair has passed the rank test on the
/// assembled map.
pub fn universal_refuter(t: &NestedTriple, seed: u64, random: usize) -> Option<CommutingPair> {
    let k = t.k();
    for (source, z) in universal_candidates(t, seed, random) {
        let x = t.project(Part::M, &z);
        let ck = t.g().centralizer(k, &[x]);
        let q = t.g().complement(&ck, k).expect("centralizer lies in k");
        let mut constraints = q.basis_vecs();
        constraints.push(z.clone());
        let space = t.g().centralizer(t.p(), &constraints);
        if let Some(w) = pick_independent(&space, &z) {
            assert!(is_universal_pair(t, &z, &w), "universal pair failed its self-check");
            return Some(CommutingPair { z, w, source });
        }
    }
    None
}

fn scripted(t: &NestedTriple, fam: &ScriptedFamily, a: &[Scalar], seed: u64) -> Option<CommutingPair> {
    let gram = t.g().gram();
    let w = fam.column.project(a, gram).ok()?;
    let u = t.bracket(&fam.rotation, &w);
    let mut r = rng::stream(seed, &format!("family/{}", t.id));
    for v0 in rng::samples(&fam.column, 8, &mut r) {
        let v = if vec_is_zero(&u) {
            v0
        } else {
            let c = t.g().inner(&v0, &u) / t.g().inner(&u, &u);
            vec_sub(&v0, &vec_scale(&u, &c))
        };
        if vec_is_zero(&v) {
            continue;
        }
        let target = t.project(Part::K, &t.bracket(a, &v));
        // Columns: q_i -> [q_i^m, target].
        let images: Vec<Vec<Scalar>> =
            fam.outer.iter().map(|q| t.bracket(&t.project(Part::M, q), &target)).collect();
        let map = Matrix::from_rows(t.dim(), &images).transpose();
        let coeffs = Subspace::full(fam.outer.len());
        let Some(sol) = kernel_on(&map, &coeffs).basis_vecs().into_iter().next() else { continue };
        let mut z = v.clone();
        for (c, q) in sol.iter().zip(&fam.outer) {
            z = crate::linalg::matrix::vec_add(&z, &vec_scale(q, c));
        }
        if is_pair_for_a(t, a, &z, &v) {
            return Some(CommutingPair { z, w: v, source: PairSource::Scripted });
        }
    }
    None
}

/// A pair showing that this particular `A ∈ p` fails the condition.
///
/// Tries the scripted family, then `W` from the hinted subspace, then the
/// linear kernel in `W` for structured and seeded `Z`.
pub fn refute_for_a(
    t: &NestedTriple,
    a: &[Scalar],
    seed: u64,
    random: usize,
) -> Result<Option<CommutingPair>, TripleError> {
    t.require_in_p(a)?;
    if let Some(fam) = &t.hints.family {
        if let Some(pair) = scripted(t, fam, a, seed) {
            return Ok(Some(pair));
        }
    }
    let ad_a = t.ad(a);
    let pk_ad_a = t.projector(Part::K).mul(&ad_a);
    if let Some(hint) = &t.hints.non_strongly_fat {
        let f = kernel_on(&pk_ad_a, t.p());
        let fw = f.intersect(hint)?;
        for (i, w) in fw.basis_vecs().into_iter().enumerate() {
            let cz = t.g().centralizer(t.mp(), &[w.clone()]);
            if let Some(z) = pick_independent(&cz, &w) {
                if is_pair_for_a(t, a, &z, &w) {
                    return Ok(Some(CommutingPair { z, w, source: PairSource::HintedSubspace(i) }));
                }
            }
        }
    }
    let mut zs: Vec<(PairSource, Vec<Scalar>)> = Vec::new();
    zs.extend(t.m().basis_vecs().into_iter().enumerate().map(|(i, v)| (PairSource::BasisM(i), v)));
    zs.extend(t.p().basis_vecs().into_iter().enumerate().map(|(i, v)| (PairSource::BasisP(i), v)));
    let mut r = rng::stream(seed, &format!("per-a/{}", t.id));
    zs.extend(rng::samples(t.mp(), random, &mut r).into_iter().enumerate().map(|(i, v)| (PairSource::RandomMP(i), v)));
    for (source, z) in zs {
        let x = t.project(Part::M, &z);
        let cond = t.ad(&x).mul(&pk_ad_a);
        let system = t.ad(&z).stack(&cond);
        let space = kernel_on(&system, t.p());
        if let Some(w) = pick_independent(&space, &z) {
            if is_pair_for_a(t, a, &z, &w) {
                return Ok(Some(CommutingPair { z, w, source }));
            }
        }
    }
    Ok(None)
}
