//! Fat and strongly fat vectors.

use serde::{Deserialize, Serialize};

use super::rng;
use super::{NestedTriple, TripleError};
use crate::algebra::lie::kernel_on;
use crate::linalg::matrix::vec_add;
use crate::linalg::{Scalar, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FatKind {
    Fat,
    StronglyFat,
}

/// Outcome of a fatness test for one `A ∈ p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatCheck {
    pub fat: bool,
    /// `ker(ad_A) ∩ k`.
    pub kernel_k: Subspace,
    /// `ker(ad_A) ∩ m`.
    pub kernel_m: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongCheck {
    pub strongly_fat: bool,
    /// `ker(ad_A) ∩ (m ⊕ p)`.
    pub kernel_mp: Subspace,
}

/// `A` is fat iff no nonzero vector of `m` commutes with it.
pub fn is_fat(t: &NestedTriple, a: &[Scalar]) -> Result<FatCheck, TripleError> {
    t.require_in_p(a)?;
    let ad = t.ad(a);
    let kernel_k = kernel_on(&ad, t.k());
    let kernel_m = kernel_on(&ad, t.m());
    Ok(FatCheck { fat: kernel_m.is_zero(), kernel_k, kernel_m })
}

/// `A` is strongly fat iff its centralizer in `m ⊕ p` is `span{A}`.
pub fn is_strongly_fat(t: &NestedTriple, a: &[Scalar]) -> Result<StrongCheck, TripleError> {
    t.require_in_p(a)?;
    let kernel_mp = kernel_on(&t.ad(a), t.mp());
    Ok(StrongCheck { strongly_fat: kernel_mp.dim() == 1, kernel_mp })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "from", content = "index")]
pub enum CandidateSource {
    Hint(usize),
    FixedByH(usize),
    Basis(usize),
    Random(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatVector {
    pub a: Vec<Scalar>,
    pub source: CandidateSource,
    pub kernel_k: Subspace,
    pub strongly_fat: bool,
}

/// Candidate vectors in search order: catalog hints, vectors of `p` fixed by
/// `h`, the basis of `p`, then seeded random elements of `p`.
pub fn candidates(t: &NestedTriple, seed: u64, random: usize) -> Vec<(CandidateSource, Vec<Scalar>)> {
    let mut out = Vec::new();
    for (i, a) in t.hints.fat_candidates.iter().enumerate() {
        if t.require_in_p(a).is_ok() {
            out.push((CandidateSource::Hint(i), a.clone()));
        }
    }
    if !t.h().is_zero() {
        let fixed = t.g().centralizer(t.p(), &t.h().basis_vecs());
        let fb = fixed.basis_vecs();
        let mut sum: Option<Vec<Scalar>> = None;
        for (i, v) in fb.iter().enumerate() {
            out.push((CandidateSource::FixedByH(i), v.clone()));
            sum = Some(match sum {
                None => v.clone(),
                Some(s) => vec_add(&s, v),
            });
        }
        if fb.len() > 1 {
            out.push((CandidateSource::FixedByH(fb.len()), sum.unwrap()));
        }
    }
    for (i, v) in t.p().basis_vecs().into_iter().enumerate() {
        out.push((CandidateSource::Basis(i), v));
    }
    let mut r = rng::stream(seed, &format!("fat/{}", t.id));
    for (i, v) in rng::samples(t.p(), random, &mut r).into_iter().enumerate() {
        out.push((CandidateSource::Random(i), v));
    }
    out
}

/// First candidate passing the requested test, with its kernel witness.
///
/// An empty result is not a refutation.
pub fn search_fat(t: &NestedTriple, kind: FatKind, seed: u64, random: usize) -> Option<FatVector> {
    for (source, a) in candidates(t, seed, random) {
        let Ok(check) = is_fat(t, &a) else { continue };
        if !check.fat {
            continue;
        }
        let strong = is_strongly_fat(t, &a).map(|s| s.strongly_fat).unwrap_or(false);
        if kind == FatKind::StronglyFat && !strong {
            continue;
        }
        return Some(FatVector { a, source, kernel_k: check.kernel_k, strongly_fat: strong });
    }
    None
}
