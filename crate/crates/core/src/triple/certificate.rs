//! Positivity certificates: catalog tags for the base and fiber pairs,
//! transitivity evidence and a fat vector.

use super::fat::{search_fat, FatKind, FatVector};
use super::isotropy::{transitivity_evidence, TransitivityEvidence};
use super::rng;
use super::{NestedTriple, Tags};
use crate::linalg::{Scalar, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertificateConfig {
    pub seed: u64,
    /// Random commuting probes per condition, and transitivity samples.
    pub probes: usize,
    /// Random candidates after the structured ones in the fat search.
    pub fat_random: usize,
}

impl Default for CertificateConfig {
    fn default() -> Self {
        CertificateConfig { seed: 1, probes: 20, fat_random: 20 }
    }
}

/// A sampled `X` and the dimension of its centralizer in the space it was drawn from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probe {
    pub x: Vec<Scalar>,
    pub centralizer_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub tags: Tags,
    /// Probes in `p`: generic centralizer `span{X}`.
    pub base_probes: Vec<Probe>,
    /// Probes in `m`.
    pub fiber_probes: Vec<Probe>,
    pub transitivity: TransitivityEvidence,
    pub fat: FatVector,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CertificateFailure {
    #[error("no base-pair tag")]
    MissingBaseTag,
    #[error("no fiber-pair tag")]
    MissingFiberTag,
    #[error("base type {0} is not transitive on the sphere")]
    BaseNotTransitive(u8),
    #[error("commuting probe in {space} has centralizer of dimension {dim}")]
    ProbeFailed { space: &'static str, dim: usize },
    #[error("orbit dimension below dim p - 1")]
    TransitivityFailed,
    #[error("no fat vector among the candidates")]
    NoFatVector,
}

fn probes(t: &NestedTriple, space: &Subspace, label: &str, cfg: &CertificateConfig) -> Vec<Probe> {
    let mut r = rng::stream(cfg.seed, &format!("probe-{label}/{}", t.id));
    rng::samples(space, cfg.probes, &mut r)
        .into_iter()
        .map(|x| {
            let centralizer_dim = t.g().centralizer(space, &[x.clone()]).dim();
            Probe { x, centralizer_dim }
        })
        .collect()
}

/// Certifies positivity from the base and fiber tags, commuting probes,
/// transitivity of the base isotropy and a fat vector in `p`.
pub fn prop_certificate(t: &NestedTriple, cfg: &CertificateConfig) -> Result<Certificate, CertificateFailure> {
    let base = t.tags.base.ok_or(CertificateFailure::MissingBaseTag)?;
    t.tags.fiber.ok_or(CertificateFailure::MissingFiberTag)?;
    let base_probes = probes(t, t.p(), "p", cfg);
    if let Some(p) = base_probes.iter().find(|p| p.centralizer_dim != 1) {
        return Err(CertificateFailure::ProbeFailed { space: "p", dim: p.centralizer_dim });
    }
    let fiber_probes = probes(t, t.m(), "m", cfg);
    if let Some(p) = fiber_probes.iter().find(|p| p.centralizer_dim != 1) {
        return Err(CertificateFailure::ProbeFailed { space: "m", dim: p.centralizer_dim });
    }
    if !t.tags.base_transitive() {
        return Err(CertificateFailure::BaseNotTransitive(base));
    }
    let transitivity = transitivity_evidence(t, cfg.probes, cfg.seed);
    if !transitivity.pass {
        return Err(CertificateFailure::TransitivityFailed);
    }
    let fat = search_fat(t, FatKind::Fat, cfg.seed, cfg.fat_random).ok_or(CertificateFailure::NoFatVector)?;
    Ok(Certificate { tags: t.tags, base_probes, fiber_probes, transitivity, fat })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::so2_so3_so4;

    #[test]
    fn sphere_fibration_is_certified() {
        let t = so2_so3_so4().with_tags(Tags::new(1, 1));
        let c = prop_certificate(&t, &CertificateConfig::default()).unwrap();
        assert_eq!(c.base_probes.len(), 20);
        assert!(c.fat.kernel_k.dim() >= 1);
    }

    #[test]
    fn missing_tags_block_certification() {
        let t = so2_so3_so4();
        assert_eq!(prop_certificate(&t, &CertificateConfig::default()), Err(CertificateFailure::MissingBaseTag));
        let t = t.with_tags(Tags::new(4, 1));
        assert_eq!(prop_certificate(&t, &CertificateConfig::default()), Err(CertificateFailure::BaseNotTransitive(4)));
    }
}
