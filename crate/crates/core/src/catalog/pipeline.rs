//! The checking pipeline and the catalog replay.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::{catalog, CatalogEntry, CatalogError};
use crate::report::{
    vector_doc, vectors_doc, CheckReport, ComponentDoc, Dims, FamilyPair, ReplayDoc, ReplayRow, Stage, TripleDoc,
    Verdict, Witness, REPLAY_SCHEMA, REPORT_SCHEMA,
};
use crate::triple::certificate::{prop_certificate, Certificate, CertificateConfig};
use crate::triple::refute::CommutingPair;
use crate::triple::{
    common_ideal, decompose_isotropy, dim_filters, reduce, refute_for_a, rng, trivial_factor, universal_refuter,
    NestedTriple,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    /// Random `A` for the sampled refuter, and probes per certificate check.
    pub samples: usize,
    /// Largest `n` for parametrized catalog entries.
    pub max_n: usize,
    /// Random `Z` candidates per refuter call.
    pub universal_random: usize,
    /// Random candidates in the fat-vector search.
    pub fat_random: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 1, samples: 20, max_n: 3, universal_random: 4, fat_random: 8 }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: CheckReport,
    /// Wall time per stage, in run order.
    pub timings: Vec<(String, Duration)>,
}

struct Timer {
    last: Instant,
    out: Vec<(String, Duration)>,
}

impl Timer {
    fn new() -> Self {
        Timer { last: Instant::now(), out: Vec::new() }
    }

    fn lap(&mut self, name: &str) {
        let now = Instant::now();
        self.out.push((name.to_string(), now - self.last));
        self.last = now;
    }
}

pub fn run_check(entry: &CatalogEntry, cfg: &RunConfig) -> Result<Outcome, CatalogError> {
    let t = entry.build()?;
    let mut out = run_triple(&t, cfg)?;
    out.report.description = entry.description.clone();
    out.report.recipe = entry.recipe.to_string();
    out.report.expected = entry.expected;
    Ok(out)
}

fn pair_witness(t: &NestedTriple, p: &CommutingPair, universal: bool) -> Witness {
    Witness::CommutingPair { z: vector_doc(t, &p.z), w: vector_doc(t, &p.w), source: p.source, universal }
}

fn certificate_witnesses(t: &NestedTriple, c: &Certificate) -> Vec<Witness> {
    let probe = |space: &str, ps: &[crate::triple::certificate::Probe]| Witness::CommutingProbes {
        space: space.to_string(),
        samples: ps.iter().map(|p| vector_doc(t, &p.x)).collect(),
        centralizer_dims: ps.iter().map(|p| p.centralizer_dim).collect(),
    };
    vec![
        Witness::CatalogTags { base: c.tags.base, fiber: c.tags.fiber, transitive_base: c.tags.base_transitive() },
        probe("p", &c.base_probes),
        probe("m", &c.fiber_probes),
        Witness::Transitivity {
            expected: c.transitivity.expected,
            samples: c.transitivity.samples.iter().map(|(w, _)| vector_doc(t, w)).collect(),
            ranks: c.transitivity.samples.iter().map(|(_, r)| *r).collect(),
        },
        Witness::FatVector {
            a: vector_doc(t, &c.fat.a),
            source: c.fat.source,
            kernel_k: vectors_doc(t, &c.fat.kernel_k.basis_vecs()),
            strongly_fat: c.fat.strongly_fat,
        },
    ]
}

/// Runs every stage on a triple. The report describes the reduced triple.
pub fn run_triple(input: &NestedTriple, cfg: &RunConfig) -> Result<Outcome, CatalogError> {
    let mut timer = Timer::new();
    let ideal = common_ideal(input);
    let t = reduce(input)?;
    timer.lap("reduce");
    let mut witnesses = Vec::new();
    let mut notes = Vec::new();
    if !ideal.is_zero() {
        witnesses.push(Witness::CommonIdeal { dim: ideal.dim() });
        notes.push(format!("split off a common ideal of dim {}", ideal.dim()));
    }
    let finish = |verdict, stage, sampled_family, witnesses, notes, timer: Timer| {
        let t: &NestedTriple = &t;
        Outcome {
            report: CheckReport {
                schema: REPORT_SCHEMA.to_string(),
                triple_id: input.id.clone(),
                description: input.id.clone(),
                recipe: String::new(),
                expected: None,
                verdict,
                sampled_family,
                stage,
                seed: cfg.seed,
                samples: cfg.samples,
                dims: Dims { g: t.dim(), k: t.k().dim(), h: t.h().dim(), m: t.m().dim(), p: t.p().dim() },
                notes,
                triple: TripleDoc::of(t),
                witnesses,
            },
            timings: timer.out,
        }
    };

    if let Some(f) = trivial_factor(&t) {
        timer.lap("trivial_factor");
        witnesses.push(Witness::TrivialFactor { basis: vectors_doc(&t, &f.basis_vecs()) });
        return Ok(finish(Verdict::Refuted, Stage::TrivialFactor, false, witnesses, notes, timer));
    }
    timer.lap("trivial_factor");

    let comps = decompose_isotropy(&t, cfg.seed);
    witnesses.push(Witness::Isotropy {
        components: comps.iter().map(|c| ComponentDoc { dim: c.space.dim(), certified: c.certified }).collect(),
    });
    if comps.iter().any(|c| !c.certified) {
        notes.push("isotropy splitting left an uncertified component".into());
    }
    let violations = dim_filters(&t, &comps);
    timer.lap("dim_filters");
    if let Some(v) = violations.into_iter().next() {
        witnesses.push(Witness::DimensionBound {
            rule: v.rule,
            dim_m: v.dim_m,
            dim_p1: v.dim_p1,
            dim_p2: v.dim_p2,
            bound: v.bound,
            statement: v.statement,
            p1: vectors_doc(&t, &v.p1.basis_vecs()),
        });
        return Ok(finish(Verdict::Refuted, Stage::DimFilters, false, witnesses, notes, timer));
    }

    let cc = CertificateConfig { seed: cfg.seed, probes: cfg.samples, fat_random: cfg.fat_random };
    let cert = prop_certificate(&t, &cc);
    timer.lap("certificate");
    if let Err(e) = &cert {
        notes.push(format!("certificate: {e}"));
    }

    let universal = universal_refuter(&t, cfg.seed, cfg.universal_random);
    timer.lap("universal_refuter");
    match (&cert, universal) {
        (Ok(_), Some(_)) => return Err(CatalogError::Unsound(t.id.clone())),
        (Err(_), Some(pair)) => {
            witnesses.push(pair_witness(&t, &pair, true));
            return Ok(finish(Verdict::Refuted, Stage::UniversalRefuter, false, witnesses, notes, timer));
        }
        _ => {}
    }

    if let Ok(c) = &cert {
        if refute_for_a(&t, &c.fat.a, cfg.seed, cfg.universal_random)?.is_some() {
            return Err(CatalogError::Unsound(t.id.clone()));
        }
        timer.lap("fat_check");
        witnesses.extend(certificate_witnesses(&t, c));
        return Ok(finish(Verdict::CertifiedPositive, Stage::Certificate, false, witnesses, notes, timer));
    }

    if t.hints.family.is_none() && t.hints.non_strongly_fat.is_none() {
        notes.push("no decisive stage".into());
        return Ok(finish(Verdict::Inconclusive, Stage::None, false, witnesses, notes, timer));
    }
    let mut r = rng::stream(cfg.seed, &format!("sampled-a/{}", t.id));
    let mut pairs = Vec::new();
    let mut missed = 0;
    for a in rng::samples(t.p(), cfg.samples.max(1), &mut r) {
        match refute_for_a(&t, &a, cfg.seed, cfg.universal_random)? {
            Some(p) => pairs.push(FamilyPair {
                a: vector_doc(&t, &a),
                z: vector_doc(&t, &p.z),
                w: vector_doc(&t, &p.w),
                source: p.source,
            }),
            None => missed += 1,
        }
    }
    timer.lap("sampled_refuter");
    if missed == 0 {
        notes.push(format!("every one of {} sampled A has a commuting pair", pairs.len()));
        witnesses.push(Witness::SampledFamily { pairs });
        return Ok(finish(Verdict::Refuted, Stage::SampledRefuter, true, witnesses, notes, timer));
    }
    notes.push(format!("{missed} of {} sampled A have no commuting pair", cfg.samples.max(1)));
    Ok(finish(Verdict::Inconclusive, Stage::None, false, witnesses, notes, timer))
}

/// Checks every catalog entry up to `cfg.max_n` in parallel.
///
/// Rows come back in catalog order with per-entry wall times.
pub fn replay(cfg: &RunConfig) -> (ReplayDoc, Vec<Duration>) {
    let entries = catalog(cfg.max_n);
    let results: Vec<(ReplayRow, Duration)> = entries
        .par_iter()
        .map(|e| {
            let start = Instant::now();
            let row = match run_check(e, cfg) {
                Ok(o) => ReplayRow {
                    id: e.id.clone(),
                    description: e.description.clone(),
                    expected: e.expected,
                    verdict: Some(o.report.verdict),
                    sampled_family: o.report.sampled_family,
                    matches: o.report.matches_expected().unwrap_or(true),
                    summary: o.report.summary(),
                },
                Err(err) => ReplayRow {
                    id: e.id.clone(),
                    description: e.description.clone(),
                    expected: e.expected,
                    verdict: None,
                    sampled_family: false,
                    matches: false,
                    summary: err.to_string(),
                },
            };
            (row, start.elapsed())
        })
        .collect();
    let (rows, times) = results.into_iter().unzip();
    (ReplayDoc { schema: REPLAY_SCHEMA.into(), seed: cfg.seed, samples: cfg.samples, max_n: cfg.max_n, rows }, times)
}
