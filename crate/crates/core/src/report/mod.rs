//! Check reports: versioned JSON documents carrying the triple and every
//! witness as explicit matrices, plus markdown renderings.

pub mod verify;

use std::fmt::Write as _;
use std::time::Duration;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::catalog::Expected;
use crate::linalg::matrix::Matrix;
use crate::linalg::scalar;
use crate::linalg::Scalar;
use crate::triple::fat::CandidateSource;
use crate::triple::isotropy::DimRule;
use crate::triple::refute::PairSource;
use crate::triple::NestedTriple;

pub use verify::{verify_report, VerifyError};

pub const REPORT_SCHEMA: &str = "postrip.report/v1";
pub const REPLAY_SCHEMA: &str = "postrip.replay/v1";

/// Nonzero entries `(row, col, value)` of a square matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrix(pub Vec<(usize, usize, String)>);

impl SparseMatrix {
    pub fn from_matrix(m: &Matrix) -> Self {
        let mut out = Vec::new();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if !m[(i, j)].is_zero() {
                    out.push((i, j, scalar::to_string(&m[(i, j)])));
                }
            }
        }
        SparseMatrix(out)
    }

    pub fn to_matrix(&self, n: usize) -> Result<Matrix, String> {
        let mut m = Matrix::zeros(n, n);
        for (i, j, v) in &self.0 {
            if *i >= n || *j >= n {
                return Err(format!("entry ({i}, {j}) outside {n}x{n}"));
            }
            m[(*i, *j)] = scalar::parse(v).ok_or_else(|| format!("bad rational `{v}`"))?;
        }
        Ok(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CertifiedPositive,
    Refuted,
    Inconclusive,
}

impl Verdict {
    pub fn matches(self, expected: Expected) -> bool {
        matches!(
            (self, expected),
            (Verdict::CertifiedPositive, Expected::Positive) | (Verdict::Refuted, Expected::NotPositive)
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::CertifiedPositive => "certified_positive",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    TrivialFactor,
    DimFilters,
    Certificate,
    UniversalRefuter,
    SampledRefuter,
    /// No stage was decisive.
    None,
}

/// The (reduced) triple the witnesses refer to, as spanning matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleDoc {
    pub matrix_size: usize,
    pub g: Vec<SparseMatrix>,
    pub k: Vec<SparseMatrix>,
    pub h: Vec<SparseMatrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub g: usize,
    pub k: usize,
    pub h: usize,
    pub m: usize,
    pub p: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub dim: usize,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyPair {
    pub a: SparseMatrix,
    pub z: SparseMatrix,
    pub w: SparseMatrix,
    pub source: PairSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Dimension of the ideal split off before checking.
    CommonIdeal { dim: usize },
    TrivialFactor { basis: Vec<SparseMatrix> },
    Isotropy { components: Vec<ComponentDoc> },
    DimensionBound {
        rule: DimRule,
        dim_m: usize,
        dim_p1: usize,
        dim_p2: Option<usize>,
        bound: i64,
        statement: String,
        p1: Vec<SparseMatrix>,
    },
    CatalogTags { base: Option<u8>, fiber: Option<u8>, transitive_base: bool },
    /// Sampled `X` whose centralizer in `space` should be `span{X}`.
    CommutingProbes { space: String, samples: Vec<SparseMatrix>, centralizer_dims: Vec<usize> },
    Transitivity { expected: usize, samples: Vec<SparseMatrix>, ranks: Vec<usize> },
    FatVector { a: SparseMatrix, source: CandidateSource, kernel_k: Vec<SparseMatrix>, strongly_fat: bool },
    CommutingPair { z: SparseMatrix, w: SparseMatrix, source: PairSource, universal: bool },
    SampledFamily { pairs: Vec<FamilyPair> },
}

impl Witness {
    pub fn is_refutation(&self) -> bool {
        matches!(
            self,
            Witness::TrivialFactor { .. }
                | Witness::DimensionBound { .. }
                | Witness::CommutingPair { universal: true, .. }
                | Witness::SampledFamily { .. }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema: String,
    pub triple_id: String,
    pub description: String,
    pub recipe: String,
    pub expected: Option<Expected>,
    pub verdict: Verdict,
    /// The refutation covers sampled `A` only.
    pub sampled_family: bool,
    pub stage: Stage,
    pub seed: u64,
    pub samples: usize,
    pub dims: Dims,
    pub notes: Vec<String>,
    pub triple: TripleDoc,
    pub witnesses: Vec<Witness>,
}

pub fn vector_doc(t: &NestedTriple, v: &[Scalar]) -> SparseMatrix {
    SparseMatrix::from_matrix(&t.g().element(v))
}

pub fn vectors_doc(t: &NestedTriple, vs: &[Vec<Scalar>]) -> Vec<SparseMatrix> {
    vs.iter().map(|v| vector_doc(t, v)).collect()
}

impl TripleDoc {
    pub fn of(t: &NestedTriple) -> Self {
        let mats = |s: &crate::linalg::Subspace| t.matrices(s).iter().map(SparseMatrix::from_matrix).collect();
        TripleDoc { matrix_size: t.g().matrix_size(), g: t.g().basis().iter().map(SparseMatrix::from_matrix).collect(), k: mats(t.k()), h: mats(t.h()) }
    }
}

impl CheckReport {
    pub fn matches_expected(&self) -> Option<bool> {
        self.expected.map(|e| self.verdict.matches(e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// One-line account of the decisive witness.
    pub fn summary(&self) -> String {
        let decisive = |w: &Witness| match w {
            Witness::TrivialFactor { basis } => Some(format!("trivial isotropy factor of dim {}", basis.len())),
            Witness::DimensionBound { statement, dim_m, .. } => Some(format!("dim(m) = {dim_m} violates {statement}")),
            Witness::CommutingPair { source, universal: true, .. } => Some(format!("universal commuting pair ({})", source_name(source))),
            Witness::SampledFamily { pairs } => Some(format!("{} sampled A refuted", pairs.len())),
            Witness::FatVector { source, kernel_k, strongly_fat, .. } => Some(format!(
                "{} vector from {}, dim ker(ad_A) ∩ k = {}",
                if *strongly_fat { "strongly fat" } else { "fat" },
                candidate_name(source),
                kernel_k.len()
            )),
            _ => None,
        };
        match self.verdict {
            Verdict::Inconclusive => self.notes.last().cloned().unwrap_or_else(|| "no decisive stage".into()),
            _ => self.witnesses.iter().rev().find_map(decisive).unwrap_or_default(),
        }
    }

    pub fn to_markdown(&self, timings: &[(String, Duration)]) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# {}\n", self.triple_id);
        let _ = writeln!(s, "{}\n", self.description);
        let _ = writeln!(s, "| field | value |\n|---|---|");
        let _ = writeln!(s, "| recipe | `{}` |", self.recipe);
        let _ = writeln!(s, "| expected | {} |", self.expected.map(expected_name).unwrap_or("-"));
        let _ = writeln!(
            s,
            "| verdict | {}{} |",
            self.verdict.as_str(),
            if self.sampled_family { " (sampled family)" } else { "" }
        );
        let _ = writeln!(s, "| stage | {:?} |", self.stage);
        let d = self.dims;
        let _ = writeln!(s, "| dims g, k, h, m, p | {}, {}, {}, {}, {} |", d.g, d.k, d.h, d.m, d.p);
        let _ = writeln!(s, "| seed | {} |", self.seed);
        let _ = writeln!(s, "| witness | {} |", self.summary());
        if !self.notes.is_empty() {
            let _ = writeln!(s, "\n## Notes\n");
            for n in &self.notes {
                let _ = writeln!(s, "- {n}");
            }
        }
        if !timings.is_empty() {
            let _ = writeln!(s, "\n## Timings\n\n| stage | ms |\n|---|---|");
            for (name, t) in timings {
                let _ = writeln!(s, "| {name} | {:.1} |", t.as_secs_f64() * 1e3);
            }
        }
        s
    }
}

pub fn expected_name(e: Expected) -> &'static str {
    match e {
        Expected::Positive => "positive",
        Expected::NotPositive => "not_positive",
    }
}

fn source_name(s: &PairSource) -> String {
    serde_json::to_value(s).ok().and_then(|v| v.get("from").and_then(|f| f.as_str()).map(str::to_string)).unwrap_or_default()
}

fn candidate_name(s: &CandidateSource) -> String {
    serde_json::to_value(s).ok().and_then(|v| v.get("from").and_then(|f| f.as_str()).map(str::to_string)).unwrap_or_default()
}

/// One replay row; timings are kept out so the document is deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayRow {
    pub id: String,
    pub description: String,
    pub expected: Option<Expected>,
    pub verdict: Option<Verdict>,
    pub sampled_family: bool,
    pub matches: bool,
    pub summary: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayDoc {
    pub schema: String,
    pub seed: u64,
    pub samples: usize,
    pub max_n: usize,
    pub rows: Vec<ReplayRow>,
}

impl ReplayDoc {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("replay serializes")
    }

    pub fn to_markdown(&self, timings: &[Duration]) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "| id | triple | expected | got | match | witness | ms |\n|---|---|---|---|---|---|---|");
        for (i, r) in self.rows.iter().enumerate() {
            let got = match r.verdict {
                Some(v) if r.sampled_family => format!("{} (sampled family)", v.as_str()),
                Some(v) => v.as_str().to_string(),
                None => "error".into(),
            };
            let ms = timings.get(i).map(|t| format!("{:.0}", t.as_secs_f64() * 1e3)).unwrap_or_default();
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} | {} |",
                r.id,
                r.description,
                r.expected.map(expected_name).unwrap_or("-"),
                got,
                if r.matches { "yes" } else { "NO" },
                r.summary,
                ms
            );
        }
        let matched = self.rows.iter().filter(|r| r.matches).count();
        let _ = writeln!(s, "\n{matched}/{} entries match.", self.rows.len());
        s
    }
}
