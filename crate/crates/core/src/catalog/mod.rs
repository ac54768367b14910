//! The catalog of positive triples and negative fixtures, the check
//! pipeline and the classification replay.

pub mod fixtures;
pub mod pipeline;
pub mod spec;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::blocks::{block_generators, Block, BlockKind};
use crate::algebra::classical::{ones, unitary_algebra, Field};
use crate::algebra::{build_classical, AlgebraError, Family};
use crate::linalg::{LinalgError, Subspace};
use crate::triple::{cheeger_extend, make_triple, NestedTriple, Tags, TripleError};

pub use pipeline::{replay, run_check, run_triple, Outcome, RunConfig};
pub use spec::parse_spec;

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("spec parse error on line {line}: {message}")]
    SpecParse { line: usize, message: String },
    #[error("construction failed: {0}")]
    Build(String),
    #[error("soundness violation in {0}: a certified triple was also refuted")]
    Unsound(String),
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    Positive,
    NotPositive,
}

/// A triple of block-diagonal subalgebras of `G(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSpec {
    pub field: Field,
    pub n: usize,
    pub k: Vec<Block>,
    pub h: Vec<Block>,
    /// Intersect all three algebras with `su(n)`.
    pub traceless: bool,
    pub tags: Tags,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fixture {
    G2InSo7,
    Su2InSu3InG2,
    U2InSu3InG2,
    So3MaxInSp3,
    Spin8InSpin9InF4,
    So3MaxInSp2,
    Sp2InSu5,
    DeltaSp1 { n: usize },
    Spin7InSo9,
    DeltaU2,
    Su2InSu3,
    Sp1InSp2,
    U2InU3,
    Sp1Circle,
    SplitIdeal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Blocks(BlockSpec),
    Fixture(Fixture),
    /// A fixture extended by a circle commuting with `h`, at slope `(k, l)`.
    CircleExtension { base: Fixture, slope: (i64, i64) },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    /// The triple in words.
    pub description: String,
    /// `None` for inline specs without an expectation.
    pub expected: Option<Expected>,
    pub recipe: Recipe,
    /// Family parameter, capped by `max_n`.
    pub n: Option<usize>,
}

fn blocks_text(blocks: &[Block]) -> String {
    blocks
        .iter()
        .map(|b| {
            let mut s = b.size.to_string();
            match (b.kind, b.tie) {
                (BlockKind::Zero, _) => s.push('z'),
                (BlockKind::Complex, _) => s.push('c'),
                (BlockKind::Full, Some(c)) => s.push(c),
                (BlockKind::Full, None) => {}
            }
            if b.weight != 1 {
                s.push_str(&format!(":{}", b.weight));
            }
            s
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Blocks(b) => write!(
                f,
                "blocks field={} n={} k=[{}] h=[{}]{}",
                b.field.letter(),
                b.n,
                blocks_text(&b.k),
                blocks_text(&b.h),
                if b.traceless { " traceless" } else { "" }
            ),
            Recipe::Fixture(x) => write!(f, "fixture {x:?}"),
            Recipe::CircleExtension { base, slope } => write!(f, "fixture {base:?} + u(1) slope ({}, {})", slope.0, slope.1),
        }
    }
}

fn traceless_part(g: &crate::algebra::LieAlgebra, s: &Subspace, su: &crate::algebra::LieAlgebra) -> Result<Subspace, CatalogError> {
    let su_in_u = g.span_of(su.basis())?;
    let cut = s.intersect(&su_in_u)?;
    Ok(su.span_of(&g.matrices_of(&cut))?)
}

/// Builds a block triple, intersected with `su(n)` when `traceless`.
pub fn build_blocks(id: &str, spec: &BlockSpec) -> Result<NestedTriple, CatalogError> {
    let u = unitary_algebra(spec.field, &ones(spec.n))?;
    let k = u.span_of(&block_generators(spec.field, spec.n, &spec.k)?)?;
    let h = u.span_of(&block_generators(spec.field, spec.n, &spec.h)?)?;
    let t = if spec.traceless {
        if spec.field != Field::C {
            return Err(CatalogError::Build("traceless needs field C".into()));
        }
        let su = build_classical(Family::Su, spec.n)?;
        let (k2, h2) = (traceless_part(&u, &k, &su)?, traceless_part(&u, &h, &su)?);
        make_triple(id, Arc::new(su), k2, h2)?
    } else {
        make_triple(id, Arc::new(u), k, h)?
    };
    Ok(t.with_tags(spec.tags))
}

pub fn build_fixture(id: &str, f: Fixture) -> Result<NestedTriple, CatalogError> {
    use fixtures::*;
    match f {
        Fixture::G2InSo7 => g2_in_so7(id),
        Fixture::Su2InSu3InG2 => su3_in_g2_triple(id, false),
        Fixture::U2InSu3InG2 => su3_in_g2_triple(id, true),
        Fixture::So3MaxInSp3 => so3max_in_sp3(id),
        Fixture::Spin8InSpin9InF4 => spin9_in_f4_triple(id),
        Fixture::So3MaxInSp2 => so3max_in_sp2(id),
        Fixture::Sp2InSu5 => sp2_in_su5(id),
        Fixture::DeltaSp1 { n } => delta_sp1(id, n),
        Fixture::Spin7InSo9 => spin7_in_so9(id),
        Fixture::DeltaU2 => delta_u2(id),
        Fixture::Su2InSu3 => su2_in_su3(id),
        Fixture::Sp1InSp2 => sp1_in_sp2(id),
        Fixture::U2InU3 => u2_in_u3(id),
        Fixture::Sp1Circle => sp1_circle(id),
        Fixture::SplitIdeal => split_ideal(id),
    }
}

impl CatalogEntry {
    pub fn build(&self) -> Result<NestedTriple, CatalogError> {
        match &self.recipe {
            Recipe::Blocks(b) => build_blocks(&self.id, b),
            Recipe::Fixture(f) => build_fixture(&self.id, *f),
            Recipe::CircleExtension { base, slope } => {
                let t = build_fixture(&self.id, *base)?;
                let circle = build_classical(Family::So, 2)?;
                let iota = fixtures::u1_commuting_with_su2(&t);
                let mut ext = cheeger_extend(&t, &circle, &[iota], *slope, None)?.triple;
                ext.id = self.id.clone();
                Ok(ext)
            }
        }
    }
}

fn full(n: usize) -> Block {
    Block::full(n)
}

fn tied(n: usize) -> Block {
    Block::tied(n, 'a')
}

fn g_letter(f: Field) -> &'static str {
    match f {
        Field::R => "O",
        Field::C => "U",
        Field::H => "Sp",
    }
}

fn entry(id: String, description: String, expected: Expected, recipe: Recipe, n: Option<usize>) -> CatalogEntry {
    CatalogEntry { id, description, expected: Some(expected), recipe, n }
}

fn t1(field: Field, n: usize) -> CatalogEntry {
    let (base, fiber) = match field {
        Field::R => (1, 1),
        Field::C => (7, 14),
        Field::H => (9, 16),
    };
    let g = g_letter(field);
    entry(
        format!("T1-{}-n{n}", field.letter()),
        format!("diag(z,z,A) ⊂ {g}(1)×{g}({n}) ⊂ {g}({})", n + 1),
        Expected::Positive,
        Recipe::Blocks(BlockSpec {
            field,
            n: n + 1,
            k: vec![full(1), full(n)],
            h: vec![tied(1), tied(1), full(n - 1)],
            traceless: false,
            tags: Tags::new(base, fiber),
        }),
        Some(n),
    )
}

fn t3(field: Field, base: u8) -> CatalogEntry {
    let g = g_letter(field);
    entry(
        format!("T3-{}-n2", field.letter()),
        format!("diag(z1,z2,A) ⊂ {g}(1)×{g}(2) ⊂ {g}(3)"),
        Expected::Positive,
        Recipe::Blocks(BlockSpec {
            field,
            n: 3,
            k: vec![full(1), full(2)],
            h: vec![full(1), full(1), full(1)],
            traceless: false,
            tags: Tags::new(base, 1),
        }),
        Some(2),
    )
}

fn t4(n: usize, enlarged: bool) -> CatalogEntry {
    let (id, mid, fiber) = if enlarged { (format!("ThmE-4-n{n}"), Block::complex(1), 8) } else { (format!("T4-n{n}"), Block::zero(1), 3) };
    let what = if enlarged { "diag(z,η,A)" } else { "diag(z,1,A)" };
    entry(
        id,
        format!("{what} ⊂ Sp(1)×Sp({n}) ⊂ Sp({})", n + 1),
        Expected::Positive,
        Recipe::Blocks(BlockSpec {
            field: Field::H,
            n: n + 1,
            k: vec![full(1), full(n)],
            h: vec![full(1), mid, full(n - 1)],
            traceless: false,
            tags: Tags::new(9, fiber),
        }),
        Some(n),
    )
}

fn t5(n: usize, k: i64, l: i64, traceless: bool) -> CatalogEntry {
    let name = if traceless { "T5p" } else { "T5" };
    let (ambient, mid) = if traceless { (format!("SU({})", n + 1), format!("S(U(1)×U({n}))")) } else { (format!("U({})", n + 1), format!("U(1)×U({n})")) };
    entry(
        format!("{name}-n{n}-k{k}-l{l}"),
        format!("diag(z^{k},z^{l},A){} ⊂ {mid} ⊂ {ambient}", if traceless { " ∩ SU" } else { "" }),
        Expected::Positive,
        Recipe::Blocks(BlockSpec {
            field: Field::C,
            n: n + 1,
            k: vec![full(1), full(n)],
            h: vec![Block::weighted('t', k), Block::weighted('t', l), full(n - 1)],
            traceless,
            tags: Tags::new(7, 14),
        }),
        Some(n),
    )
}

fn fixture(id: &str, description: &str, expected: Expected, f: Fixture) -> CatalogEntry {
    entry(id.into(), description.into(), expected, Recipe::Fixture(f), None)
}

/// All entries with family parameter at most `max_n`, in catalog order.
pub fn catalog(max_n: usize) -> Vec<CatalogEntry> {
    use Expected::*;
    let mut out = Vec::new();
    let ns = || 2..=max_n.max(2);
    for field in [Field::R, Field::C, Field::H] {
        for n in ns() {
            out.push(t1(field, n));
        }
    }
    out.push(t3(Field::C, 7));
    out.push(t3(Field::H, 9));
    for n in ns() {
        out.push(t4(n, false));
    }
    for n in ns() {
        for traceless in [false, true] {
            for (k, l) in [(1, 1), (-(n as i64), 1), (1, 0)] {
                out.push(t5(n, k, l, traceless));
            }
        }
    }
    out.push(entry(
        "green-n2".into(),
        "S(U(1)×U(1)×U(1)) ⊂ S(U(1)×U(2)) ⊂ SU(3)".into(),
        Positive,
        Recipe::Blocks(BlockSpec {
            field: Field::C,
            n: 3,
            k: vec![full(1), full(2)],
            h: vec![full(1), full(1), full(1)],
            traceless: true,
            tags: Tags::new(7, 7),
        }),
        Some(2),
    ));
    out.push(fixture("ThmE-1", "su(3) ⊂ g2 ⊂ so(7)", Positive, Fixture::G2InSo7));
    out.push(fixture("ThmE-2", "su(2) ⊂ su(3) ⊂ g2", Positive, Fixture::Su2InSu3InG2));
    out.push(fixture("ThmE-3", "u(2) ⊂ su(3) ⊂ g2", Positive, Fixture::U2InSu3InG2));
    for n in ns() {
        out.push(t4(n, true));
    }
    out.push(fixture("ThmE-5", "so(3)_max ⊕ sp(1) ⊂ sp(2) ⊕ sp(1) ⊂ sp(3)", Positive, Fixture::So3MaxInSp3));
    for k in [1, 2, 3] {
        out.push(entry(
            format!("ThmE-2-ext-k{k}-l1"),
            format!("su(2) ⊕ Δ_({k},1)u(1) ⊂ su(3) ⊕ u(1) ⊂ g2 ⊕ u(1)"),
            Positive,
            Recipe::CircleExtension { base: Fixture::Su2InSu3InG2, slope: (k, 1) },
            None,
        ));
    }
    out.push(fixture("T2P", "spin(8) ⊂ spin(9) ⊂ f4", Positive, Fixture::Spin8InSpin9InF4));
    out.push(fixture("B11", "so(2) ⊂ so(3)_max ⊂ sp(2)", NotPositive, Fixture::So3MaxInSp2));
    out.push(fixture("B12", "sp(2) ⊂ sp(2) ⊕ u(1) ⊂ su(5)", NotPositive, Fixture::Sp2InSu5));
    for n in ns() {
        out.push(entry(
            format!("B16-n{n}"),
            format!("sp({n}) ⊕ u(1) ⊂ sp({n}) ⊕ Δsp(1) ⊂ sp({}) ⊕ sp(1)", n + 1),
            NotPositive,
            Recipe::Fixture(Fixture::DeltaSp1 { n }),
            Some(n),
        ));
    }
    out.push(fixture("BT4", "g2 ⊂ spin(7) ⊂ so(9)", NotPositive, Fixture::Spin7InSo9));
    out.push(fixture("BT13", "Δsu(2) ⊂ Δu(2) ⊂ su(3) ⊕ so(3)", NotPositive, Fixture::DeltaU2));
    out.push(fixture("BT2", "u(1) ⊂ su(2) ⊂ su(3)", NotPositive, Fixture::Su2InSu3));
    out.push(fixture("BT3", "u(1) ⊂ sp(1) ⊂ sp(2)", NotPositive, Fixture::Sp1InSp2));
    out.push(fixture("BT14", "su(2) ⊂ u(2) ⊂ u(3)", NotPositive, Fixture::U2InU3));
    out.push(fixture("BT15", "sp(1) ⊂ sp(1) ⊕ Δu(1) ⊂ sp(2) ⊕ u(1)", NotPositive, Fixture::Sp1Circle));
    out.push(fixture("split-ideal", "so(3) ⊕ so(2) ⊂ so(3) ⊕ so(3) ⊂ so(4) ⊕ so(3)", NotPositive, Fixture::SplitIdeal));
    out
}

/// Family parameter encoded in an id such as `T1-H-n3`.
fn id_parameter(id: &str) -> Option<usize> {
    id.split('-').find_map(|part| part.strip_prefix('n').and_then(|d| d.parse().ok()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    All,
    Positive,
    Negative,
}

pub fn catalog_list(filter: Filter, max_n: usize) -> Vec<CatalogEntry> {
    catalog(max_n)
        .into_iter()
        .filter(|e| match filter {
            Filter::All => true,
            Filter::Positive => e.expected == Some(Expected::Positive),
            Filter::Negative => e.expected == Some(Expected::NotPositive),
        })
        .collect()
}

pub fn find(id: &str) -> Result<CatalogEntry, CatalogError> {
    let max_n = id_parameter(id).unwrap_or(2).max(2);
    catalog(max_n).into_iter().find(|e| e.id == id).ok_or_else(|| CatalogError::UnknownEntry(id.into()))
}
