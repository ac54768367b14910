//! Independent re-check of a report.
//!
//! Rebuilds `g`, `k`, `h` from the stored matrices with linear algebra alone
//! and recomputes every witness claim from matrix commutators and `-tr(XY)`.

use num::Zero;

use super::{CheckReport, SparseMatrix, Verdict, Witness, REPORT_SCHEMA};
use crate::linalg::matrix::{vec_is_zero, Matrix};
use crate::linalg::rref::rref;
use crate::linalg::subspace::independent;
use crate::linalg::{rank, Scalar, Subspace};

const TRANSITIVE_BASES: [u8; 6] = [1, 5, 6, 7, 9, 10];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct VerifyError(pub String);

fn fail<T>(msg: impl Into<String>) -> Result<T, VerifyError> {
    Err(VerifyError(msg.into()))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), VerifyError> {
    if cond {
        Ok(())
    } else {
        fail(msg)
    }
}

/// `g` in the reduced-row basis of its flattened matrices.
struct Frame {
    n: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    gram: Matrix,
}

impl Frame {
    fn new(n: usize, mats: &[Matrix]) -> Result<Self, VerifyError> {
        let flat: Vec<Vec<Scalar>> = mats.iter().map(|m| m.data().to_vec()).collect();
        let red = rref(&Matrix::from_rows(n * n, &flat));
        let rows: Vec<Vec<Scalar>> = red.matrix.row_vecs().into_iter().take(red.pivots.len()).collect();
        let d = rows.len();
        ensure(d == mats.len(), format!("g spanning set is dependent ({} matrices, rank {d})", mats.len()))?;
        let basis: Vec<Matrix> = rows.iter().map(|r| Matrix::from_vec(n, n, r.clone())).collect();
        let mut gram = Matrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let v = -basis[i].trace_product(&basis[j]);
                gram[(i, j)] = v.clone();
                gram[(j, i)] = v;
            }
        }
        Ok(Frame { n, rows, pivots: red.pivots, gram })
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn element(&self, c: &[Scalar]) -> Matrix {
        let mut out = vec![Scalar::zero(); self.n * self.n];
        for (ci, row) in c.iter().zip(&self.rows) {
            if ci.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                *o += ci * r;
            }
        }
        Matrix::from_vec(self.n, self.n, out)
    }

    fn coords(&self, x: &Matrix) -> Option<Vec<Scalar>> {
        if x.rows() != self.n || x.cols() != self.n {
            return None;
        }
        let c: Vec<Scalar> = self.pivots.iter().map(|&p| x.data()[p].clone()).collect();
        (self.element(&c) == *x).then_some(c)
    }

    fn parse(&self, m: &SparseMatrix, what: &str) -> Result<Vec<Scalar>, VerifyError> {
        let x = m.to_matrix(self.n).map_err(|e| VerifyError(format!("{what}: {e}")))?;
        self.coords(&x).ok_or_else(|| VerifyError(format!("{what} is not in g")))
    }

    fn parse_all(&self, ms: &[SparseMatrix], what: &str) -> Result<Vec<Vec<Scalar>>, VerifyError> {
        ms.iter().map(|m| self.parse(m, what)).collect()
    }

    fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let c = self.element(u).commutator(&self.element(v));
        self.coords(&c).expect("g is closed")
    }

    fn is_closed(&self, s: &Subspace) -> bool {
        let b = s.basis_vecs();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let c = self.element(&b[i]).commutator(&self.element(&b[j]));
                match self.coords(&c) {
                    Some(v) if s.contains(&v) => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// `{X ∈ domain : [X, y] = 0 for all y}`.
    fn centralizer(&self, domain: &Subspace, of: &[Vec<Scalar>]) -> Subspace {
        let b = domain.basis_vecs();
        if b.is_empty() {
            return domain.clone();
        }
        let mut cols: Vec<Vec<Scalar>> = vec![Vec::new(); b.len()];
        for y in of {
            for (i, x) in b.iter().enumerate() {
                cols[i].extend(self.bracket(x, y));
            }
        }
        if cols[0].is_empty() {
            return domain.clone();
        }
        // Coefficient vectors c with sum_i c_i [b_i, y] = 0.
        let m = Matrix::from_rows(cols[0].len(), &cols).transpose();
        let null = crate::linalg::rref::nullspace_rows(&m);
        let vecs: Vec<Vec<Scalar>> = null.iter().map(|c| domain.combination(c)).collect();
        Subspace::span(self.dim(), &vecs)
    }
}

struct Parts {
    k: Subspace,
    m: Subspace,
    p: Subspace,
    mp: Subspace,
    proj_m: Matrix,
    proj_k: Matrix,
}

fn project(proj: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    proj.mul_vec(v)
}

fn sub(f: &Frame, ms: &[SparseMatrix], what: &str) -> Result<Subspace, VerifyError> {
    Ok(Subspace::span(f.dim(), &f.parse_all(ms, what)?))
}

fn lin(e: crate::linalg::LinalgError) -> VerifyError {
    VerifyError(format!("linear algebra: {e}"))
}

/// Checks every witness against the stored triple from scratch, and that the
/// witnesses support the verdict.
pub fn verify_report(r: &CheckReport) -> Result<(), VerifyError> {
    ensure(r.schema == REPORT_SCHEMA, format!("unknown schema `{}`", r.schema))?;
    let doc = &r.triple;
    let mats: Vec<Matrix> = doc
        .g
        .iter()
        .map(|m| m.to_matrix(doc.matrix_size))
        .collect::<Result<_, _>>()
        .map_err(|e| VerifyError(format!("g: {e}")))?;
    let f = Frame::new(doc.matrix_size, &mats)?;
    ensure(f.is_closed(&Subspace::full(f.dim())), "g is not closed under brackets")?;
    let k = sub(&f, &doc.k, "k")?;
    let h = sub(&f, &doc.h, "h")?;
    ensure(k.contains_subspace(&h), "h is not inside k")?;
    ensure(f.is_closed(&k), "k is not a subalgebra")?;
    ensure(f.is_closed(&h), "h is not a subalgebra")?;
    let m = h.orthocomplement(&k, &f.gram).map_err(lin)?;
    let p = k.orthocomplement(&Subspace::full(f.dim()), &f.gram).map_err(lin)?;
    let mp = m.sum(&p).map_err(lin)?;
    let proj_m = m.projector(&f.gram).map_err(lin)?;
    let proj_k = k.projector(&f.gram).map_err(lin)?;
    let d = r.dims;
    ensure(
        (d.g, d.k, d.h, d.m, d.p) == (f.dim(), k.dim(), h.dim(), m.dim(), p.dim()),
        "stored dimensions disagree with the triple",
    )?;
    let parts = Parts { k, m, p, mp, proj_m, proj_k };
    for (i, w) in r.witnesses.iter().enumerate() {
        check_witness(&f, &parts, w).map_err(|e| VerifyError(format!("witness {i}: {}", e.0)))?;
    }
    check_support(r)
}

fn pair_shape(f: &Frame, s: &Parts, z: &[Scalar], w: &[Scalar]) -> Result<(), VerifyError> {
    ensure(s.mp.contains(z), "Z is not in m + p")?;
    ensure(s.p.contains(w), "W is not in p")?;
    ensure(independent(z, w), "Z and W are dependent")?;
    ensure(vec_is_zero(&f.bracket(z, w)), "[Z, W] != 0")
}

fn pair_kills(f: &Frame, s: &Parts, a: &[Scalar], z: &[Scalar], w: &[Scalar]) -> bool {
    let x = project(&s.proj_m, z);
    let y = project(&s.proj_k, &f.bracket(a, w));
    vec_is_zero(&f.bracket(&x, &y))
}

fn check_witness(f: &Frame, s: &Parts, w: &Witness) -> Result<(), VerifyError> {
    match w {
        Witness::CommonIdeal { .. } => Ok(()),
        Witness::TrivialFactor { basis } => {
            let b = f.parse_all(basis, "factor")?;
            ensure(!b.is_empty(), "empty factor")?;
            for v in &b {
                ensure(s.p.contains(v), "factor vector is not in p")?;
                for y in s.k.basis_vecs() {
                    ensure(vec_is_zero(&f.bracket(v, &y)), "factor vector does not commute with k")?;
                }
            }
            Ok(())
        }
        Witness::Isotropy { components } => {
            let total: usize = components.iter().map(|c| c.dim).sum();
            ensure(total == s.p.dim(), "component dimensions do not add up to dim p")
        }
        Witness::DimensionBound { rule, dim_m, dim_p1, dim_p2, bound, statement, p1 } => {
            let p1 = sub(f, p1, "p1")?;
            ensure(!p1.is_zero() && s.p.contains_subspace(&p1), "p1 is not a nonzero subspace of p")?;
            ensure(p1.dim() == *dim_p1 && s.m.dim() == *dim_m, "dimensions of p1 or m disagree")?;
            for y in s.k.basis_vecs() {
                for v in p1.basis_vecs() {
                    ensure(p1.contains(&f.bracket(&y, &v)), "p1 is not k-invariant")?;
                }
            }
            match rule {
                crate::triple::isotropy::DimRule::Split => {
                    let p2 = p1.orthocomplement(&s.p, &f.gram).map_err(lin)?;
                    ensure(Some(p2.dim()) == *dim_p2, "dim p2 disagrees")?;
                    ensure(f.is_closed(&s.k.sum(&p1).map_err(lin)?), "k + p1 is not a subalgebra")?;
                    let b = p2.dim() as i64 - p1.dim() as i64;
                    ensure(*bound == b, "bound arithmetic")?;
                    ensure(*statement == format!("dim(m) < {}-{} = {b}", p2.dim(), p1.dim()), "statement text")?;
                }
                crate::triple::isotropy::DimRule::Component => {
                    ensure(*bound == p1.dim() as i64, "bound arithmetic")?;
                    ensure(*statement == format!("dim(m) < dim(p_i) = {}", p1.dim()), "statement text")?;
                }
            }
            ensure(s.m.dim() as i64 >= *bound, "the bound is not violated")
        }
        Witness::CatalogTags { base, fiber, transitive_base } => {
            ensure(base.is_some() && fiber.is_some(), "missing tag")?;
            ensure(*transitive_base == base.is_some_and(|b| TRANSITIVE_BASES.contains(&b)), "transitive flag")
        }
        Witness::CommutingProbes { space, samples, centralizer_dims } => {
            let dom = match space.as_str() {
                "p" => &s.p,
                "m" => &s.m,
                other => return fail(format!("unknown probe space `{other}`")),
            };
            ensure(samples.len() == centralizer_dims.len(), "probe count")?;
            for (x, dim) in f.parse_all(samples, "probe")?.iter().zip(centralizer_dims) {
                ensure(dom.contains(x), "probe outside its space")?;
                ensure(f.centralizer(dom, &[x.clone()]).dim() == *dim, "centralizer dimension")?;
            }
            Ok(())
        }
        Witness::Transitivity { expected, samples, ranks } => {
            ensure(*expected + 1 == s.p.dim(), "expected rank is not dim p - 1")?;
            ensure(samples.len() == ranks.len(), "sample count")?;
            let kb = s.k.basis_vecs();
            for (w, rk) in f.parse_all(samples, "transitivity sample")?.iter().zip(ranks) {
                ensure(s.p.contains(w), "sample outside p")?;
                let images: Vec<Vec<Scalar>> = kb.iter().map(|y| f.bracket(y, w)).collect();
                ensure(rank(&Matrix::from_rows(f.dim(), &images)) == *rk, "orbit rank")?;
            }
            Ok(())
        }
        Witness::FatVector { a, kernel_k, strongly_fat, .. } => {
            let a = f.parse(a, "A")?;
            ensure(s.p.contains(&a) && !vec_is_zero(&a), "A is not a nonzero vector of p")?;
            let c = |dom: &Subspace| f.centralizer(dom, &[a.clone()]);
            ensure(c(&s.m).is_zero(), "A commutes with a nonzero vector of m")?;
            ensure(sub(f, kernel_k, "kernel")? == c(&s.k), "kernel in k disagrees")?;
            ensure((c(&s.mp).dim() == 1) == *strongly_fat, "strongly fat flag")
        }
        Witness::CommutingPair { z, w, universal, .. } => {
            let (z, w) = (f.parse(z, "Z")?, f.parse(w, "W")?);
            pair_shape(f, s, &z, &w)?;
            if *universal {
                for a in Subspace::full(f.dim()).basis_vecs() {
                    ensure(pair_kills(f, s, &a, &z, &w), "pair fails for a basis vector of g")?;
                }
            }
            Ok(())
        }
        Witness::SampledFamily { pairs } => {
            ensure(!pairs.is_empty(), "empty family")?;
            for fp in pairs {
                let (a, z, w) = (f.parse(&fp.a, "A")?, f.parse(&fp.z, "Z")?, f.parse(&fp.w, "W")?);
                ensure(s.p.contains(&a), "A is not in p")?;
                pair_shape(f, s, &z, &w)?;
                ensure(pair_kills(f, s, &a, &z, &w), "pair fails for its A")?;
            }
            Ok(())
        }
    }
}

fn check_support(r: &CheckReport) -> Result<(), VerifyError> {
    let ws = &r.witnesses;
    let has = |pred: fn(&Witness) -> bool| ws.iter().any(pred);
    let refuting = ws.iter().any(Witness::is_refutation);
    let certifying = has(|w| matches!(w, Witness::FatVector { .. }));
    ensure(!(refuting && certifying), "report holds both a certificate and a refutation")?;
    match r.verdict {
        Verdict::CertifiedPositive => {
            ensure(has(|w| matches!(w, Witness::CatalogTags { transitive_base: true, .. })), "no transitive base tag")?;
            for space in ["p", "m"] {
                let ok = ws.iter().any(|w| {
                    matches!(w, Witness::CommutingProbes { space: s, centralizer_dims, .. }
                        if s == space && !centralizer_dims.is_empty() && centralizer_dims.iter().all(|&d| d == 1))
                });
                ensure(ok, format!("no passing probes in {space}"))?;
            }
            ensure(
                has(|w| matches!(w, Witness::Transitivity { expected, ranks, .. } if ranks.iter().all(|r| r == expected))),
                "no transitivity evidence",
            )?;
            ensure(certifying, "no fat vector")
        }
        Verdict::Refuted => {
            ensure(refuting, "no refuting witness")?;
            let sampled_only = !ws.iter().any(|w| w.is_refutation() && !matches!(w, Witness::SampledFamily { .. }));
            ensure(r.sampled_family == sampled_only, "sampled_family flag disagrees with the witnesses")
        }
        Verdict::Inconclusive => ensure(!refuting && !certifying, "inconclusive report holds a decisive witness"),
    }
}
