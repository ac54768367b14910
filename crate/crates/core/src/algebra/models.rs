//! Named algebras and octonionic building blocks.

use std::sync::OnceLock;

use super::classical::{self, build_classical, Family};
use super::composition::CompositionAlgebra;
use super::derivation::{derivation_algebra, stabilizer_subalgebra};
use super::jordan::JordanAlgebraH3O;
use super::lie::{LieAlgebra, Subalgebra};
use super::AlgebraError;
use crate::linalg::matrix::{unit_vec, Matrix};
use crate::linalg::scalar::{self, Scalar};
use crate::linalg::subspace::Subspace;

static G2: OnceLock<LieAlgebra> = OnceLock::new();
static F4: OnceLock<LieAlgebra> = OnceLock::new();

fn imaginary_octonions() -> Subspace {
    Subspace::span(8, &(1..8).map(|i| unit_vec(8, i)).collect::<Vec<_>>())
}

/// Derivations of the octonions acting on `Im O` (7x7, skew-symmetric).
pub fn g2() -> &'static LieAlgebra {
    G2.get_or_init(|| {
        derivation_algebra("g2", &CompositionAlgebra::octonions(), Some(&imaginary_octonions()))
            .and_then(|g| g.with_invariant_form(Matrix::identity(7)))
            .expect("octonion derivations form a Lie algebra")
    })
}

/// Derivations of the exceptional Jordan algebra (27x27).
pub fn f4() -> &'static LieAlgebra {
    F4.get_or_init(|| {
        let mut form = Matrix::identity(27);
        for i in 3..27 {
            form[(i, i)] = scalar::int(2);
        }
        derivation_algebra("f4", &JordanAlgebraH3O::new(), None)
            .and_then(|f| f.with_invariant_form(form))
            .expect("Jordan derivations form a Lie algebra")
    })
}

/// `su(3)`: stabilizer of `e1` in `g2`.
pub fn su3_in_g2() -> Result<Subalgebra, AlgebraError> {
    stabilizer_subalgebra(g2(), &[unit_vec(7, 0)])
}

/// `su(2)`: stabilizer of `e1` and `e2` in `g2`.
pub fn su2_in_g2() -> Result<Subalgebra, AlgebraError> {
    stabilizer_subalgebra(g2(), &[unit_vec(7, 0), unit_vec(7, 1)])
}

/// `spin(9)`: annihilator of `E_11` in `f4`.
pub fn spin9_in_f4() -> Result<Subalgebra, AlgebraError> {
    stabilizer_subalgebra(f4(), &[unit_vec(27, JordanAlgebraH3O::diagonal(0))])
}

/// `spin(8)`: annihilator of all three diagonal idempotents in `f4`.
pub fn spin8_in_f4() -> Result<Subalgebra, AlgebraError> {
    let fixed: Vec<Vec<Scalar>> = (0..3).map(|i| unit_vec(27, JordanAlgebraH3O::diagonal(i))).collect();
    stabilizer_subalgebra(f4(), &fixed)
}

/// Left multiplication by `e_a` on the octonions.
pub fn octonion_left(a: usize) -> Matrix {
    let o = CompositionAlgebra::octonions();
    let mut m = Matrix::zeros(8, 8);
    for s in 0..8 {
        let (r, sign) = o.unit_product(a, s);
        m[(r, s)] = scalar::int(sign as i64);
    }
    m
}

/// `x -> Im(e_a x)` on `Im O`, the cross product with `e_a`.
pub fn cross_product_map(a: usize) -> Matrix {
    let l = octonion_left(a);
    let idx: Vec<usize> = (1..8).collect();
    l.submatrix(&idx, &idx)
}

/// `span{[L_a, L_b]}` for imaginary units: a copy of `spin(7)` in `so(8)`
/// acting on `O` by its spin representation.
pub fn spin7_spinor() -> Result<LieAlgebra, AlgebraError> {
    let mut mats = Vec::new();
    for a in 1..8 {
        for b in a + 1..8 {
            mats.push(octonion_left(a).commutator(&octonion_left(b)));
        }
    }
    LieAlgebra::from_matrices("spin(7)", 8, &mats)?.with_invariant_form(Matrix::identity(8))
}

/// `so(3)_max` inside `sp(2)` (rational model).
pub fn so3max() -> Result<LieAlgebra, AlgebraError> {
    let (g, s) = classical::so3max_sp2()?;
    g.restrict("so(3)_max", &s)
}

fn parse_family_n(name: &str) -> Option<(Family, usize)> {
    let open = name.find('(')?;
    let close = name.strip_suffix(')')?;
    let family = Family::parse(&name[..open])?;
    let n: usize = close[open + 1..].parse().ok()?;
    Some((family, n))
}

/// Looks up an algebra by name: `so(n)`, `u(n)`, `su(n)`, `sp(n)`, `g2`,
/// `f4`, `spin(7)`, `spin(8)`, `spin(9)`, `so(3)_max`.
pub fn by_name(name: &str) -> Result<LieAlgebra, AlgebraError> {
    let name = name.trim();
    if let Some((family, n)) = parse_family_n(name) {
        return build_classical(family, n);
    }
    match name {
        "g2" => Ok(g2().clone()),
        "f4" => Ok(f4().clone()),
        "spin(7)" => spin7_spinor(),
        "spin(8)" => f4().restrict("spin(8)", spin8_in_f4()?.space()),
        "spin(9)" => f4().restrict("spin(9)", spin9_in_f4()?.space()),
        "so(3)_max" => so3max(),
        other => Err(AlgebraError::UnknownAlgebra(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spinor_spin7_contains_a_g2() {
        let s = spin7_spinor().unwrap();
        assert_eq!(s.dim(), 21);
        let stab = stabilizer_subalgebra(&s, &[unit_vec(8, 0)]).unwrap();
        assert_eq!(stab.dim(), 14);
    }

    #[test]
    fn exceptional_dimensions() {
        assert_eq!(g2().dim(), 14);
        assert_eq!(su3_in_g2().unwrap().dim(), 8);
        assert_eq!(su2_in_g2().unwrap().dim(), 3);
        assert_eq!(f4().dim(), 52);
        assert_eq!(spin9_in_f4().unwrap().dim(), 36);
        assert_eq!(spin8_in_f4().unwrap().dim(), 28);
    }

    #[test]
    fn names() {
        assert_eq!(by_name("su(3)").unwrap().dim(), 8);
        assert_eq!(by_name("so(3)_max").unwrap().dim(), 3);
        assert!(by_name("e8").is_err());
    }

    #[test]
    fn cross_product_is_skew() {
        let c = cross_product_map(1);
        assert_eq!(c.transpose(), c.neg());
        assert!(!c.is_zero());
    }
}
