//! Block-diagonal subalgebras of `G(n)` over `R`, `C` or `H`.
//!
//! A layout is a list of diagonal blocks. Each block carries a full `G(s)`,
//! its complex part, or nothing. Blocks sharing a tie letter carry the same
//! element (a diagonal embedding), scaled by their integer weights.

use std::collections::BTreeMap;

use super::classical::{ones, skew_hermitian_basis_units, Field};
use super::embed::pad;
use super::AlgebraError;
use crate::linalg::matrix::Matrix;
use crate::linalg::scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Full,
    /// `u(s) ⊂ sp(s)`: entries in `span{1, i}`.
    Complex,
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub size: usize,
    pub kind: BlockKind,
    pub tie: Option<char>,
    pub weight: i64,
}

impl Block {
    pub fn full(size: usize) -> Self {
        Block { size, kind: BlockKind::Full, tie: None, weight: 1 }
    }

    pub fn zero(size: usize) -> Self {
        Block { size, kind: BlockKind::Zero, tie: None, weight: 1 }
    }

    pub fn complex(size: usize) -> Self {
        Block { size, kind: BlockKind::Complex, tie: None, weight: 1 }
    }

    pub fn tied(size: usize, tie: char) -> Self {
        Block { size, kind: BlockKind::Full, tie: Some(tie), weight: 1 }
    }

    pub fn weighted(tie: char, weight: i64) -> Self {
        Block { size: 1, kind: BlockKind::Full, tie: Some(tie), weight }
    }
}

fn local_basis(field: Field, b: &Block) -> Vec<Matrix> {
    let d = field.dim();
    let (diag, off): (Vec<usize>, Vec<usize>) = match b.kind {
        BlockKind::Zero => return Vec::new(),
        BlockKind::Full => ((1..d).collect(), (0..d).collect()),
        BlockKind::Complex => ((1..d.min(2)).collect(), (0..d.min(2)).collect()),
    };
    skew_hermitian_basis_units(field, &ones(b.size), &diag, &off)
}

/// Generators of the block subalgebra inside `G(n)`, realified to `n * dim K`.
pub fn block_generators(field: Field, n: usize, blocks: &[Block]) -> Result<Vec<Matrix>, AlgebraError> {
    let total: usize = blocks.iter().map(|b| b.size).sum();
    if total != n {
        return Err(AlgebraError::InvalidParameter(format!("block sizes sum to {total}, expected {n}")));
    }
    let d = field.dim();
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut o = 0;
    for b in blocks {
        offsets.push(o);
        o += b.size;
    }
    let place = |m: &Matrix, off: usize, size: usize| pad(m, off * d, (n - off - size) * d);
    let mut out = Vec::new();
    let mut groups: BTreeMap<char, Vec<usize>> = BTreeMap::new();
    for (i, b) in blocks.iter().enumerate() {
        if b.weight != 1 && !(b.size == 1 && field == Field::C && b.tie.is_some()) {
            return Err(AlgebraError::InvalidParameter("weights need a tied complex block of size 1".into()));
        }
        match b.tie {
            Some(c) => groups.entry(c).or_default().push(i),
            None => out.extend(local_basis(field, b).iter().map(|m| place(m, offsets[i], b.size))),
        }
    }
    for (c, members) in groups {
        let first = &blocks[members[0]];
        if members.iter().any(|&i| blocks[i].size != first.size || blocks[i].kind != first.kind) {
            return Err(AlgebraError::InvalidParameter(format!("blocks tied by `{c}` differ in shape")));
        }
        for x in local_basis(field, first) {
            let mut sum = Matrix::zeros(n * d, n * d);
            for &i in &members {
                sum.axpy(&scalar::int(blocks[i].weight), &place(&x, offsets[i], blocks[i].size));
            }
            if !sum.is_zero() {
                out.push(sum);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::classical::unitary_algebra;

    #[test]
    fn diagonal_sp1_in_sp3() {
        let g = unitary_algebra(Field::H, &ones(3)).unwrap();
        let gens = block_generators(Field::H, 3, &[Block::tied(1, 'a'), Block::tied(1, 'a'), Block::full(1)]).unwrap();
        let s = g.span_of(&gens).unwrap();
        assert_eq!(s.dim(), 6);
        assert!(g.is_closed(&s));
    }

    #[test]
    fn weighted_circle() {
        let g = unitary_algebra(Field::C, &ones(3)).unwrap();
        let gens =
            block_generators(Field::C, 3, &[Block::weighted('z', -2), Block::weighted('z', 1), Block::full(1)]).unwrap();
        assert_eq!(g.span_of(&gens).unwrap().dim(), 2);
        assert!(block_generators(Field::H, 1, &[Block::weighted('z', 2)]).is_err());
        assert!(block_generators(Field::C, 2, &[Block::full(1)]).is_err());
    }

    #[test]
    fn complex_part_of_sp2() {
        let gens = block_generators(Field::H, 2, &[Block::complex(2)]).unwrap();
        assert_eq!(gens.len(), 4);
    }
}
