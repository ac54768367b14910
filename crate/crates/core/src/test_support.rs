use crate::algebra::{block_generators, Block, Field, LieAlgebra};
use crate::linalg::Subspace;

/// `so(len)` on the indices `start..start + len` of `so(n)`.
pub fn so_block(g: &LieAlgebra, n: usize, start: usize, len: usize) -> Subspace {
    let blocks = [Block::zero(start), Block::full(len), Block::zero(n - start - len)];
    let blocks: Vec<Block> = blocks.into_iter().filter(|b| b.size > 0).collect();
    g.span_of(&block_generators(Field::R, n, &blocks).unwrap()).unwrap()
}

pub fn so2_so3_so4() -> crate::triple::NestedTriple {
    let g = std::sync::Arc::new(crate::algebra::build_classical(crate::algebra::Family::So, 4).unwrap());
    let k = so_block(&g, 4, 0, 3);
    let h = so_block(&g, 4, 0, 2);
    crate::triple::make_triple("so2-so3-so4", g, k, h).unwrap()
}
