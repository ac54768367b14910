//! Exact verification of positive triples of compact Lie algebras.

pub mod algebra;
pub mod catalog;
pub mod linalg;
pub mod report;
pub mod triple;

#[cfg(test)]
pub(crate) mod test_support;
