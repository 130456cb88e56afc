//! Bit-parallel linear algebra over F₂.
//!
//! Vectors of F₂^r are r-bit words (coordinate i = bit i, little-endian),
//! subsets of F₂^r are 2^r-bit characteristic masks, subspaces are reduced
//! row-echelon bases, and flats are an anchor plus a direction subspace.
//! Everything downstream (polynomials, codes, constructions, search) sits
//! on this module.

mod blocks;
mod flat;
mod point;
mod set;
mod subspace;

pub use blocks::{direct_sum_split, BlockDecomposition};
pub use flat::{flat_points, FlatF2};
pub use point::{Dim, PointF2};
pub use set::PointSetF2;
pub use subspace::{
    count_subspaces, enumerate_subspaces, from_parity_checks, parity_checks, rank_f2, SubspaceF2,
};
