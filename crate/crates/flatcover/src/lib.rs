//! flatcover: d-complete and d-non-blocking subsets of F₂^r.
//!
//! A set C ⊆ F₂^r is *d-complete* if through every point v of the space
//! passes a d-flat contained in C ∪ {v}; a set B is *d-non-blocking* if
//! through every point passes a flat of codimension d meeting B in at most
//! {v}. γ_r(d) is the least size of a d-complete set, β_r(d) the largest
//! size of a d-non-blocking one, and the two are tied by
//! β_r(d) = 2^r − γ_r(r−d).
//!
//! The crate provides:
//!
//! * [`f2`] — bit-parallel vectors, subspaces, flats, enumeration;
//! * [`poly2`] — multilinear polynomials over F₂ (interpolation,
//!   co-flat indicators, evaluation rank);
//! * [`codes`] — simplex and dual-BCH codes with exact weight statistics;
//! * [`constructions`] — explicit complete / non-blocking families, each
//!   carrying a checkable witness map;
//! * [`verify`] — ground-truth oracles by pruned subspace search;
//! * [`exact`] — exact γ/β values at desk scale;
//! * [`bounds`] — every closed-form bound, evaluated exactly;
//! * [`flatset`] — the on-disk set format.

pub mod bits;
pub mod bounds;
pub mod codes;
pub mod constructions;
pub mod error;
pub mod exact;
pub mod f2;
pub mod flatset;
pub mod poly2;
pub mod verify;

pub use error::{Error, Result};
pub use f2::{Dim, PointF2, PointSetF2};
