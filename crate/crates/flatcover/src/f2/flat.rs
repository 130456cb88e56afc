use std::fmt;

use crate::error::Result;
use crate::f2::point::PointF2;
use crate::f2::set::PointSetF2;
use crate::f2::subspace::SubspaceF2;

/// A flat (coset) `anchor + direction` in F₂^r.
///
/// Canonical form: the anchor is reduced modulo the direction, i.e. it is
/// the coordinate-lexicographically least point of the flat. Re-anchoring
/// to any point of the flat therefore yields an identical value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FlatF2 {
    anchor: PointF2,
    direction: SubspaceF2,
}

impl FlatF2 {
    pub fn new(anchor: PointF2, direction: SubspaceF2) -> FlatF2 {
        debug_assert!(direction.ambient().contains_bits(anchor.bits()));
        let anchor = PointF2::from_bits(direction.reduce(anchor.bits()));
        FlatF2 { anchor, direction }
    }

    pub fn anchor(&self) -> PointF2 {
        self.anchor
    }

    pub fn direction(&self) -> &SubspaceF2 {
        &self.direction
    }

    pub fn dim(&self) -> u32 {
        self.direction.dim()
    }

    pub fn codim(&self) -> u32 {
        self.direction.codim()
    }

    pub fn contains(&self, p: PointF2) -> bool {
        self.direction.contains(p ^ self.anchor)
    }

    /// The 2^dim points of the flat.
    pub fn points(&self) -> impl Iterator<Item = PointF2> + '_ {
        self.direction.points().map(move |u| u ^ self.anchor)
    }
}

impl fmt::Debug for FlatF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Flat(anchor={:b}, dim={}, codim={})",
            self.anchor.bits(),
            self.dim(),
            self.codim()
        )
    }
}

/// Materializes `{anchor + u : u in direction}` as a point set.
pub fn flat_points(f: &FlatF2) -> Result<PointSetF2> {
    let mut set = PointSetF2::empty(f.direction.ambient())?;
    for p in f.points() {
        set.insert(p);
    }
    Ok(set)
}
