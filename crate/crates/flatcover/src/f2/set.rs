use std::fmt;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::f2::point::{Dim, PointF2};

/// A subset of F₂^r as a 2^r-bit characteristic mask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSetF2 {
    r: Dim,
    mask: Bits,
}

impl PointSetF2 {
    pub fn empty(r: Dim) -> Result<PointSetF2> {
        if r.get() > Dim::DEFAULT_CAP {
            return Err(Error::infeasible(format!(
                "characteristic mask for r={r} exceeds the 2^{} bit cap",
                Dim::DEFAULT_CAP
            )));
        }
        Ok(PointSetF2 {
            r,
            mask: Bits::zeros(1usize << r.get()),
        })
    }

    pub fn full(r: Dim) -> Result<PointSetF2> {
        let mut s = PointSetF2::empty(r)?;
        let n = 1usize << r.get();
        for w in s.mask.words_mut() {
            *w = u64::MAX;
        }
        if !n.is_multiple_of(64) {
            let last = s.mask.words_mut().last_mut().unwrap();
            *last &= (1u64 << (n % 64)) - 1;
        }
        Ok(s)
    }

    pub fn from_points<I: IntoIterator<Item = PointF2>>(r: Dim, points: I) -> Result<PointSetF2> {
        let mut s = PointSetF2::empty(r)?;
        for p in points {
            if !r.contains_bits(p.bits()) {
                return Err(Error::parameter(format!(
                    "point {:#x} outside F_2^{r}",
                    p.bits()
                )));
            }
            s.insert(p);
        }
        Ok(s)
    }

    pub fn dim(&self) -> Dim {
        self.r
    }

    #[inline]
    pub fn contains(&self, p: PointF2) -> bool {
        self.mask.get(p.bits() as usize)
    }

    #[inline]
    pub fn insert(&mut self, p: PointF2) {
        self.mask.set(p.bits() as usize);
    }

    #[inline]
    pub fn remove(&mut self, p: PointF2) {
        self.mask.clear(p.bits() as usize);
    }

    /// Cardinality.
    pub fn len(&self) -> u64 {
        self.mask.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.mask.is_zero()
    }

    pub fn complement(&self) -> PointSetF2 {
        let mut out = self.clone();
        let n = 1usize << self.r.get();
        for w in out.mask.words_mut() {
            *w = !*w;
        }
        if !n.is_multiple_of(64) {
            let last = out.mask.words_mut().last_mut().unwrap();
            *last &= (1u64 << (n % 64)) - 1;
        }
        out
    }

    pub fn union(&self, other: &PointSetF2) -> PointSetF2 {
        debug_assert_eq!(self.r, other.r);
        let mut out = self.clone();
        for (a, b) in out.mask.words_mut().iter_mut().zip(other.mask.words()) {
            *a |= b;
        }
        out
    }

    pub fn intersection(&self, other: &PointSetF2) -> PointSetF2 {
        debug_assert_eq!(self.r, other.r);
        let mut out = self.clone();
        for (a, b) in out.mask.words_mut().iter_mut().zip(other.mask.words()) {
            *a &= b;
        }
        out
    }

    pub fn is_subset_of(&self, other: &PointSetF2) -> bool {
        self.mask
            .words()
            .iter()
            .zip(other.mask.words())
            .all(|(a, b)| a & !b == 0)
    }

    /// Ascending iterator over member points.
    pub fn iter(&self) -> impl Iterator<Item = PointF2> + '_ {
        self.mask.ones().map(|i| PointF2::from_bits(i as u64))
    }

    /// Translate the whole set by `t` (bit permutation of the mask).
    pub fn translate(&self, t: PointF2) -> PointSetF2 {
        let mut out = PointSetF2::empty(self.r).expect("same r");
        for p in self.iter() {
            out.insert(p ^ t);
        }
        out
    }

    pub(crate) fn mask_words(&self) -> &[u64] {
        self.mask.words()
    }
}

impl fmt::Debug for PointSetF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet(r={}, n={}, {{", self.r, self.len())?;
        for (i, p) in self.iter().take(16).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", p.to_bit_string(self.r))?;
        }
        if self.len() > 16 {
            write!(f, ", ...")?;
        }
        write!(f, "}})")
    }
}
