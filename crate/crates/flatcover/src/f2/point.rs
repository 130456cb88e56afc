use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use crate::error::{Error, Result};

/// Ambient dimension r of F₂^r, validated on construction.
///
/// The default cap keeps 2^r-bit characteristic masks at desk scale
/// (2^30 bits = 128 MiB). Constructions that never materialize a mask may
/// raise the cap to 64 via [`Dim::with_cap`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dim(u32);

impl Dim {
    /// Default cap on r; also the cap for materialized point-set masks.
    pub const DEFAULT_CAP: u32 = 30;
    /// Absolute cap: points are stored in a single 64-bit word.
    pub const HARD_CAP: u32 = 64;

    pub fn new(r: u32) -> Result<Dim> {
        Dim::with_cap(r, Dim::DEFAULT_CAP)
    }

    pub fn with_cap(r: u32, cap: u32) -> Result<Dim> {
        let cap = cap.min(Dim::HARD_CAP);
        if r == 0 || r > cap {
            return Err(Error::InvalidDimension { r, cap });
        }
        Ok(Dim(r))
    }

    #[inline]
    pub const fn get(self) -> u32 {
        self.0
    }

    /// 2^r as a point count.
    pub fn point_count(self) -> u128 {
        1u128 << self.0
    }

    /// Low-r-bits word mask.
    #[inline]
    pub const fn word_mask(self) -> u64 {
        if self.0 == 64 {
            u64::MAX
        } else {
            (1u64 << self.0) - 1
        }
    }

    #[inline]
    pub fn contains_bits(self, bits: u64) -> bool {
        bits & !self.word_mask() == 0
    }

    /// Iterates all 2^r points in word order. Only sensible for small r.
    pub fn points(self) -> impl Iterator<Item = PointF2> {
        debug_assert!(self.0 < 64);
        (0..(1u64 << self.0)).map(PointF2::from_bits)
    }
}

impl fmt::Debug for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dim({})", self.0)
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A vector of F₂^r packed into a word: coordinate i is bit i.
///
/// Points do not carry r themselves; containers do, and checked
/// constructors enforce `bits < 2^r` at the boundaries.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PointF2(u64);

impl PointF2 {
    pub const ZERO: PointF2 = PointF2(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> PointF2 {
        PointF2(bits)
    }

    pub fn checked(bits: u64, r: Dim) -> Result<PointF2> {
        if !r.contains_bits(bits) {
            return Err(Error::parameter(format!(
                "point {bits:#x} does not fit in {r} bits"
            )));
        }
        Ok(PointF2(bits))
    }

    /// Standard basis vector e_i.
    pub fn unit(i: u32) -> PointF2 {
        debug_assert!(i < 64);
        PointF2(1u64 << i)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn coord(self, i: u32) -> bool {
        (self.0 >> i) & 1 == 1
    }

    /// Hamming weight.
    #[inline]
    pub const fn weight(self) -> u32 {
        self.0.count_ones()
    }

    /// r-character binary string, coordinate 0 leftmost (the flatset format).
    pub fn to_bit_string(self, r: Dim) -> String {
        (0..r.get())
            .map(|i| if self.coord(i) { '1' } else { '0' })
            .collect()
    }

    /// Parses the flatset point syntax: exactly r chars of `0`/`1`,
    /// coordinate 0 leftmost.
    pub fn parse_bit_string(s: &str, r: Dim) -> Result<PointF2> {
        if s.len() != r.get() as usize {
            return Err(Error::Format(format!(
                "point line has {} chars, expected r={}",
                s.len(),
                r
            )));
        }
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '1' => bits |= 1u64 << i,
                '0' => {}
                _ => return Err(Error::Format(format!("invalid character {c:?} in point"))),
            }
        }
        Ok(PointF2(bits))
    }
}

impl BitXor for PointF2 {
    type Output = PointF2;
    #[inline]
    fn bitxor(self, rhs: PointF2) -> PointF2 {
        PointF2(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for PointF2 {
    #[inline]
    fn bitxor_assign(&mut self, rhs: PointF2) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Debug for PointF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{:b}", self.0)
    }
}
