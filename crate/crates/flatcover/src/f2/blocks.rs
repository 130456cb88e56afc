use crate::error::{Error, Result};
use crate::f2::point::{Dim, PointF2};

/// A coordinate-aligned direct-sum decomposition F₂^r = V₁ ⊕ … ⊕ V_k.
///
/// Block i spans consecutive standard basis vectors; the weight functional
/// w_i(v) counts support coordinates of v inside block i. Zero-dimensional
/// blocks are allowed and contribute nothing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockDecomposition {
    r: Dim,
    dims: Vec<u32>,
    offsets: Vec<u32>,
    masks: Vec<u64>,
}

/// Splits F₂^r into consecutive blocks of the given dimensions.
pub fn direct_sum_split(r: Dim, dims: &[u32]) -> Result<BlockDecomposition> {
    let total: u32 = dims.iter().sum();
    if total != r.get() {
        return Err(Error::parameter(format!(
            "block dims {dims:?} sum to {total}, expected r={r}"
        )));
    }
    let mut offsets = Vec::with_capacity(dims.len());
    let mut masks = Vec::with_capacity(dims.len());
    let mut off = 0u32;
    for &d in dims {
        offsets.push(off);
        masks.push(block_mask(d, off));
        off += d;
    }
    Ok(BlockDecomposition {
        r,
        dims: dims.to_vec(),
        offsets,
        masks,
    })
}

impl BlockDecomposition {
    pub fn ambient(&self) -> Dim {
        self.r
    }

    pub fn block_count(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn dim_of(&self, i: usize) -> u32 {
        self.dims[i]
    }

    pub fn offset_of(&self, i: usize) -> u32 {
        self.offsets[i]
    }

    /// Coordinate mask of block i.
    pub fn mask_of(&self, i: usize) -> u64 {
        self.masks[i]
    }

    /// Support of v inside block i, as raw coordinate bits.
    #[inline]
    pub fn support_in(&self, i: usize, v: PointF2) -> u64 {
        v.bits() & self.masks[i]
    }

    /// w_i(v): number of support coordinates of v inside block i.
    #[inline]
    pub fn weight_in(&self, i: usize, v: PointF2) -> u32 {
        self.support_in(i, v).count_ones()
    }

    pub fn weights(&self, v: PointF2) -> Vec<u32> {
        (0..self.block_count())
            .map(|i| self.weight_in(i, v))
            .collect()
    }

    /// Union coordinate mask of a subset of blocks given as a bit selector.
    pub fn union_mask(&self, selector: u64) -> u64 {
        let mut m = 0u64;
        for (i, &bm) in self.masks.iter().enumerate() {
            if (selector >> i) & 1 == 1 {
                m |= bm;
            }
        }
        m
    }

    /// Selector of blocks in which v has support.
    pub fn support_blocks(&self, v: PointF2) -> u64 {
        let mut sel = 0u64;
        for (i, &bm) in self.masks.iter().enumerate() {
            if v.bits() & bm != 0 {
                sel |= 1u64 << i;
            }
        }
        sel
    }
}

// Shifted block mask, guarding the d=64 edge where `1 << 64` would overflow.
fn block_mask(d: u32, off: u32) -> u64 {
    if d == 0 {
        return 0;
    }
    let ones = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
    ones << off
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_examples() {
        let r4 = Dim::new(4).unwrap();
        let b = direct_sum_split(r4, &[2, 2]).unwrap();
        assert_eq!(b.mask_of(0), 0b0011);
        assert_eq!(b.mask_of(1), 0b1100);

        let r7 = Dim::new(7).unwrap();
        let b = direct_sum_split(r7, &[1, 1, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(b.block_count(), 7);
        for i in 0..7 {
            assert_eq!(b.mask_of(i), 1 << i);
        }

        // dims not summing to r is a parameter error
        assert!(direct_sum_split(r4, &[2, 3]).is_err());
    }

    #[test]
    fn weight_functionals() {
        // r=9 split [4,5]: the two weight functionals act on disjoint halves.
        let r = Dim::new(9).unwrap();
        let b = direct_sum_split(r, &[4, 5]).unwrap();
        let v = PointF2::from_bits(0b1_0101_0011);
        assert_eq!(b.weight_in(0, v), 2);
        assert_eq!(b.weight_in(1, v), 3);
        assert_eq!(b.weights(v).iter().sum::<u32>(), v.weight());
        assert_eq!(b.support_blocks(v), 0b11);
        assert_eq!(b.union_mask(0b10), 0b1_1111_0000);
    }

    #[test]
    fn zero_dim_blocks() {
        let r = Dim::new(2).unwrap();
        let b = direct_sum_split(r, &[1, 1, 0]).unwrap();
        assert_eq!(b.mask_of(2), 0);
        assert_eq!(b.weight_in(2, PointF2::from_bits(0b11)), 0);
    }
}
