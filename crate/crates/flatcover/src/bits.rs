//! Dense bit vectors of arbitrary length, packed into `u64` words.
//!
//! Used for point-set characteristic masks, generator-matrix rows of long
//! codes, and packed truth tables. Bit `i` lives in word `i / 64` at
//! position `i % 64`.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    /// All-zero vector of `len` bits.
    pub fn zeros(len: usize) -> Self {
        Bits {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// Builds from pre-packed words; bits past `len` must be zero.
    pub fn from_words(words: Vec<u64>, len: usize) -> Self {
        debug_assert_eq!(words.len(), len.div_ceil(64));
        if !len.is_multiple_of(64) {
            debug_assert_eq!(words.last().map_or(0, |w| w >> (len % 64)), 0);
        }
        Bits { words, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    #[inline]
    pub fn assign(&mut self, i: usize, value: bool) {
        if value {
            self.set(i)
        } else {
            self.clear(i)
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                let i = k * 64 + w.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
        }
        None
    }

    /// Ascending iterator over set bit indices.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(move |(k, &w)| {
            let mut rem = w;
            std::iter::from_fn(move || {
                if rem == 0 {
                    return None;
                }
                let b = rem.trailing_zeros() as usize;
                rem &= rem - 1;
                Some(k * 64 + b)
            })
        })
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits[{}; ", self.len)?;
        let ones: Vec<usize> = self.ones().collect();
        write!(f, "{ones:?}]")
    }
}

/// GF(2) row rank of a set of bit vectors, by elimination on a scratch copy.
///
/// Pivot of a row is its lowest set bit; rows are reduced in place against
/// previously established pivots.
pub fn rank_rows(rows: &[Bits]) -> usize {
    let mut basis: Vec<Bits> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for row in rows {
        let mut cur = row.clone();
        while let Some(p) = cur.first_one() {
            match pivots.iter().position(|&q| q == p) {
                Some(idx) => {
                    let b = basis[idx].clone();
                    cur.xor_assign(&b);
                }
                None => {
                    pivots.push(p);
                    basis.push(cur);
                    break;
                }
            }
        }
    }
    basis.len()
}
