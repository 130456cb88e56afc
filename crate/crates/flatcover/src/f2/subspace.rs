use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::f2::point::{Dim, PointF2};

/// A linear subspace of F₂^r in canonical reduced row-echelon form.
///
/// The pivot of a basis row is its lowest set coordinate; rows are kept in
/// ascending pivot order with every pivot coordinate cleared from the other
/// rows. Two bases span the same subspace iff their canonical forms are
/// identical, so `Eq` is span equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspaceF2 {
    r: Dim,
    basis: Vec<u64>,
    pivots: Vec<u32>,
}

impl SubspaceF2 {
    pub fn zero(r: Dim) -> SubspaceF2 {
        SubspaceF2 {
            r,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(r: Dim) -> SubspaceF2 {
        SubspaceF2 {
            r,
            basis: (0..r.get()).map(|i| 1u64 << i).collect(),
            pivots: (0..r.get()).collect(),
        }
    }

    /// Canonicalizes an arbitrary spanning set.
    pub fn from_spanning(r: Dim, rows: &[PointF2]) -> SubspaceF2 {
        let mut s = SubspaceF2::zero(r);
        for row in rows {
            debug_assert!(r.contains_bits(row.bits()));
            s.insert_row(row.bits());
        }
        s
    }

    /// Inserts one row, keeping the basis in canonical RREF.
    fn insert_row(&mut self, mut row: u64) {
        // Forward-reduce against existing pivots.
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if (row >> p) & 1 == 1 {
                row ^= b;
            }
        }
        if row == 0 {
            return;
        }
        let pivot = row.trailing_zeros();
        // Clear the new pivot column from every existing row.
        for b in &mut self.basis {
            if (*b >> pivot) & 1 == 1 {
                *b ^= row;
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.basis.insert(at, row);
    }

    pub fn dim(&self) -> u32 {
        self.basis.len() as u32
    }

    pub fn codim(&self) -> u32 {
        self.r.get() - self.dim()
    }

    pub fn ambient(&self) -> Dim {
        self.r
    }

    pub fn basis(&self) -> impl Iterator<Item = PointF2> + '_ {
        self.basis.iter().map(|&b| PointF2::from_bits(b))
    }

    pub fn basis_words(&self) -> &[u64] {
        &self.basis
    }

    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    /// Reduces `bits` modulo the subspace: clears every pivot coordinate.
    /// The result is the coordinate-lexicographically least element of the
    /// coset `bits + self`.
    pub fn reduce(&self, mut bits: u64) -> u64 {
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if (bits >> p) & 1 == 1 {
                bits ^= b;
            }
        }
        bits
    }

    pub fn contains(&self, p: PointF2) -> bool {
        self.reduce(p.bits()) == 0
    }

    /// All 2^dim elements, in Gray-code order starting at 0.
    pub fn points(&self) -> impl Iterator<Item = PointF2> + '_ {
        let k = self.basis.len();
        debug_assert!(k < 64);
        let total = 1u64 << k;
        let mut cur = 0u64;
        let mut i = 0u64;
        std::iter::from_fn(move || {
            if i == total {
                return None;
            }
            if i > 0 {
                let flip = (i ^ (i >> 1)) ^ ((i - 1) ^ ((i - 1) >> 1));
                cur ^= self.basis[flip.trailing_zeros() as usize];
            }
            i += 1;
            Some(PointF2::from_bits(cur))
        })
    }
}

impl fmt::Debug for SubspaceF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(r={}, dim={}, basis=[", self.r, self.dim())?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b:b}")?;
        }
        write!(f, "])")
    }
}

/// GF(2) row rank of a list of points.
pub fn rank_f2(rows: &[PointF2]) -> u32 {
    let mut basis: Vec<u64> = Vec::new();
    for row in rows {
        let mut cur = row.bits();
        for &b in &basis {
            let p = b.trailing_zeros();
            if (cur >> p) & 1 == 1 {
                cur ^= b;
            }
        }
        if cur != 0 {
            basis.push(cur);
            basis.sort_unstable_by_key(|b| b.trailing_zeros());
        }
    }
    basis.len() as u32
}

/// Number of d-subspaces of F₂^r: the Gaussian binomial
/// ∏_{i=0}^{d-1} (2^{r-i} - 1)/(2^{d-i} - 1).
pub fn count_subspaces(r: Dim, d: u32) -> Result<BigUint> {
    let r = r.get();
    if d > r {
        return Err(Error::parameter(format!("subspace dim {d} exceeds r={r}")));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..d {
        num *= (BigUint::one() << (r - i)) - BigUint::one();
        den *= (BigUint::one() << (d - i)) - BigUint::one();
    }
    Ok(num / den)
}

/// Enumerates every d-subspace of F₂^r exactly once, in canonical order:
/// pivot sets ascending lexicographically, then free entries in counter
/// order. Each yield is already in RREF.
pub fn enumerate_subspaces(r: Dim, d: u32) -> Result<impl Iterator<Item = SubspaceF2>> {
    let rr = r.get();
    if d > rr {
        return Err(Error::parameter(format!("subspace dim {d} exceeds r={rr}")));
    }
    // Free-entry count is maximal for the lowest pivot set.
    let max_free: u32 = (0..d).map(|i| rr - i - 1 - (d - i - 1)).sum();
    if max_free > 120 {
        return Err(Error::infeasible(format!(
            "subspace enumeration at (r={rr}, d={d}) needs 2^{max_free} RREF fills"
        )));
    }
    let mut pivots: Option<Vec<u32>> = if d == 0 {
        Some(Vec::new())
    } else {
        Some((0..d).collect())
    };
    let mut counter: u128 = 0;
    let mut done_zero = false;

    Ok(std::iter::from_fn(move || {
        if d == 0 {
            if done_zero {
                return None;
            }
            done_zero = true;
            return Some(SubspaceF2::zero(r));
        }
        let piv = pivots.as_ref()?.clone();
        // Positions fillable with free bits: for row i, columns above its
        // pivot that are not pivots themselves.
        let mut slots: Vec<(usize, u32)> = Vec::new();
        for (i, &p) in piv.iter().enumerate() {
            for c in (p + 1)..rr {
                if !piv.contains(&c) {
                    slots.push((i, c));
                }
            }
        }
        let total = 1u128 << slots.len();
        let mut basis: Vec<u64> = piv.iter().map(|&p| 1u64 << p).collect();
        for (k, &(i, c)) in slots.iter().enumerate() {
            if (counter >> k) & 1 == 1 {
                basis[i] |= 1u64 << c;
            }
        }
        let out = SubspaceF2 {
            r,
            basis,
            pivots: piv.clone(),
        };

        // Advance state: free counter first, then the pivot combination.
        counter += 1;
        if counter == total {
            counter = 0;
            pivots = next_combination(&piv, rr);
        }
        Some(out)
    }))
}

/// Next lexicographic combination of fixed size from 0..n, or None.
fn next_combination(cur: &[u32], n: u32) -> Option<Vec<u32>> {
    let k = cur.len();
    let mut next = cur.to_vec();
    let mut i = k;
    loop {
        if i == 0 {
            return None;
        }
        i -= 1;
        if next[i] < n - (k - i) as u32 {
            next[i] += 1;
            for j in i + 1..k {
                next[j] = next[j - 1] + 1;
            }
            return Some(next);
        }
    }
}

/// d = codim(s) independent linear functionals vanishing exactly on `s`
/// (each functional is a word; evaluation is parity of AND).
pub fn parity_checks(s: &SubspaceF2) -> Vec<u64> {
    let r = s.ambient().get();
    let pivots = s.pivots();
    let mut checks = Vec::with_capacity(s.codim() as usize);
    for f in 0..r {
        if pivots.contains(&f) {
            continue;
        }
        // alpha = e_f + sum over basis rows of their f-th bit at the pivot.
        let mut alpha = 1u64 << f;
        for (b, &p) in s.basis_words().iter().zip(pivots) {
            if (b >> f) & 1 == 1 {
                alpha |= 1u64 << p;
            }
        }
        checks.push(alpha);
    }
    checks
}

/// Null space of a list of functionals: the subspace {x : ⟨c, x⟩ = 0 ∀c}.
pub fn from_parity_checks(r: Dim, checks: &[u64]) -> SubspaceF2 {
    // Canonicalize the check rows, then read the kernel off the RREF.
    let rows: Vec<PointF2> = checks.iter().map(|&c| PointF2::from_bits(c)).collect();
    let row_space = SubspaceF2::from_spanning(r, &rows);
    let pivots = row_space.pivots();
    let mut gens: Vec<PointF2> = Vec::new();
    for f in 0..r.get() {
        if pivots.contains(&f) {
            continue;
        }
        let mut x = 1u64 << f;
        for (c, &q) in row_space.basis_words().iter().zip(pivots) {
            if (c >> f) & 1 == 1 {
                x |= 1u64 << q;
            }
        }
        gens.push(PointF2::from_bits(x));
    }
    SubspaceF2::from_spanning(r, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn pts(bits: &[u64]) -> Vec<PointF2> {
        bits.iter().map(|&b| PointF2::from_bits(b)).collect()
    }

    #[test]
    fn rank_examples() {
        // [] -> 0
        assert_eq!(rank_f2(&[]), 0);
        // duplicate nonzero row -> 1
        assert_eq!(rank_f2(&pts(&[0b101, 0b101])), 1);
        // all 7 nonzero points of F_2^3 -> 3 (hand elimination: e0,e1,e2 occur)
        let all: Vec<PointF2> = (1..8).map(PointF2::from_bits).collect();
        assert_eq!(rank_f2(&all), 3);
        // permutation invariance
        let mut rev = all.clone();
        rev.reverse();
        assert_eq!(rank_f2(&rev), 3);
    }

    #[test]
    fn canonical_form_is_span_invariant() {
        let mut rng = StdRng::seed_from_u64(7);
        for r in 2..=8u32 {
            let dim = Dim::new(r).unwrap();
            for _ in 0..200 {
                let k = rng.random_range(0..=r);
                let rows: Vec<PointF2> = (0..k)
                    .map(|_| PointF2::from_bits(rng.random::<u64>() & dim.word_mask()))
                    .collect();
                let s = SubspaceF2::from_spanning(dim, &rows);
                // Randomly re-mix the basis: row ops preserve the span.
                let mut mixed: Vec<u64> = s.basis_words().to_vec();
                if !mixed.is_empty() {
                    for _ in 0..10 {
                        let i = rng.random_range(0..mixed.len());
                        let j = rng.random_range(0..mixed.len());
                        if i != j {
                            mixed[i] ^= mixed[j];
                        }
                    }
                    let shift = rng.random_range(0..mixed.len());
                    mixed.rotate_left(shift);
                }
                let t = SubspaceF2::from_spanning(dim, &pts(&mixed));
                assert_eq!(s, t);
                // RREF structure: ascending pivots, pivot columns clean.
                for (i, &p) in s.pivots().iter().enumerate() {
                    for (j, &b) in s.basis_words().iter().enumerate() {
                        assert_eq!((b >> p) & 1 == 1, i == j);
                    }
                }
            }
        }
    }

    #[test]
    fn membership_and_reduce() {
        let r = Dim::new(4).unwrap();
        let s = SubspaceF2::from_spanning(r, &pts(&[0b0011, 0b1100]));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(PointF2::from_bits(0b1111)));
        assert!(!s.contains(PointF2::from_bits(0b0001)));
        // reduce clears pivots; the result is the least coset element
        // in coordinate-lexicographic order.
        let red = s.reduce(0b0111);
        assert!(s.contains(PointF2::from_bits(red ^ 0b0111)));
        for p in s.points() {
            let other = 0b0111u64 ^ p.bits();
            // compare as coordinate strings: reversing bit order of the word
            let key = |w: u64| w.reverse_bits();
            assert!(key(red) <= key(other));
        }
    }

    #[test]
    fn enumeration_counts() {
        let counts = |r: u32, d: u32| {
            let dim = Dim::new(r).unwrap();
            enumerate_subspaces(dim, d).unwrap().count() as u64
        };
        assert_eq!(counts(3, 1), 7);
        assert_eq!(counts(4, 2), 35); // (15*14)/(3*2)
        assert_eq!(counts(3, 3), 1);
        assert_eq!(counts(3, 0), 1);
        for r in 1..=6u32 {
            let dim = Dim::new(r).unwrap();
            for d in 0..=r {
                let by_iter = counts(r, d);
                let formula = count_subspaces(dim, d).unwrap();
                assert_eq!(BigUint::from(by_iter), formula, "(r,d)=({r},{d})");
            }
        }
        assert!(enumerate_subspaces(Dim::new(3).unwrap(), 4).is_err());
    }

    #[test]
    fn enumeration_yields_distinct_canonical_spaces() {
        let dim = Dim::new(5).unwrap();
        let all: Vec<SubspaceF2> = enumerate_subspaces(dim, 2).unwrap().collect();
        let mut seen = std::collections::HashSet::new();
        for s in &all {
            assert_eq!(s.dim(), 2);
            assert!(seen.insert(s.basis_words().to_vec()), "duplicate {s:?}");
            assert_eq!(
                SubspaceF2::from_spanning(dim, &s.basis().collect::<Vec<_>>()),
                *s
            );
        }
    }

    #[test]
    fn parity_check_roundtrip() {
        let mut rng = StdRng::seed_from_u64(11);
        for r in 2..=8u32 {
            let dim = Dim::new(r).unwrap();
            for _ in 0..100 {
                let k = rng.random_range(0..=r);
                let rows: Vec<PointF2> = (0..k)
                    .map(|_| PointF2::from_bits(rng.random::<u64>() & dim.word_mask()))
                    .collect();
                let s = SubspaceF2::from_spanning(dim, &rows);
                let checks = parity_checks(&s);
                assert_eq!(checks.len() as u32, s.codim());
                for &c in &checks {
                    for b in s.basis() {
                        assert_eq!((c & b.bits()).count_ones() % 2, 0);
                    }
                }
                assert_eq!(from_parity_checks(dim, &checks), s);
            }
        }
    }
}
