//! Multilinear polynomials over F₂ in r variables.
//!
//! A polynomial is a set of monomials; a monomial is the set of its
//! variable indices, packed into an r-bit word. Addition is symmetric
//! difference of monomial sets, evaluation at v sums [m ⊆ v] over
//! monomials, and the coefficient/value correspondence is the subset-sum
//! (zeta/Möbius) transform, which is an involution over F₂ and is computed
//! bit-parallel on packed truth tables.

use crate::bits::{rank_rows, Bits};
use crate::error::{Error, Result};
use crate::f2::{parity_checks, Dim, FlatF2, PointF2};

/// A multilinear polynomial: canonical sorted list of monomial words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultilinearPoly {
    r: Dim,
    monomials: Vec<u64>,
}

impl MultilinearPoly {
    pub fn zero(r: Dim) -> Self {
        MultilinearPoly {
            r,
            monomials: Vec::new(),
        }
    }

    pub fn one(r: Dim) -> Self {
        MultilinearPoly {
            r,
            monomials: vec![0],
        }
    }

    pub fn variable(r: Dim, i: u32) -> Result<Self> {
        if i >= r.get() {
            return Err(Error::parameter(format!("variable x{i} outside r={r}")));
        }
        Ok(MultilinearPoly {
            r,
            monomials: vec![1u64 << i],
        })
    }

    /// Canonicalizes an arbitrary monomial list (XOR semantics: duplicate
    /// pairs cancel).
    pub fn from_monomials(r: Dim, mut monomials: Vec<u64>) -> Result<Self> {
        for &m in &monomials {
            if !r.contains_bits(m) {
                return Err(Error::parameter(format!(
                    "monomial {m:#x} outside r={r} variables"
                )));
            }
        }
        monomials.sort_unstable();
        let mut out = Vec::with_capacity(monomials.len());
        let mut it = monomials.into_iter().peekable();
        while let Some(m) = it.next() {
            if it.peek() == Some(&m) {
                it.next();
            } else {
                out.push(m);
            }
        }
        Ok(MultilinearPoly { r, monomials: out })
    }

    pub fn vars(&self) -> Dim {
        self.r
    }

    pub fn monomials(&self) -> &[u64] {
        &self.monomials
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Total degree: max monomial popcount (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.monomials
            .iter()
            .map(|m| m.count_ones())
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &MultilinearPoly) -> MultilinearPoly {
        debug_assert_eq!(self.r, other.r);
        // XOR-merge of two sorted sequences.
        let mut out = Vec::with_capacity(self.monomials.len() + other.monomials.len());
        let (mut i, mut j) = (0, 0);
        while i < self.monomials.len() && j < other.monomials.len() {
            match self.monomials[i].cmp(&other.monomials[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.monomials[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.monomials[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.monomials[i..]);
        out.extend_from_slice(&other.monomials[j..]);
        MultilinearPoly {
            r: self.r,
            monomials: out,
        }
    }

    /// Multilinear product: x_i² = x_i, so monomials multiply by OR.
    pub fn mul(&self, other: &MultilinearPoly) -> MultilinearPoly {
        debug_assert_eq!(self.r, other.r);
        let mut acc: Vec<u64> = Vec::with_capacity(self.monomials.len() * other.monomials.len());
        for &a in &self.monomials {
            for &b in &other.monomials {
                acc.push(a | b);
            }
        }
        MultilinearPoly::from_monomials(self.r, acc).expect("monomials already in range")
    }

    /// Value at v: parity of #{monomials m : m ⊆ supp v}.
    pub fn eval(&self, v: PointF2) -> bool {
        let mut acc = false;
        for &m in &self.monomials {
            if m & v.bits() == m {
                acc = !acc;
            }
        }
        acc
    }

    /// Packed truth table over all 2^r points (bit v = value at v).
    pub fn truth_table(&self) -> Bits {
        let n = 1usize << self.r.get();
        let mut table = Bits::zeros(n);
        for &m in &self.monomials {
            table.set(m as usize);
        }
        subset_xor_transform(&mut table, self.r.get());
        table
    }

    /// The unique multilinear polynomial with the given truth table
    /// (table length must be exactly 2^r bits).
    pub fn interpolate(r: Dim, table: &Bits) -> Result<Self> {
        if table.len() as u128 != r.point_count() {
            return Err(Error::parameter(format!(
                "truth table has {} entries, expected 2^{r}",
                table.len()
            )));
        }
        let mut coeffs = table.clone();
        subset_xor_transform(&mut coeffs, r.get());
        Ok(MultilinearPoly {
            r,
            monomials: coeffs.ones().map(|i| i as u64).collect(),
        })
    }
}

impl std::fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        for (k, &m) in self.monomials.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m == 0 {
                write!(f, "1")?;
            } else {
                for i in 0..self.r.get() {
                    if (m >> i) & 1 == 1 {
                        write!(f, "x{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for MultilinearPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly(r={}, {})", self.r, self)
    }
}

// In-place subset-sum transform over F₂: out[v] = XOR of in[u] over u ⊆ v.
// Self-inverse. Strides below the word size use masked in-word shifts.
fn subset_xor_transform(table: &mut Bits, r: u32) {
    const M: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0f0f_0f0f_0f0f_0f0f,
        0x00ff_00ff_00ff_00ff,
        0x0000_ffff_0000_ffff,
        0x0000_0000_ffff_ffff,
    ];
    let words = table.words_mut();
    for j in 0..r {
        if j < 6 {
            let shift = 1u32 << j;
            let mask = M[j as usize];
            for w in words.iter_mut() {
                *w ^= (*w & mask) << shift;
            }
        } else {
            let stride = 1usize << (j - 6);
            let mut base = 0usize;
            while base < words.len() {
                for k in 0..stride {
                    let lo = words[base + k];
                    words[base + stride + k] ^= lo;
                }
                base += 2 * stride;
            }
        }
    }
}

/// dim L_{r,d} = Σ_{j=0}^{d} C(r, j): the number of multilinear monomials
/// of degree at most d.
pub fn dim_multilinear(r: Dim, d: u32) -> Result<u128> {
    if d > r.get() {
        return Err(Error::parameter(format!("degree cap {d} exceeds r={r}")));
    }
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for j in 0..=d {
        if j > 0 {
            c = c * (r.get() - j + 1) as u128 / j as u128;
        }
        total += c;
    }
    Ok(total)
}

/// Indicator polynomial of a flat of codimension d: degree ≤ d, value 1
/// exactly on the flat. Built as the product of one affine-linear factor
/// per parity check of the direction.
pub fn indicator_of_coflat(flat: &FlatF2) -> MultilinearPoly {
    let r = flat.direction().ambient();
    let checks = parity_checks(flat.direction());
    let mut poly = MultilinearPoly::one(r);
    for alpha in checks {
        // factor: <alpha, x> + <alpha, anchor> + 1
        let mut monos: Vec<u64> = (0..r.get())
            .filter(|&i| (alpha >> i) & 1 == 1)
            .map(|i| 1u64 << i)
            .collect();
        let c = (alpha & flat.anchor().bits()).count_ones() % 2 == 1;
        if !c {
            // constant term (c + 1) = 1
            monos.push(0);
        }
        let factor = MultilinearPoly::from_monomials(r, monos).expect("in range");
        poly = poly.mul(&factor);
    }
    poly
}

/// GF(2) rank of the evaluation matrix (rows = polynomials, columns =
/// points).
pub fn evaluation_rank(polys: &[MultilinearPoly], points: &[PointF2]) -> u32 {
    let rows: Vec<Bits> = polys
        .iter()
        .map(|p| {
            let mut row = Bits::zeros(points.len());
            for (j, &v) in points.iter().enumerate() {
                if p.eval(v) {
                    row.set(j);
                }
            }
            row
        })
        .collect();
    rank_rows(&rows) as u32
}

/// Sums a polynomial in d variables over all of F₂^d; requires
/// degree < d, in which case the sum is always 0 (each monomial misses a
/// variable, so its values pair up).
pub fn fact1_check(p: &MultilinearPoly) -> Result<bool> {
    let d = p.vars().get();
    if p.degree() >= d {
        return Err(Error::parameter(format!(
            "degree {} not below the variable count {d}",
            p.degree()
        )));
    }
    Ok(p.truth_table().count_ones() % 2 == 1)
}
