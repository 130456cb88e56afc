//! Binary linear codes feeding the complete-set constructions: simplex
//! codes, duals of BCH codes, and exact weight statistics by full
//! codeword enumeration.

mod gf2m;

pub use gf2m::GF2mField;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::bits::{rank_rows, Bits};
use crate::error::{Error, Result};

/// Cap on code length.
pub const N_MAX: u32 = 1 << 20;
/// Cap on dimension for full weight enumeration.
pub const ENUM_K_MAX: u32 = 24;

/// A binary linear [n, k] code given by k independent generator rows.
#[derive(Clone)]
pub struct LinearCode {
    n: u32,
    k: u32,
    gen: Vec<Bits>,
    stats: OnceLock<WeightStats>,
}

/// Exact weight distribution of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightStats {
    /// weight -> number of codewords of that weight; counts sum to 2^k.
    pub distribution: BTreeMap<u32, u64>,
    /// Minimum distance μ (None for the zero code).
    pub min_nonzero: Option<u32>,
    /// Largest weight M.
    pub max: u32,
}

impl LinearCode {
    /// Builds a code from generator rows; the rows must be independent.
    pub fn from_rows(n: u32, gen: Vec<Bits>) -> Result<LinearCode> {
        if n == 0 || n > N_MAX {
            return Err(Error::parameter(format!(
                "code length {n} outside 1..={N_MAX}"
            )));
        }
        for row in &gen {
            if row.len() != n as usize {
                return Err(Error::parameter(format!(
                    "generator row has {} bits, expected n={n}",
                    row.len()
                )));
            }
        }
        let k = gen.len() as u32;
        if rank_rows(&gen) as u32 != k {
            return Err(Error::Construction(format!(
                "generator rows are dependent: rank < k={k}"
            )));
        }
        Ok(LinearCode {
            n,
            k,
            gen,
            stats: OnceLock::new(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn generator(&self) -> &[Bits] {
        &self.gen
    }

    /// Codeword for a k-bit message word.
    pub fn encode(&self, message: u64) -> Bits {
        let mut out = Bits::zeros(self.n as usize);
        for (i, row) in self.gen.iter().enumerate() {
            if (message >> i) & 1 == 1 {
                out.xor_assign(row);
            }
        }
        out
    }
}

/// The [2^d - 1, d] simplex code: generator columns are all nonzero
/// vectors of F₂^d, so every nonzero codeword has weight 2^{d-1}.
pub fn simplex_code(d: u32) -> Result<LinearCode> {
    if d == 0 {
        return Err(Error::parameter("simplex code needs d >= 1"));
    }
    let n_full: u64 = (1u64 << d) - 1;
    if n_full > N_MAX as u64 {
        return Err(Error::parameter(format!(
            "simplex length 2^{d}-1 exceeds N_MAX={N_MAX}"
        )));
    }
    let n = n_full as u32;
    let mut gen = Vec::with_capacity(d as usize);
    for t in 0..d {
        let mut row = Bits::zeros(n as usize);
        for c in 1..=n_full {
            if (c >> t) & 1 == 1 {
                row.set((c - 1) as usize);
            }
        }
        gen.push(row);
    }
    LinearCode::from_rows(n, gen)
}

/// The dual of the BCH code with parameters (m, e): length n = 2^m - 1,
/// generator rows the F₂-expansions of i ↦ α^{ji} for odd j ≤ 2e-1, m rows
/// per j. Dimension em whenever e ≤ 2^{⌈m/2⌉ - 1}.
pub fn dual_bch(m: u32, e: u32) -> Result<LinearCode> {
    if m < 3 {
        return Err(Error::parameter(format!("dual_bch needs m >= 3, got {m}")));
    }
    if e == 0 {
        return Err(Error::parameter("dual_bch needs e >= 1"));
    }
    let dim_cap = 1u32 << (m.div_ceil(2) - 1);
    if e > dim_cap {
        return Err(Error::parameter(format!(
            "dual_bch dimension condition violated: e={e} > 2^(ceil(m/2)-1)={dim_cap}"
        )));
    }
    let field = GF2mField::new(m)?;
    let n = field.order() as u32;
    let powers = field.alpha_powers();
    let mut gen = Vec::with_capacity((e * m) as usize);
    for j in (1..=(2 * e - 1)).step_by(2) {
        for t in 0..m {
            let mut row = Bits::zeros(n as usize);
            for i in 0..n as u64 {
                let value = powers[((j as u64 * i) % n as u64) as usize];
                if (value >> t) & 1 == 1 {
                    row.set(i as usize);
                }
            }
            gen.push(row);
        }
    }
    let code = LinearCode::from_rows(n, gen).map_err(|_| {
        Error::Construction(format!(
            "dual_bch({m},{e}): generator rank below em={}",
            e * m
        ))
    })?;
    debug_assert_eq!(code.k(), e * m);
    Ok(code)
}

/// Exact weight distribution by walking all 2^k codewords in Gray-code
/// order (one row XOR per step).
pub fn weight_stats(code: &LinearCode) -> Result<&WeightStats> {
    if code.k > ENUM_K_MAX {
        return Err(Error::infeasible(format!(
            "weight enumeration over 2^{} codewords exceeds the k <= {ENUM_K_MAX} cap",
            code.k
        )));
    }
    Ok(code.stats.get_or_init(|| {
        let mut distribution: BTreeMap<u32, u64> = BTreeMap::new();
        let mut cur = Bits::zeros(code.n as usize);
        *distribution.entry(0).or_insert(0) += 1;
        let total: u64 = 1u64 << code.k;
        let mut prev_gray = 0u64;
        for i in 1..total {
            let gray = i ^ (i >> 1);
            let flip = (gray ^ prev_gray).trailing_zeros() as usize;
            prev_gray = gray;
            cur.xor_assign(&code.gen[flip]);
            *distribution.entry(cur.count_ones() as u32).or_insert(0) += 1;
        }
        let min_nonzero = distribution.keys().find(|&&w| w > 0).copied();
        let max = distribution.keys().max().copied().unwrap_or(0);
        WeightStats {
            distribution,
            min_nonzero,
            max,
        }
    }))
}

/// Carlitz-Uchiyama weight check for dual-BCH codes.
///
/// For e ≥ 2, every nonzero weight must satisfy
/// |w - 2^{m-1}| ≤ (e-1)·2^{m/2}, tested exactly as
/// (2w - 2^m)² ≤ (e-1)²·2^{m+2}. For e = 1 the interval degenerates and
/// misses the true constant weight, so the check becomes
/// "every nonzero weight equals 2^{m-1}".
pub fn carlitz_uchiyama_check(code: &LinearCode, m: u32, e: u32) -> Result<bool> {
    let stats = weight_stats(code)?;
    let ok = stats.distribution.keys().all(|&w| {
        if w == 0 {
            return true;
        }
        if e == 1 {
            return w == 1 << (m - 1);
        }
        let dev = 2i64 * w as i64 - (1i64 << m);
        dev * dev <= ((e - 1) as i64).pow(2) * (1i64 << (m + 2))
    });
    Ok(ok)
}

/// Griesmer sanity: n ≥ Σ_{i=0}^{k-1} ⌈μ / 2^i⌉.
pub fn griesmer_holds(code: &LinearCode) -> Result<bool> {
    let stats = weight_stats(code)?;
    let Some(mu) = stats.min_nonzero else {
        return Ok(true);
    };
    let mut sum: u64 = 0;
    for i in 0..code.k() {
        sum += (mu as u64).div_ceil(1u64 << i.min(40));
    }
    Ok(code.n() as u64 >= sum)
}
