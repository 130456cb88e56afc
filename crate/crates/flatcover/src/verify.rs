//! Ground-truth oracles: decide d-completeness / d-non-blocking by pruned
//! subspace search, and validate construction witness maps point by point.
//!
//! The search at a point v builds candidate direction subspaces depth-first
//! over the offset set U = {u ≠ 0 : v + u ∈ C}. A partial basis is extended
//! only by the coset-minimal representative of each new coset (so every
//! subspace is visited exactly once, through its greedy-minimal basis) and
//! only if all new combinations stay inside U. The budget unit is one
//! subspace-membership test; exceeding the budget is an error, never a
//! silent downgrade to sampling.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::constructions::{ConstructionRecord, SetProperty};
use crate::error::{Error, Result};
use crate::f2::{Dim, FlatF2, PointF2, PointSetF2, SubspaceF2};

/// Fixed default seed for sampled verification.
pub const DEFAULT_SAMPLE_SEED: u64 = 0xF1A7;
/// Default search budget in membership tests.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;
/// Full witness checks above this many points fall back to sampling.
pub const FULL_CHECK_CAP: u128 = 1 << 22;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Complete,
    Nonblocking,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum Checked {
    Full,
    Sampled { count: u64, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub property: Property,
    pub d: u32,
    pub holds: bool,
    pub counterexample: Option<PointF2>,
    pub checked: Checked,
    pub witnesses_found: Option<Vec<(PointF2, FlatF2)>>,
    /// Membership tests spent.
    pub tests_used: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub budget: u64,
    pub collect_witnesses: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: DEFAULT_BUDGET,
            collect_witnesses: false,
        }
    }
}

/// How a witness map should be validated.
#[derive(Clone, Copy, Debug)]
pub enum CheckMode {
    Full,
    Sampled {
        count: u64,
        seed: u64,
    },
    /// Full when 2^r is at most [`FULL_CHECK_CAP`], else sampled with the
    /// default count and seed.
    Auto,
}

struct Searcher<'a> {
    r: u32,
    words: &'a [u64],
    budget_left: u64,
    used: u64,
    // offset list and its characteristic mask, rebuilt per point
    offsets: Vec<u64>,
    offset_mask: Vec<u64>,
}

impl<'a> Searcher<'a> {
    fn new(r: u32, words: &'a [u64], budget: u64) -> Self {
        Searcher {
            r,
            words,
            budget_left: budget,
            used: 0,
            offsets: Vec::new(),
            offset_mask: vec![0u64; words.len()],
        }
    }

    #[inline]
    fn in_set(&self, p: u64) -> bool {
        (self.words[(p >> 6) as usize] >> (p & 63)) & 1 == 1
    }

    #[inline]
    fn in_offsets(&mut self, u: u64) -> Result<bool> {
        if self.budget_left == 0 {
            return Err(Error::BudgetExceeded { budget: self.used });
        }
        self.budget_left -= 1;
        self.used += 1;
        Ok((self.offset_mask[(u >> 6) as usize] >> (u & 63)) & 1 == 1)
    }

    /// Looks for a d-subspace L with v + (L \ {0}) inside the set.
    fn search_point(&mut self, v: u64, d: u32) -> Result<Option<Vec<u64>>> {
        let n: u64 = 1u64 << self.r;
        for w in self.offset_mask.iter_mut() {
            *w = 0;
        }
        self.offsets.clear();
        for u in 1..n {
            if self.in_set(v ^ u) {
                self.offsets.push(u);
                self.offset_mask[(u >> 6) as usize] |= 1u64 << (u & 63);
            }
        }
        if (self.offsets.len() as u64) < (1u64 << d) - 1 {
            return Ok(None);
        }
        let mut basis: Vec<u64> = Vec::with_capacity(d as usize);
        let mut span: Vec<u64> = Vec::with_capacity(1 << d);
        if self.extend(&mut basis, &mut span, d, 0)? {
            Ok(Some(basis))
        } else {
            Ok(None)
        }
    }

    fn extend(
        &mut self,
        basis: &mut Vec<u64>,
        span: &mut Vec<u64>,
        d: u32,
        from: usize,
    ) -> Result<bool> {
        if basis.len() as u32 == d {
            return Ok(true);
        }
        'cand: for idx in from..self.offsets.len() {
            let u = self.offsets[idx];
            // greedy-minimal basis: u must be minimal in u + span
            for &p in span.iter() {
                if (u ^ p) < u {
                    continue 'cand;
                }
            }
            // closure: every new combination must be an allowed offset
            for &p in span.iter() {
                if !self.in_offsets(u ^ p)? {
                    continue 'cand;
                }
            }
            let snapshot = span.len();
            span.push(u);
            for i in 0..snapshot {
                let q = u ^ span[i];
                span.push(q);
            }
            basis.push(u);
            if self.extend(basis, span, d, idx + 1)? {
                return Ok(true);
            }
            basis.pop();
            span.truncate(snapshot);
        }
        Ok(false)
    }
}

fn validate_d(r: Dim, d: u32) -> Result<()> {
    if d > r.get() {
        return Err(Error::parameter(format!("d={d} exceeds r={r}")));
    }
    Ok(())
}

/// Raw completeness search over a characteristic mask; returns the first
/// point with no witness, or per-point witness directions on success.
#[allow(clippy::type_complexity)]
pub(crate) fn complete_search_raw(
    r: Dim,
    d: u32,
    words: &[u64],
    budget: u64,
    collect: bool,
) -> Result<(Option<u64>, Option<Vec<(u64, Vec<u64>)>>, u64)> {
    let mut searcher = Searcher::new(r.get(), words, budget);
    let mut witnesses = collect.then(Vec::new);
    for v in 0..(1u64 << r.get()) {
        match searcher.search_point(v, d)? {
            Some(basis) => {
                if let Some(w) = witnesses.as_mut() {
                    w.push((v, basis));
                }
            }
            None => return Ok((Some(v), None, searcher.used)),
        }
    }
    Ok((None, witnesses, searcher.used))
}

/// Is C d-complete: through every v a d-flat inside C ∪ {v}?
pub fn is_complete(set: &PointSetF2, d: u32, opts: &VerifyOptions) -> Result<VerifyReport> {
    let r = set.dim();
    validate_d(r, d)?;
    let (cex, wits, used) =
        complete_search_raw(r, d, set.mask_words(), opts.budget, opts.collect_witnesses)?;
    Ok(VerifyReport {
        property: Property::Complete,
        d,
        holds: cex.is_none(),
        counterexample: cex.map(PointF2::from_bits),
        checked: Checked::Full,
        witnesses_found: wits.map(|w| {
            w.into_iter()
                .map(|(v, basis)| {
                    let rows: Vec<PointF2> = basis.iter().map(|&b| PointF2::from_bits(b)).collect();
                    let dir = SubspaceF2::from_spanning(r, &rows);
                    (
                        PointF2::from_bits(v),
                        FlatF2::new(PointF2::from_bits(v), dir),
                    )
                })
                .collect()
        }),
        tests_used: used,
    })
}

/// Is B d-non-blocking: through every v a codimension-d flat meeting B in
/// at most {v}? Implemented by the duality reduction
/// `is_complete(complement(B), r - d)`, which is the same predicate point
/// by point.
pub fn is_nonblocking(set: &PointSetF2, d: u32, opts: &VerifyOptions) -> Result<VerifyReport> {
    let r = set.dim();
    validate_d(r, d)?;
    let comp = set.complement();
    let mut report = is_complete(&comp, r.get() - d, opts)?;
    report.property = Property::Nonblocking;
    report.d = d;
    Ok(report)
}

/// Point-sampled completeness search: runs the witness search at `count`
/// seeded random points instead of all 2^r. An explicit mode, reported as
/// such — never a silent fallback.
pub fn is_complete_sampled(
    set: &PointSetF2,
    d: u32,
    count: u64,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    let r = set.dim();
    validate_d(r, d)?;
    let mut searcher = Searcher::new(r.get(), set.mask_words(), opts.budget);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut holds = true;
    let mut cex = None;
    for _ in 0..count {
        let v = rng.random::<u64>() & r.word_mask();
        if searcher.search_point(v, d)?.is_none() {
            holds = false;
            cex = Some(PointF2::from_bits(v));
            break;
        }
    }
    Ok(VerifyReport {
        property: Property::Complete,
        d,
        holds,
        counterexample: cex,
        checked: Checked::Sampled { count, seed },
        witnesses_found: None,
        tests_used: searcher.used,
    })
}

/// Point-sampled non-blocking search, by the same duality reduction as
/// [`is_nonblocking`].
pub fn is_nonblocking_sampled(
    set: &PointSetF2,
    d: u32,
    count: u64,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    let r = set.dim();
    validate_d(r, d)?;
    let comp = set.complement();
    let mut report = is_complete_sampled(&comp, r.get() - d, count, seed, opts)?;
    report.property = Property::Nonblocking;
    report.d = d;
    Ok(report)
}

/// Direct search mode for cross-validation: at every v looks for a
/// dim-(r-d) subspace L with (v + (L \ {0})) ∩ B = ∅, testing offsets
/// against B itself rather than a complemented mask.
pub fn is_nonblocking_direct(
    set: &PointSetF2,
    d: u32,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    let r = set.dim();
    validate_d(r, d)?;
    let n_words = set.mask_words().len();
    let mut allowed = vec![0u64; n_words];
    let total = 1u64 << r.get();
    for v in 0..total {
        if !set.contains(PointF2::from_bits(v)) {
            allowed[(v >> 6) as usize] |= 1u64 << (v & 63);
        }
    }
    let mut searcher = Searcher::new(r.get(), &allowed, opts.budget);
    let mut holds = true;
    let mut cex = None;
    for v in 0..total {
        if searcher.search_point(v, r.get() - d)?.is_none() {
            holds = false;
            cex = Some(PointF2::from_bits(v));
            break;
        }
    }
    Ok(VerifyReport {
        property: Property::Nonblocking,
        d,
        holds,
        counterexample: cex,
        checked: Checked::Full,
        witnesses_found: None,
        tests_used: searcher.used,
    })
}

/// Validates a construction record's witness map at every point (or a
/// fixed-seed sample): the flat must pass through v, have the right
/// dimension/codimension, and meet the set as the defining property
/// requires. Orders of magnitude cheaper than subspace search.
pub fn check_witnesses(rec: &ConstructionRecord, mode: CheckMode) -> VerifyReport {
    let r = rec.ambient();
    let d = rec.d();
    let total = r.point_count();
    let (full, count, seed) = match mode {
        CheckMode::Full => (true, 0, 0),
        CheckMode::Sampled { count, seed } => (false, count, seed),
        CheckMode::Auto => {
            if total <= FULL_CHECK_CAP {
                (true, 0, 0)
            } else {
                (false, 100_000, DEFAULT_SAMPLE_SEED)
            }
        }
    };

    // For non-blocking records the set is small; list it once.
    let members: Option<Vec<PointF2>> = match rec.property() {
        SetProperty::NonBlocking => Some(rec.enumerate_points()),
        SetProperty::Complete => None,
    };

    let check_one = |v: PointF2| -> bool {
        let flat = rec.witness(v);
        if !flat.contains(v) {
            return false;
        }
        match rec.property() {
            SetProperty::Complete => {
                flat.dim() == d && flat.points().all(|p| p == v || rec.contains(p))
            }
            SetProperty::NonBlocking => {
                flat.codim() <= d
                    && members
                        .as_ref()
                        .unwrap()
                        .iter()
                        .all(|&b| b == v || !flat.contains(b))
            }
        }
    };

    let mut holds = true;
    let mut cex = None;
    if full {
        for v in 0..(total as u64) {
            let v = PointF2::from_bits(v);
            if !check_one(v) {
                holds = false;
                cex = Some(v);
                break;
            }
        }
    } else {
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..count {
            let v = PointF2::from_bits(rng.random::<u64>() & r.word_mask());
            if !check_one(v) {
                holds = false;
                cex = Some(v);
                break;
            }
        }
    }

    VerifyReport {
        property: match rec.property() {
            SetProperty::Complete => Property::Complete,
            SetProperty::NonBlocking => Property::Nonblocking,
        },
        d,
        holds,
        counterexample: cex,
        checked: if full {
            Checked::Full
        } else {
            Checked::Sampled { count, seed }
        },
        witnesses_found: None,
        tests_used: 0,
    }
}

/// Is every element of F₂^r a sum of three pairwise distinct elements of C?
/// (Equivalent to 2-completeness: {v, c1, c2, c3} is a 2-flat through v iff
/// v = c1 + c2 + c3 with the c_i pairwise distinct.)
pub fn sum3_property(set: &PointSetF2) -> bool {
    let r = set.dim();
    let members: Vec<u64> = set.iter().map(|p| p.bits()).collect();
    'outer: for v in 0..(1u64 << r.get()) {
        for (i, &c1) in members.iter().enumerate() {
            for &c2 in &members[i + 1..] {
                let c3 = v ^ c1 ^ c2;
                if c3 != c1 && c3 != c2 && set.contains(PointF2::from_bits(c3)) {
                    continue 'outer;
                }
            }
        }
        return false;
    }
    true
}
