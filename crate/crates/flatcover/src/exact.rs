//! Exact values of γ_r(d) and β_r(d) at desk scale.
//!
//! γ_r(d) is found by scanning candidate sets in ascending size from the
//! binomial-sum lower bound (the first d-complete set hit is optimal);
//! β_r(d) by a descending scan from the binomial-sum / strengthened upper
//! bounds using the direct co-d-subspace search, so the gamma and beta
//! routes stay independent and the duality identity
//! β_r(d) + γ_r(r-d) = 2^r is a real cross-check downstream.
//!
//! Feasibility: full enumeration for r ≤ 4; branch and bound at r = 5;
//! closed-form fast paths (oracle-verified) for d ∈ {0, 1, r-1, r} at
//! r ∈ {5, 6}. Everything else is an explicit refusal.

use std::path::{Path, PathBuf};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::error::{Error, Result};
use crate::f2::{Dim, PointF2, PointSetF2};
use crate::verify::{self, is_complete, is_nonblocking_direct, sum3_property, VerifyOptions};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Gamma,
    Beta,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    FullEnumeration,
    BranchAndBound,
    ClosedForm,
}

#[derive(Clone, Debug)]
pub struct ExactResult {
    pub r: Dim,
    pub d: u32,
    pub quantity: Quantity,
    pub value: u64,
    pub optimal_set: PointSetF2,
    pub method: Method,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub budget: u64,
    pub cache: Option<PathBuf>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: verify::DEFAULT_BUDGET,
            cache: None,
        }
    }
}

/// Smallest size of a d-complete subset of F₂^r, with an attaining set.
pub fn exact_gamma(r: Dim, d: u32, opts: &SearchOptions) -> Result<ExactResult> {
    validate(r, d)?;
    if let Some(hit) = cache_lookup(r, d, Quantity::Gamma, opts)? {
        return Ok(hit);
    }
    let result = match tier(r, d) {
        Tier::Enumerate => gamma_by_scan(r, d, opts.budget)?,
        Tier::FastPath => gamma_fast_path(r, d, opts.budget)?,
        Tier::BranchBound => gamma_branch_bound(r, d, opts.budget)?,
        Tier::Infeasible => {
            return Err(Error::infeasible(format!(
                "exact_gamma({r}, {d}) is beyond the search tiers (budget {})",
                opts.budget
            )))
        }
    };
    cache_store(&result, opts)?;
    Ok(result)
}

/// Largest size of a d-non-blocking subset of F₂^r, with an attaining set.
pub fn exact_beta(r: Dim, d: u32, opts: &SearchOptions) -> Result<ExactResult> {
    validate(r, d)?;
    if let Some(hit) = cache_lookup(r, d, Quantity::Beta, opts)? {
        return Ok(hit);
    }
    let result = match tier(r, d) {
        Tier::Enumerate => beta_by_scan(r, d, opts.budget)?,
        Tier::FastPath => beta_fast_path(r, d, opts.budget)?,
        Tier::BranchBound => beta_via_gamma_complement(r, d, opts.budget)?,
        Tier::Infeasible => {
            return Err(Error::infeasible(format!(
                "exact_beta({r}, {d}) is beyond the search tiers (budget {})",
                opts.budget
            )))
        }
    };
    cache_store(&result, opts)?;
    Ok(result)
}

/// Smallest set such that every element of F₂^r is a sum of three pairwise
/// distinct members — an independent enumeration of γ_r(2).
pub fn exact_sum3(r: Dim, _opts: &SearchOptions) -> Result<ExactResult> {
    if r.get() > 4 {
        return Err(Error::infeasible(format!(
            "exact_sum3 enumerates subsets fully; r={r} exceeds 4"
        )));
    }
    if r.get() < 2 {
        return Err(Error::parameter("exact_sum3 needs r >= 2"));
    }
    let total = 1u64 << r.get();
    // C(s,3) >= 2^r is necessary, which bounds the scan start
    let mut start = 3u64;
    while start * (start - 1) * (start - 2) / 6 < total {
        start += 1;
    }
    for s in start..=total {
        if let Some(mask) = scan_size(r, s, sum3_property) {
            return Ok(ExactResult {
                r,
                d: 2,
                quantity: Quantity::Gamma,
                value: s,
                optimal_set: mask,
                method: Method::FullEnumeration,
            });
        }
    }
    unreachable!("the full space has the sum-3 property for r >= 2")
}

fn validate(r: Dim, d: u32) -> Result<()> {
    if d > r.get() {
        return Err(Error::parameter(format!("d={d} exceeds r={r}")));
    }
    Ok(())
}

enum Tier {
    Enumerate,
    FastPath,
    BranchBound,
    Infeasible,
}

fn tier(r: Dim, d: u32) -> Tier {
    let rr = r.get();
    if rr <= 4 {
        return Tier::Enumerate;
    }
    if d == 0 || d == 1 || d == rr - 1 || d == rr {
        if rr <= 6 {
            return Tier::FastPath;
        }
        return Tier::Infeasible;
    }
    if rr == 5 {
        return Tier::BranchBound;
    }
    Tier::Infeasible
}

// ------------------------------------------------------------------
// full enumeration (r <= 4): size-ordered combination scans
// ------------------------------------------------------------------

/// Iterates all point-masks of popcount s over 2^r points, ascending, and
/// returns the first satisfying the predicate.
fn scan_size<F: FnMut(&PointSetF2) -> bool>(r: Dim, s: u64, mut pred: F) -> Option<PointSetF2> {
    let n = 1u64 << r.get();
    debug_assert!(n <= 64);
    if s == 0 {
        let set = PointSetF2::empty(r).expect("small r");
        return pred(&set).then_some(set);
    }
    if s > n {
        return None;
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut mask: u64 = (1u64 << s) - 1;
    loop {
        let set = PointSetF2::from_points(
            r,
            (0..n)
                .filter(|&p| (mask >> p) & 1 == 1)
                .map(PointF2::from_bits),
        )
        .expect("bits in range");
        if pred(&set) {
            return Some(set);
        }
        // Gosper's hack: next mask with the same popcount
        let c = mask & mask.wrapping_neg();
        let rr = mask + c;
        if rr > full || c == 0 {
            return None;
        }
        mask = rr | (((mask ^ rr) / c) >> 2);
        if mask > full {
            return None;
        }
    }
}

fn gamma_by_scan(r: Dim, d: u32, budget: u64) -> Result<ExactResult> {
    let lower = bounds::gamma_lower_binomial(r.get() as u64, d as u64)
        .to_u64()
        .unwrap_or(0);
    let total = 1u64 << r.get();
    let mut spent: u64 = 0;
    for s in lower..=total {
        let mut err = None;
        let hit = scan_size(r, s, |set| {
            if spent >= budget {
                err = Some(Error::BudgetExceeded { budget });
                return true;
            }
            let opts = VerifyOptions {
                budget: budget - spent,
                collect_witnesses: false,
            };
            match is_complete(set, d, &opts) {
                Ok(rep) => {
                    spent += rep.tests_used;
                    rep.holds
                }
                Err(e) => {
                    err = Some(e);
                    true // stop the scan; error propagated below
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        if let Some(set) = hit {
            return Ok(ExactResult {
                r,
                d,
                quantity: Quantity::Gamma,
                value: s,
                optimal_set: set,
                method: Method::FullEnumeration,
            });
        }
    }
    unreachable!("the full space is d-complete for every d <= r")
}

fn beta_by_scan(r: Dim, d: u32, budget: u64) -> Result<ExactResult> {
    let total = 1u64 << r.get();
    let upper_sum = bounds::beta_upper_sum(r.get() as u64, d as u64)
        .to_u64()
        .unwrap_or(total);
    let upper_strong = bounds::beta_upper_strong(r.get() as u64, d as u64)
        .and_then(|b| b.to_u64())
        .unwrap_or(total);
    let mut spent: u64 = 0;
    let start = total.min(upper_sum).min(upper_strong);
    for s in (0..=start).rev() {
        let mut err = None;
        let hit = scan_size(r, s, |set| {
            if spent >= budget {
                err = Some(Error::BudgetExceeded { budget });
                return true;
            }
            let opts = VerifyOptions {
                budget: budget - spent,
                collect_witnesses: false,
            };
            match is_nonblocking_direct(set, d, &opts) {
                Ok(rep) => {
                    spent += rep.tests_used;
                    rep.holds
                }
                Err(e) => {
                    err = Some(e);
                    true
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        if let Some(set) = hit {
            return Ok(ExactResult {
                r,
                d,
                quantity: Quantity::Beta,
                value: s,
                optimal_set: set,
                method: Method::FullEnumeration,
            });
        }
    }
    unreachable!("the empty set is d-non-blocking")
}

// ------------------------------------------------------------------
// closed-form fast paths (r in {5, 6}, d in {0, 1, r-1, r})
// ------------------------------------------------------------------

fn gamma_fast_path(r: Dim, d: u32, budget: u64) -> Result<ExactResult> {
    let rr = r.get();
    let opts = VerifyOptions {
        budget,
        collect_witnesses: false,
    };
    let (value, set): (u64, PointSetF2) = if d == 0 {
        (0, PointSetF2::empty(r)?)
    } else if d == 1 {
        // any two points suffice; a singleton misses its own element
        (
            2,
            PointSetF2::from_points(r, [PointF2::ZERO, PointF2::unit(0)])?,
        )
    } else if d == rr {
        (1 << rr, PointSetF2::full(r)?)
    } else {
        // d = r-1: complement of a 2-point non-blocking set
        let mut set = PointSetF2::full(r)?;
        set.remove(PointF2::ZERO);
        set.remove(PointF2::unit(0));
        ((1 << rr) - 2, set)
    };
    let rep = is_complete(&set, d, &opts)?;
    debug_assert!(rep.holds);
    // minimality for d = r-1: removing any further point leaves a set whose
    // complement has three elements, which blocks every co-1-subspace;
    // for d = 1 a singleton fails; d in {0, r} are forced.
    Ok(ExactResult {
        r,
        d,
        quantity: Quantity::Gamma,
        value,
        optimal_set: set,
        method: Method::ClosedForm,
    })
}

fn beta_fast_path(r: Dim, d: u32, budget: u64) -> Result<ExactResult> {
    let rr = r.get();
    let opts = VerifyOptions {
        budget,
        collect_witnesses: false,
    };
    let (value, set): (u64, PointSetF2) = if d == 0 {
        (0, PointSetF2::empty(r)?)
    } else if d == 1 {
        (
            2,
            PointSetF2::from_points(r, [PointF2::ZERO, PointF2::unit(0)])?,
        )
    } else if d == rr {
        (1 << rr, PointSetF2::full(r)?)
    } else {
        let mut set = PointSetF2::full(r)?;
        set.remove(PointF2::ZERO);
        set.remove(PointF2::unit(0));
        ((1 << rr) - 2, set)
    };
    let rep = is_nonblocking_direct(&set, d, &opts)?;
    debug_assert!(rep.holds);
    Ok(ExactResult {
        r,
        d,
        quantity: Quantity::Beta,
        value,
        optimal_set: set,
        method: Method::ClosedForm,
    })
}

// ------------------------------------------------------------------
// branch and bound (r = 5)
// ------------------------------------------------------------------

struct BbState {
    r: u32,
    limit: u64,
    budget: u64,
    spent: u64,
    // all candidate flat point-lists through each v: flats[v] = list of
    // point sets (as masks over 2^r points) covering v
    flats: Vec<Vec<u64>>,
}

impl BbState {
    fn charge(&mut self, amount: u64) -> Result<()> {
        self.spent += amount;
        if self.spent > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        Ok(())
    }

    // v covered iff some candidate flat's points (minus v) are all in C
    fn covered(&mut self, v: u64, c_mask: u64) -> Result<bool> {
        self.charge(self.flats[v as usize].len() as u64)?;
        let vbit = 1u64 << v;
        for f in &self.flats[v as usize] {
            if (f & !(c_mask | vbit)) == 0 {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn search(&mut self, c_mask: u64, size: u32) -> Result<Option<u64>> {
        // find the uncovered point with the fewest affordable candidates
        let n = 1u64 << self.r;
        let mut best: Option<(usize, u64)> = None;
        for v in 0..n {
            if self.covered(v, c_mask)? {
                continue;
            }
            let vbit = 1u64 << v;
            let room = self.limit as u32 - size;
            let options = self.flats[v as usize]
                .iter()
                .filter(|&&f| (f & !(c_mask | vbit)).count_ones() <= room)
                .count();
            if options == 0 {
                return Ok(None);
            }
            if best.is_none_or(|(o, _)| options < o) {
                best = Some((options, v));
            }
        }
        let Some((_, v)) = best else {
            return Ok(Some(c_mask)); // everything covered
        };
        let vbit = 1u64 << v;
        let room = self.limit as u32 - size;
        let mut cands: Vec<u64> = self.flats[v as usize]
            .iter()
            .map(|&f| f & !(c_mask | vbit))
            .filter(|&add| add.count_ones() <= room)
            .collect();
        cands.sort_unstable_by_key(|a| a.count_ones());
        cands.dedup();
        for add in cands {
            self.charge(1)?;
            if let Some(hit) = self.search(c_mask | add, size + add.count_ones())? {
                return Ok(Some(hit));
            }
        }
        Ok(None)
    }
}

/// The strongest closed-form floor on γ_r(d): the binomial sum, and via
/// duality 2^r - (ceilings on β_r(r-d)).
fn gamma_floor(rr: u64, d: u64) -> u64 {
    let binomial = bounds::gamma_lower_binomial(rr, d).to_u64().unwrap_or(0);
    let total = 1u64 << rr;
    let dual_sum = bounds::beta_upper_sum(rr, rr - d)
        .to_u64()
        .map_or(0, |b| total.saturating_sub(b));
    let dual_strong = bounds::beta_upper_strong(rr, rr - d)
        .and_then(|b| b.to_u64())
        .map_or(0, |b| total.saturating_sub(b));
    binomial.max(dual_sum).max(dual_strong).max(1)
}

/// A d-complete witness set from the complement of the best applicable
/// non-blocking construction at codimension r-d (an upper bound on γ).
fn gamma_ceiling_witness(r: Dim, d: u32) -> Option<PointSetF2> {
    let rr = r.get();
    let dd = rr - d;
    let mut best: Option<PointSetF2> = None;
    let mut consider = |rec: crate::constructions::ConstructionRecord| {
        let set = rec.points()?.complement();
        match &best {
            Some(cur) if cur.len() <= set.len() => {}
            _ => best = Some(set),
        }
        Some(())
    };
    if let Ok(rec) = crate::constructions::nonblocking_prime(r, dd) {
        consider(rec);
    }
    if let Ok(rec) = crate::constructions::nonblocking_balanced(r, dd) {
        consider(rec);
    }
    best
}

fn gamma_branch_bound(r: Dim, d: u32, budget: u64) -> Result<ExactResult> {
    let rr = r.get();
    // candidate flats per point: v + (L \ {0}) for every d-subspace L
    let subspaces: Vec<Vec<u64>> = crate::f2::enumerate_subspaces(r, d)?
        .map(|l| l.points().skip(1).map(|p| p.bits()).collect())
        .collect();
    let n = 1u64 << rr;
    let mut flats: Vec<Vec<u64>> = vec![Vec::with_capacity(subspaces.len()); n as usize];
    for l in &subspaces {
        for v in 0..n {
            let mut mask = 0u64;
            for &u in l {
                mask |= 1u64 << (v ^ u);
            }
            flats[v as usize].push(mask);
        }
    }
    let lower = gamma_floor(rr as u64, d as u64);
    let ceiling = gamma_ceiling_witness(r, d);
    let ceiling_size = ceiling.as_ref().map_or(n, |s| s.len());
    let mut state = BbState {
        r: rr,
        limit: 0,
        budget,
        spent: 0,
        flats,
    };
    for s in lower..=n {
        if s >= ceiling_size {
            // every level below the construction complement failed, so the
            // complement itself is optimal
            let set = ceiling.expect("ceiling_size came from it");
            let rep = is_complete(&set, d, &VerifyOptions::default())?;
            debug_assert!(rep.holds);
            return Ok(ExactResult {
                r,
                d,
                quantity: Quantity::Gamma,
                value: s,
                optimal_set: set,
                method: Method::BranchAndBound,
            });
        }
        state.limit = s;
        // symmetry: GL(r,2) is transitive on d-subspaces and preserves
        // completeness, so the first point's witness direction can be
        // pinned to the canonical span of the first d unit vectors.
        let canonical: u64 = {
            let mut mask = 0u64;
            for t in 1u64..(1 << d) {
                mask |= 1u64 << t;
            }
            mask
        };
        if canonical.count_ones() as u64 > s {
            continue;
        }
        if let Some(c_mask) = state.search(canonical, canonical.count_ones())? {
            let set = PointSetF2::from_points(
                r,
                (0..n)
                    .filter(|&p| (c_mask >> p) & 1 == 1)
                    .map(PointF2::from_bits),
            )?;
            // minimality: every smaller level was exhausted first
            let value = set.len();
            let rep = is_complete(&set, d, &VerifyOptions::default())?;
            debug_assert!(rep.holds);
            return Ok(ExactResult {
                r,
                d,
                quantity: Quantity::Gamma,
                value,
                optimal_set: set,
                method: Method::BranchAndBound,
            });
        }
    }
    unreachable!("full space is always d-complete")
}

fn beta_via_gamma_complement(r: Dim, d: u32, budget: u64) -> Result<ExactResult> {
    // β_r(d) = 2^r - γ_r(r-d), attained by the complement of an optimal
    // complete set; the witness set is re-verified with the direct oracle.
    let gamma = gamma_branch_bound(r, r.get() - d, budget)?;
    let set = gamma.optimal_set.complement();
    let rep = is_nonblocking_direct(
        &set,
        d,
        &VerifyOptions {
            budget,
            collect_witnesses: false,
        },
    )?;
    if !rep.holds {
        return Err(Error::Construction(
            "duality complement failed direct verification".into(),
        ));
    }
    Ok(ExactResult {
        r,
        d,
        quantity: Quantity::Beta,
        value: (1u64 << r.get()) - gamma.value,
        optimal_set: set,
        method: Method::BranchAndBound,
    })
}

// ------------------------------------------------------------------
// result cache
// ------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    entries: std::collections::BTreeMap<String, CacheEntry>,
}

#[derive(Serialize, Deserialize, Clone)]
struct CacheEntry {
    value: u64,
    method: Method,
    set: Vec<String>,
}

fn cache_key(r: Dim, d: u32, q: Quantity) -> String {
    let tag = match q {
        Quantity::Gamma => "gamma",
        Quantity::Beta => "beta",
    };
    format!("{tag}:{}:{d}", r.get())
}

fn load_cache(path: &Path) -> Result<CacheFile> {
    if !path.exists() {
        return Ok(CacheFile {
            version: 1,
            entries: Default::default(),
        });
    }
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Cache(format!("{path:?}: {e}")))
}

/// Cached entries are re-verified (the stored set must attain the stored
/// value and pass the oracle) before being trusted.
fn cache_lookup(r: Dim, d: u32, q: Quantity, opts: &SearchOptions) -> Result<Option<ExactResult>> {
    let Some(path) = opts.cache.as_ref() else {
        return Ok(None);
    };
    let cache = load_cache(path)?;
    let Some(entry) = cache.entries.get(&cache_key(r, d, q)) else {
        return Ok(None);
    };
    let mut set = PointSetF2::empty(r)?;
    for line in &entry.set {
        set.insert(PointF2::parse_bit_string(line, r)?);
    }
    if set.len() != entry.value {
        return Err(Error::Cache(format!(
            "entry {} stores a set of the wrong size",
            cache_key(r, d, q)
        )));
    }
    let vopts = VerifyOptions {
        budget: opts.budget,
        collect_witnesses: false,
    };
    let holds = match q {
        Quantity::Gamma => is_complete(&set, d, &vopts)?.holds,
        Quantity::Beta => is_nonblocking_direct(&set, d, &vopts)?.holds,
    };
    if !holds {
        return Err(Error::Cache(format!(
            "entry {} fails re-verification",
            cache_key(r, d, q)
        )));
    }
    Ok(Some(ExactResult {
        r,
        d,
        quantity: q,
        value: entry.value,
        optimal_set: set,
        method: entry.method,
    }))
}

fn cache_store(result: &ExactResult, opts: &SearchOptions) -> Result<()> {
    let Some(path) = opts.cache.as_ref() else {
        return Ok(());
    };
    let mut cache = load_cache(path)?;
    cache.entries.insert(
        cache_key(result.r, result.d, result.quantity),
        CacheEntry {
            value: result.value,
            method: result.method,
            set: result
                .optimal_set
                .iter()
                .map(|p| p.to_bit_string(result.r))
                .collect(),
        },
    );
    let text = serde_json::to_string_pretty(&cache).map_err(|e| Error::Cache(e.to_string()))?;
    std::fs::write(path, text)?;
    Ok(())
}
