//! Closed-form evaluation of every bound, with exact verdicts.
//!
//! Wherever a verdict matters, the comparison is done on big integers
//! after clearing denominators: e^{rH(d/r)} = r^r / (d^d (r-d)^{r-d})
//! exactly, the √(2r) factor squares away, c^8 = 16464 for the cubic
//! lower bound, and K_d·2^{(1/2-ε_d)r} has an integer exponent once raised
//! to the power 2(2^d - 1). Floating point appears only in display values
//! and in the dual-BCH upper bound, whose absolute constant is an artifact
//! choice in the first place.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Default absolute constant for the dual-BCH upper bound
/// 2^{0.5 r + K (dr/log₂ r)^{2/3}}: the underlying argument ends with
/// exponent < 0.5r + 14n and n < 2(dr/log₂(dr))^{2/3}, so 28 is always
/// sufficient. An artifact choice, not a quoted value.
pub const BCH_K_DEFAULT: f64 = 28.0;

/// Natural-log entropy H(x) = -x ln x - (1-x) ln(1-x), with the limit
/// value 0 at the endpoints.
pub fn entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) || x.is_nan() {
        return Err(Error::parameter(format!(
            "entropy domain is [0,1], got {x}"
        )));
    }
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    Ok(-x * x.ln() - (1.0 - x) * (1.0 - x).ln())
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut out = BigUint::one();
    for j in 1..=k {
        out = out * BigUint::from(n - k + j) / BigUint::from(j);
    }
    out
}

/// Σ_{j=0}^{d} C(r, j), built incrementally.
pub fn binomial_sum(r: u64, d: u64) -> BigUint {
    let mut c = BigUint::one();
    let mut acc = BigUint::one();
    for j in 1..=d.min(r) {
        c = c * BigUint::from(r - j + 1) / BigUint::from(j);
        acc += &c;
    }
    acc
}

/// e^{r H(d/r)} as the exact rational r^r / (d^d (r-d)^{r-d}),
/// returned as (numerator, denominator).
fn exp_rh(r: u64, d: u64) -> (BigUint, BigUint) {
    debug_assert!(0 < d && d < r);
    let num = BigUint::from(r).pow(r as u32);
    let den = BigUint::from(d).pow(d as u32) * BigUint::from(r - d).pow((r - d) as u32);
    (num, den)
}

/// The three-way sandwich
/// (1/√(2r)) e^{rH(d/r)} ≤ C(r,d) < Σ_{j≤d} C(r,j) ≤ e^{rH(d/r)},
/// verified exactly (the left inequality is squared to clear √(2r)).
pub fn binomial_sandwich_check(r: u64, d: u64) -> Result<bool> {
    if d < 1 || 2 * d > r {
        return Err(Error::parameter(format!(
            "sandwich needs 1 <= d <= r/2, got r={r}, d={d}"
        )));
    }
    let (num, den) = exp_rh(r, d);
    let c = binomial(r, d);
    let sum = binomial_sum(r, d);
    // left, squared: num^2 <= 2r * c^2 * den^2
    let left = num.clone() * num.clone()
        <= BigUint::from(2 * r) * c.clone() * c.clone() * den.clone() * den.clone();
    // middle: C(r,d) < sum  (strict: sum includes j=0)
    let middle = c < sum;
    // right: sum * den <= num
    let right = sum * den <= num;
    Ok(left && middle && right)
}

/// Display value of the cubic lower bound c · 2^{3r/8}, c = 16464^{1/8}.
pub fn gamma3_lower(r: u32) -> f64 {
    (16464f64).powf(0.125) * (2f64).powf(3.0 * r as f64 / 8.0)
}

/// Exact strict test `size > c · 2^{3r/8}` ⟺ size^8 > 16464 · 2^{3r};
/// the stated bound applies for r ≥ 15.
pub fn gamma3_lower_holds(r: u32, size: u128) -> Result<bool> {
    if r < 15 {
        return Err(Error::parameter(format!(
            "the cubic lower bound is stated for r >= 15, got r={r}"
        )));
    }
    Ok(gamma3_raw_holds(r, size))
}

/// The raw inequality size^8 > 16464 · 2^{3r} (the small-set branch of the
/// cubic-bound argument), exposed for any r.
pub fn gamma3_raw_holds(r: u32, size: u128) -> bool {
    let lhs = BigUint::from(size).pow(8);
    let rhs = BigUint::from(16464u32) << (3 * r);
    lhs > rhs
}

/// Σ_{j=0}^{d} C(r, j) — the binomial-sum ceiling for β_r(d).
pub fn beta_upper_sum(r: u64, d: u64) -> BigUint {
    binomial_sum(r, d)
}

/// Σ_{j=0}^{d-1} C(r, j) — the matching floor for γ_r(d).
pub fn gamma_lower_binomial(r: u64, d: u64) -> BigUint {
    if d == 0 {
        return BigUint::zero();
    }
    binomial_sum(r, d - 1)
}

/// The strengthened ceiling: (1 - 2^{d-r}) β ≤ Σ - 2^d, i.e.
/// β ≤ ⌊(Σ - 2^d) 2^{r-d} / (2^{r-d} - 1)⌋. None when d = r (degenerate).
pub fn beta_upper_strong(r: u64, d: u64) -> Option<BigUint> {
    if d >= r {
        return None;
    }
    let sum = binomial_sum(r, d);
    let pd = BigUint::one() << d;
    debug_assert!(sum >= pd);
    let scale = BigUint::one() << (r - d);
    Some((sum - pd) * scale.clone() / (scale - BigUint::one()))
}

/// Direct inequality form of the strengthened ceiling, valid for every
/// 0 ≤ d ≤ r: (2^{r-d} - 1) · β ≤ (Σ - 2^d) · 2^{r-d}.
pub fn beta_upper_strong_holds(r: u64, d: u64, beta: u128) -> bool {
    let sum = binomial_sum(r, d);
    let pd = BigUint::one() << d;
    let scale = BigUint::one() << (r - d);
    (scale.clone() - BigUint::one()) * BigUint::from(beta) <= (sum - pd) * scale
}

/// Refinement Σ - 2^{d-1}, valid for d < r/2.
pub fn beta_upper_refined_half(r: u64, d: u64) -> Option<BigUint> {
    (d >= 1 && 2 * d < r).then(|| binomial_sum(r, d) - (BigUint::one() << (d - 1)))
}

/// Refinement Σ - 2^d, valid for d < 0.227 r (tested as 1000 d < 227 r).
pub fn beta_upper_refined_outer(r: u64, d: u64) -> Option<BigUint> {
    (1000 * d < 227 * r).then(|| binomial_sum(r, d) - (BigUint::one() << d))
}

/// Display value of K_d · 2^{(1/2 - ε_d) r} with ε_d = 1/(2(2^d - 1)) and
/// K_d = (2^d - 1) 2^{2^{d-1} - 3/2 + ε_d}.
pub fn gamma_upper_simplex(r: u32, d: u32) -> f64 {
    let n = (1u64 << d) as f64 - 1.0;
    let eps = 1.0 / (2.0 * n);
    let kd = n * (2f64).powf((1u64 << (d - 1)) as f64 - 1.5 + eps);
    kd * (2f64).powf((0.5 - eps) * r as f64)
}

/// Exact strict test `size < K_d · 2^{(1/2-ε_d) r}`: raising both sides to
/// the power B = 2(2^d - 1) clears every fraction, giving
/// size^B < (2^d-1)^B · 2^{B·2^{d-1} - 3(2^d-1) + 1 + (2^d-2) r}.
pub fn gamma_upper_simplex_holds(r: u32, d: u32, size: u128) -> Result<bool> {
    if d < 3 || d > r {
        return Err(Error::parameter(format!(
            "the simplex bound needs r >= d >= 3, got r={r}, d={d}"
        )));
    }
    let n = (1u64 << d) - 1; // 2^d - 1
    let b = 2 * n; // the clearing exponent
    let exom = b * (1u64 << (d - 1)) + 1 + ((1u64 << d) - 2) * r as u64;
    let sub = 3 * n;
    debug_assert!(exom > sub);
    let lhs = BigUint::from(size).pow(b as u32);
    let rhs = BigUint::from(n).pow(b as u32) << (exom - sub);
    Ok(lhs < rhs)
}

/// Display value of the generic recipe bound 2^{(1-μ/n) r + n + d - μ}.
pub fn gamma_upper_generic(r: u32, n: u32, mu: u32, d: u32) -> f64 {
    (2f64).powf((1.0 - mu as f64 / n as f64) * r as f64 + (n + d - mu) as f64)
}

/// Exact strict test `size < 2^{(1-μ/n) r + n + d - μ}` via
/// size^n < 2^{(n-μ) r + n (n + d - μ)}.
pub fn gamma_upper_generic_holds(r: u32, n: u32, mu: u32, d: u32, size: u128) -> Result<bool> {
    if n == 0 || mu > n || n > 4096 {
        return Err(Error::parameter(format!(
            "bad code parameters n={n}, mu={mu}"
        )));
    }
    let exp = (n - mu) as u64 * r as u64 + n as u64 * (n + d - mu) as u64;
    let lhs = BigUint::from(size).pow(n);
    let rhs = BigUint::one() << exp;
    Ok(lhs < rhs)
}

/// Display value (upper-rounded) of 2^{0.5 r + K (dr/log₂ r)^{2/3}}.
pub fn gamma_upper_bch(r: u32, d: u32, k_const: f64) -> f64 {
    let x = (d as f64 * r as f64) / (r as f64).log2();
    let exp = 0.5 * r as f64 + k_const * x.powf(2.0 / 3.0);
    (2f64).powf(exp).next_up()
}

/// Conservative test `size < 2^{0.5r + K (dr/log₂ r)^{2/3}}`: compares
/// log₂(size) (rounded up) against the exponent rounded down.
pub fn gamma_upper_bch_holds(r: u32, d: u32, k_const: f64, size: u128) -> bool {
    let x = (d as f64 * r as f64) / (r as f64).log2();
    let exp = (0.5 * r as f64 + k_const * x.powf(2.0 / 3.0))
        .next_down()
        .next_down();
    let log_size = (size as f64).log2().next_up().next_up();
    log_size < exp
}

/// The balanced double-sum formula, defined for 2 ≤ d ≤ r/2.
pub fn balanced_formula(r: u32, d: u32) -> Option<BigUint> {
    if d < 2 || 2 * d > r {
        return None;
    }
    let rho = (r % (2 * d)) as u64;
    let small = (2 * d) as u64 - rho;
    let q = (r / (2 * d)) as u64;
    let mut total = BigUint::zero();
    for i in 0..=(d as u64).min(small) {
        let j = d as u64 - i;
        if j > rho {
            continue;
        }
        total += binomial(small, i)
            * binomial(rho, j)
            * BigUint::from(q).pow(i as u32)
            * BigUint::from(q + 1).pow(j as u32);
    }
    Some(total)
}

/// Its main term C(2d, d) ⌊r/2d⌋^d.
pub fn balanced_main_term(r: u32, d: u32) -> Option<BigUint> {
    if d < 2 || 2 * d > r {
        return None;
    }
    Some(binomial(2 * d as u64, d as u64) * BigUint::from((r / (2 * d)) as u64).pow(d))
}

/// The product formula (⌊r/d⌋+1)^{d-ρ} (⌊r/d⌋+2)^ρ, defined for r ≥ d ≥ 2.
pub fn prime_formula(r: u32, d: u32) -> Option<BigUint> {
    if d < 2 || d > r {
        return None;
    }
    let rho = r % d;
    let q = (r / d) as u64;
    Some(BigUint::from(q + 1).pow(d - rho) * BigUint::from(q + 2).pow(rho))
}

/// (3/2)^r (4/3)^d = 3^{r-d} 2^{2d-r}, an integer exactly when 2d ≥ r;
/// applies under the product formula's precondition r ≥ d ≥ 2.
pub fn prime_exponential_form(r: u32, d: u32) -> Option<BigUint> {
    if d < 2 || 2 * d < r || d > r {
        return None;
    }
    Some(BigUint::from(3u32).pow(r - d) << (2 * d - r))
}

/// ∏ C(r_i, d_i) over explicit parts.
pub fn multiblock_formula(parts: &[(u32, u32)]) -> BigUint {
    parts
        .iter()
        .map(|&(ri, di)| binomial(ri as u64, di as u64))
        .product()
}

/// All applicable lower-bound formulas for β_r(d), with inapplicable
/// entries omitted.
#[derive(Clone, Debug, Serialize)]
pub struct BetaLowerValues {
    pub balanced: Option<String>,
    pub balanced_main_term: Option<String>,
    pub prime: Option<String>,
    pub prime_ratio: Option<f64>,
    pub prime_exponential: Option<String>,
    pub multiblock_half: Option<String>,
    pub rk_product: Option<String>,
    pub rk_entropy: Option<f64>,
}

pub fn beta_lower_formulas(r: u32, d: u32) -> BetaLowerValues {
    let show = |b: Option<BigUint>| b.map(|v| v.to_string());
    // C(r, floor(r/2)) from the single-part family, valid once d covers
    // the complementary half
    let half = r / 2;
    let multiblock_half = (d >= r - half && half <= d).then(|| binomial(r as u64, half as u64));
    let rk = crate::constructions::rk_parameters(
        crate::f2::Dim::with_cap(r, 64).unwrap_or_else(|_| crate::f2::Dim::new(1).unwrap()),
        d,
    )
    .ok();
    let rk_product = rk.as_ref().map(|p| multiblock_formula(&p.parts));
    let rk_entropy =
        (d > 0 && d < r && (d as u64 * d as u64) >= r as u64 && 2 * d <= r).then(|| {
            let h = entropy(d as f64 / r as f64).unwrap_or(0.0);
            ((r as f64) * h - 2.0 * (r as f64 / d as f64) * (r as f64).ln()).exp()
        });
    BetaLowerValues {
        balanced: show(balanced_formula(r, d)),
        balanced_main_term: show(balanced_main_term(r, d)),
        prime: show(prime_formula(r, d)),
        prime_ratio: (d >= 1).then(|| (r as f64 / d as f64).powi(d as i32)),
        prime_exponential: show(prime_exponential_form(r, d)),
        multiblock_half: show(multiblock_half),
        rk_product: show(rk_product),
        rk_entropy,
    }
}

/// Exact strict test of the main-term comparison
/// e^{rH(d/r)} > C(2d, d) (r/2d)^d for 1 ≤ d ≤ r/2:
/// r^r (2d)^d > C(2d,d) r^d d^d (r-d)^{r-d}.
pub fn main_term_inequality_holds(r: u64, d: u64) -> Result<bool> {
    if d < 1 || 2 * d > r {
        return Err(Error::parameter(format!(
            "main-term comparison needs 1 <= d <= r/2, got r={r}, d={d}"
        )));
    }
    let lhs = BigUint::from(r).pow(r as u32) * BigUint::from(2 * d).pow(d as u32);
    let rhs = binomial(2 * d, d)
        * BigUint::from(r).pow(d as u32)
        * BigUint::from(d).pow(d as u32)
        * BigUint::from(r - d).pow((r - d) as u32);
    Ok(lhs > rhs)
}

/// Pairs (r, d) with 2 ≤ d ≤ r/2 and r ≤ r_max where the prime product
/// beats the balanced double sum — empirically a small exceptional set.
pub fn exceptional_pairs(r_max: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for r in 4..=r_max {
        for d in 2..=(r / 2) {
            let b = balanced_formula(r, d).expect("in range");
            let p = prime_formula(r, d).expect("in range");
            if p > b {
                out.push((r, d));
            }
        }
    }
    out
}

/// One named bound value for table output.
#[derive(Clone, Debug, Serialize)]
pub struct NamedBound {
    pub name: &'static str,
    /// Exact integers as decimal strings, transcendental values as floats.
    pub value: serde_json::Value,
    pub strict: bool,
}

fn int_bound(name: &'static str, v: BigUint, strict: bool) -> NamedBound {
    NamedBound {
        name,
        value: serde_json::Value::String(v.to_string()),
        strict,
    }
}

fn real_bound(name: &'static str, v: f64, strict: bool) -> NamedBound {
    NamedBound {
        name,
        value: serde_json::json!(v),
        strict,
    }
}

/// Every applicable bound at (r, d), for reports and tables. The bracket
/// fields summarize the best (largest lower, smallest upper) entries as
/// display floats; exact verdicts always go through the `_holds`
/// functions.
#[derive(Clone, Debug, Serialize)]
pub struct BoundsRow {
    pub r: u32,
    pub d: u32,
    pub gamma_lower: Vec<NamedBound>,
    pub gamma_upper: Vec<NamedBound>,
    pub beta_lower: Vec<NamedBound>,
    pub beta_upper: Vec<NamedBound>,
    pub gamma_bracket: (f64, f64),
    pub beta_bracket: (f64, f64),
}

fn bound_as_f64(b: &NamedBound) -> f64 {
    match &b.value {
        serde_json::Value::String(s) => s.parse().unwrap_or(f64::NAN),
        other => other.as_f64().unwrap_or(f64::NAN),
    }
}

fn bracket(lower: &[NamedBound], upper: &[NamedBound]) -> (f64, f64) {
    let lo = lower.iter().map(bound_as_f64).fold(0.0f64, f64::max);
    let hi = upper.iter().map(bound_as_f64).fold(f64::INFINITY, f64::min);
    (lo, hi)
}

pub fn bounds_row(r: u32, d: u32) -> BoundsRow {
    let (ru, du) = (r as u64, d as u64);
    let mut gamma_lower = vec![int_bound(
        "binomial-sum",
        gamma_lower_binomial(ru, du),
        false,
    )];
    if d == 3 && r >= 15 {
        gamma_lower.push(real_bound("cubic", gamma3_lower(r), true));
    }
    let mut gamma_upper = vec![int_bound("full-space", BigUint::one() << r, false)];
    if d >= 3 && d <= r {
        gamma_upper.push(real_bound("simplex", gamma_upper_simplex(r, d), true));
        gamma_upper.push(real_bound(
            "dual-bch",
            gamma_upper_bch(r, d, BCH_K_DEFAULT),
            true,
        ));
    }
    let mut beta_lower = Vec::new();
    if let Some(b) = balanced_formula(r, d) {
        beta_lower.push(int_bound("balanced", b, false));
    }
    if let Some(p) = prime_formula(r, d) {
        beta_lower.push(int_bound("prime", p, false));
    }
    if let Some(p) = prime_exponential_form(r, d) {
        beta_lower.push(int_bound("prime-exponential", p, false));
    }
    if d >= r.div_ceil(2) && d <= r {
        beta_lower.push(int_bound(
            "multiblock-half",
            binomial(ru, (r / 2) as u64),
            false,
        ));
    }
    let mut beta_upper = vec![int_bound("binomial-sum", beta_upper_sum(ru, du), false)];
    if let Some(s) = beta_upper_strong(ru, du) {
        beta_upper.push(int_bound("strong", s, false));
    }
    if let Some(hf) = beta_upper_refined_half(ru, du) {
        beta_upper.push(int_bound("strong-half", hf, false));
    }
    if let Some(out) = beta_upper_refined_outer(ru, du) {
        beta_upper.push(int_bound("strong-outer", out, false));
    }
    let gamma_bracket = bracket(&gamma_lower, &gamma_upper);
    let beta_bracket = bracket(&beta_lower, &beta_upper);
    BoundsRow {
        r,
        d,
        gamma_lower,
        gamma_upper,
        beta_lower,
        beta_upper,
        gamma_bracket,
        beta_bracket,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn entropy_examples() {
        assert!((entropy(0.5).unwrap() - (2f64).ln()).abs() < 1e-15);
        // H(1/4) = (1/4) ln 4 + (3/4) ln(4/3)
        let expect = 0.25 * (4f64).ln() + 0.75 * (4f64 / 3.0).ln();
        assert!((entropy(0.25).unwrap() - expect).abs() < 1e-15);
        // symmetry
        for x in [0.1, 0.3, 0.42] {
            assert!((entropy(x).unwrap() - entropy(1.0 - x).unwrap()).abs() < 1e-15);
        }
        assert_eq!(entropy(0.0).unwrap(), 0.0);
        assert!(entropy(1.5).is_err());
        // float vs exact symmetric form at (r,d) = (10,3)
        let (num, den) = exp_rh(10, 3);
        let exact = num.to_f64().unwrap() / den.to_f64().unwrap();
        let via_h = (10.0 * entropy(0.3).unwrap()).exp();
        assert!((exact / via_h - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sandwich_examples() {
        assert!(binomial_sandwich_check(10, 3).unwrap());
        assert!(binomial_sandwich_check(2, 1).unwrap());
        assert!(binomial_sandwich_check(50, 25).unwrap());
        assert!(binomial_sandwich_check(10, 6).is_err());
    }

    #[test]
    fn beta_upper_examples() {
        assert_eq!(beta_upper_sum(4, 2).to_u64(), Some(11));
        assert_eq!(beta_upper_strong(4, 2).unwrap().to_u64(), Some(9));
        assert_eq!(beta_upper_sum(8, 2).to_u64(), Some(37));
        // d=0: beta is 0 <= 1
        assert_eq!(beta_upper_sum(6, 0).to_u64(), Some(1));
        assert!(beta_upper_strong(5, 5).is_none());
        // the strong ceiling never exceeds the plain sum
        for r in 1..=100u64 {
            for d in 0..r {
                let sum = beta_upper_sum(r, d);
                let strong = beta_upper_strong(r, d).unwrap();
                assert!(strong <= sum, "(r,d)=({r},{d})");
            }
        }
    }

    #[test]
    fn gamma_upper_examples() {
        // 2^{(3/7)*14 + 7 + 3 - 4} = 2^12
        let v = gamma_upper_generic(14, 7, 4, 3);
        assert!((v - 4096.0).abs() < 1e-6);
        assert!(gamma_upper_generic_holds(14, 7, 4, 3, 4095).unwrap());
        assert!(!gamma_upper_generic_holds(14, 7, 4, 3, 4096).unwrap());
        // simplex display value vs exact test at d=3: K_3 * 2^{(1/2 - 1/14) r}
        for (r, size, expect) in [(14u32, 400u128, true), (14, 2664, false)] {
            assert_eq!(gamma_upper_simplex_holds(r, 3, size).unwrap(), expect);
        }
        let display = gamma_upper_simplex(14, 3);
        assert!(gamma_upper_simplex_holds(14, 3, display as u128).unwrap());
        assert!(!gamma_upper_simplex_holds(14, 3, display as u128 + 2).unwrap());
        // exponent rate for d=3 is 3/7 + per-r constant: epsilon_3 = 1/14
        let ratio = gamma_upper_simplex(28, 3) / gamma_upper_simplex(14, 3);
        assert!((ratio.log2() / 14.0 - (0.5 - 1.0 / 14.0)).abs() < 1e-9);
    }

    #[test]
    fn beta_lower_examples() {
        assert_eq!(balanced_formula(8, 2).unwrap().to_u64(), Some(24));
        assert_eq!(prime_formula(8, 2).unwrap().to_u64(), Some(25));
        assert_eq!(balanced_formula(6, 2).unwrap().to_u64(), Some(13));
        assert_eq!(prime_formula(9, 2).unwrap().to_u64(), Some(30));
        assert_eq!(prime_exponential_form(6, 3).unwrap().to_u64(), Some(27));
        assert_eq!(multiblock_formula(&[(4, 1); 4]).to_u64(), Some(256));
        let vals = beta_lower_formulas(8, 2);
        assert_eq!(vals.balanced.as_deref(), Some("24"));
        assert_eq!(vals.prime.as_deref(), Some("25"));
    }

    #[test]
    fn main_term_and_exceptional_pairs() {
        // e^{10 ln 2} = 1024 > C(10,5) * 1 = 252
        assert!(main_term_inequality_holds(10, 5).unwrap());
        for r in 2..=60u64 {
            for d in 1..=(r / 2) {
                assert!(main_term_inequality_holds(r, d).unwrap(), "(r,d)=({r},{d})");
            }
        }
        // the exceptional set for r <= 60 is small and confined to r <= 9
        let pairs = exceptional_pairs(60);
        assert_eq!(
            pairs,
            vec![
                (4, 2),
                (5, 2),
                (6, 2),
                (6, 3),
                (7, 2),
                (7, 3),
                (8, 2),
                (8, 3),
                (8, 4),
                (9, 3),
                (9, 4)
            ]
        );
    }

    #[test]
    fn gamma3_bound_values() {
        // c = 16464^{1/8} ~ 3.3656
        let c = (16464f64).powf(0.125);
        assert!((c - 3.3656).abs() < 5e-4);
        // r=16: c * 2^6 ~ 215.4
        assert!((gamma3_lower(16) - c * 64.0).abs() < 1e-9);
        assert!((gamma3_lower(16) - 215.4).abs() < 0.1);
        assert!(gamma3_lower_holds(16, 216).unwrap());
        assert!(!gamma3_lower_holds(16, 215).unwrap());
        assert!(gamma3_lower_holds(14, 100).is_err());
        assert!(gamma3_raw_holds(14, 1000));
    }

    #[test]
    fn rows_have_expected_entries() {
        let row = bounds_row(8, 2);
        assert!(row.beta_lower.iter().any(|b| b.name == "balanced"));
        assert!(row.beta_upper.iter().any(|b| b.name == "strong"));
        // brackets: beta_8(2) in [25, 33]
        assert_eq!(row.beta_bracket, (25.0, 33.0));
        assert!(row.gamma_bracket.0 <= row.gamma_bracket.1);
        let row = bounds_row(16, 3);
        assert!(row.gamma_upper.iter().any(|b| b.name == "simplex"));
        assert!(row.gamma_lower.iter().any(|b| b.name == "cubic"));
        assert!(row.gamma_bracket.0 > 137.0); // binomial sum 1+16+120
    }
}
