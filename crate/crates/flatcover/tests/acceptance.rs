//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the measured values (run with `--nocapture` to see them).

use flatcover::bounds;
use flatcover::codes::{carlitz_uchiyama_check, dual_bch, simplex_code, weight_stats};
use flatcover::constructions::{
    complete_simplex, nonblocking_balanced, nonblocking_multiblock, nonblocking_prime,
    rk_parameters,
};
use flatcover::exact::{exact_beta, exact_gamma, exact_sum3, SearchOptions};
use flatcover::f2::{Dim, PointF2};
use flatcover::poly2::{
    dim_multilinear, evaluation_rank, fact1_check, indicator_of_coflat, MultilinearPoly,
};
use flatcover::verify::{check_witnesses, is_complete, is_nonblocking, CheckMode, VerifyOptions};
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn dim(r: u32) -> Dim {
    Dim::new(r).unwrap()
}

fn sopts() -> SearchOptions {
    SearchOptions::default()
}

fn vopts() -> VerifyOptions {
    VerifyOptions::default()
}

#[test]
fn criterion_01_line_values_exact() {
    for r in 2..=4u32 {
        let g = exact_gamma(dim(r), 1, &sopts()).unwrap();
        assert_eq!(g.value, 2, "gamma_{r}(1)");
        let b = exact_beta(dim(r), 1, &sopts()).unwrap();
        assert_eq!(b.value, 2, "beta_{r}(1)");
        let bh = exact_beta(dim(r), r - 1, &sopts()).unwrap();
        assert_eq!(bh.value, (1 << r) - 2, "beta_{r}({})", r - 1);
    }
    println!(
        "criterion 01: PASS - gamma_r(1) = beta_r(1) = 2 and beta_r(r-1) = 2^r - 2 for r = 2..4"
    );
}

#[test]
fn criterion_02_duality_identity() {
    let mut checked = 0;
    for r in 2..=4u32 {
        for d in 0..=r {
            let beta = exact_beta(dim(r), d, &sopts()).unwrap().value;
            let gamma = exact_gamma(dim(r), r - d, &sopts()).unwrap().value;
            assert_eq!(
                beta + gamma,
                1 << r,
                "beta_{r}({d}) + gamma_{r}({}) != 2^{r}",
                r - d
            );
            checked += 1;
        }
    }
    println!("criterion 02: PASS - beta_r(d) + gamma_r(r-d) = 2^r on {checked} pairs, r = 2..4");
}

#[test]
fn criterion_03_sum3_equivalence() {
    for r in 2..=4u32 {
        let s3 = exact_sum3(dim(r), &sopts()).unwrap();
        let g2 = exact_gamma(dim(r), 2, &sopts()).unwrap();
        assert_eq!(s3.value, g2.value, "r={r}");
        // the counting bound C(|S|, 3) >= 2^r at the optimum
        let s = s3.value;
        assert!(
            s * (s - 1) * (s - 2) / 6 >= 1 << r,
            "C({s},3) < 2^{r} at the optimum"
        );
    }
    println!("criterion 03: PASS - exact_sum3(r) = gamma_r(2) and C(|S|,3) >= 2^r for r = 2..4");
}

#[test]
fn criterion_04_constructions_pass_oracles() {
    let mut count = 0;
    // balanced: every valid (r, d) with r <= 6
    for r in 4..=6u32 {
        for d in 2..=(r / 2) {
            let rec = nonblocking_balanced(dim(r), d).unwrap();
            let rep = is_nonblocking(rec.points().unwrap(), d, &vopts()).unwrap();
            assert!(rep.holds, "balanced ({r},{d})");
            count += 1;
        }
    }
    // prime: every valid (r, d) with r <= 6
    for r in 2..=6u32 {
        for d in 2..=r {
            let rec = nonblocking_prime(dim(r), d).unwrap();
            let rep = is_nonblocking(rec.points().unwrap(), d, &vopts()).unwrap();
            assert!(rep.holds, "prime ({r},{d})");
            count += 1;
        }
    }
    // multiblock: representative valid part lists for every (r, d), r <= 6:
    // the single full part when r <= 2d, unit-weight parts otherwise, and
    // the rk-derived parts where the regime applies
    for r in 2..=6u32 {
        for d in 1..=r {
            let mut part_lists: Vec<Vec<(u32, u32)>> = Vec::new();
            if r <= 2 * d {
                part_lists.push(vec![(r, d)]);
            }
            let k = d.min(r / (d + 1));
            if k >= 1 {
                part_lists.push(vec![(d + 1, 1); k as usize]);
            }
            if let Ok(p) = rk_parameters(dim(r), d) {
                part_lists.push(p.parts);
            }
            for parts in part_lists {
                let rec = nonblocking_multiblock(dim(r), d, &parts).unwrap();
                let rep = is_nonblocking(rec.points().unwrap(), d, &vopts()).unwrap();
                assert!(rep.holds, "multiblock ({r},{d},{parts:?})");
                count += 1;
            }
        }
    }
    // complete_simplex(r, 3): witness checks for r = 7..16, search oracle at 7
    for r in 7..=16u32 {
        let rec = complete_simplex(dim(r), 3).unwrap();
        let rep = check_witnesses(&rec, CheckMode::Full);
        assert!(rep.holds, "simplex ({r},3): {:?}", rep.counterexample);
        count += 1;
    }
    let rec = complete_simplex(dim(7), 3).unwrap();
    let rep = is_complete(rec.points().unwrap(), 3, &vopts()).unwrap();
    assert!(rep.holds, "simplex (7,3) exhaustive");
    println!("criterion 04: PASS - {count} construction instances verified");
}

#[test]
fn criterion_05_size_formulas() {
    let mut count = 0;
    for r in 4..=20u32 {
        for d in 2..=(r / 2) {
            let rec = nonblocking_balanced(dim(r), d).unwrap();
            let formula = bounds::balanced_formula(r, d).unwrap();
            assert_eq!(rec.size(), formula.to_u128().unwrap(), "balanced ({r},{d})");
            count += 1;
        }
    }
    for r in 2..=20u32 {
        for d in 2..=r {
            let rec = nonblocking_prime(dim(r), d).unwrap();
            let formula = bounds::prime_formula(r, d).unwrap();
            assert_eq!(rec.size(), formula.to_u128().unwrap(), "prime ({r},{d})");
            count += 1;
        }
    }
    // the named examples
    assert_eq!(nonblocking_balanced(dim(8), 2).unwrap().size(), 24);
    assert_eq!(nonblocking_balanced(dim(6), 2).unwrap().size(), 13);
    assert_eq!(nonblocking_prime(dim(9), 2).unwrap().size(), 30);
    // multiblock products
    for (r, d, parts, expect) in [
        (4u32, 2u32, vec![(4u32, 2u32)], 6u128),
        (8, 4, vec![(8, 4)], 70),
        (16, 4, rk_parameters(dim(16), 4).unwrap().parts, 256),
    ] {
        let rec = nonblocking_multiblock(dim(r), d, &parts).unwrap();
        assert_eq!(rec.size(), expect);
        assert_eq!(
            rec.size(),
            bounds::multiblock_formula(&parts).to_u128().unwrap()
        );
        count += 1;
    }
    println!("criterion 05: PASS - {count} sizes match their closed forms by set enumeration");
}

#[test]
fn criterion_06_bound_sandwich() {
    // exact values against every applicable bound
    for r in 2..=4u32 {
        let (ru, _) = (r as u64, ());
        for d in 0..=r {
            let du = d as u64;
            let gamma = exact_gamma(dim(r), d, &sopts()).unwrap().value as u128;
            let beta = exact_beta(dim(r), d, &sopts()).unwrap().value as u128;
            // gamma floor and ceilings
            let floor = bounds::gamma_lower_binomial(ru, du).to_u128().unwrap();
            assert!(gamma >= floor, "gamma_{r}({d}) = {gamma} < {floor}");
            assert!(gamma <= 1 << r);
            if d >= 3 {
                assert!(bounds::gamma_upper_simplex_holds(r, d, gamma).unwrap());
                assert!(bounds::gamma_upper_bch_holds(
                    r,
                    d,
                    bounds::BCH_K_DEFAULT,
                    gamma
                ));
            }
            // beta ceilings, strong form included
            let sum = bounds::beta_upper_sum(ru, du).to_u128().unwrap();
            assert!(beta <= sum, "beta_{r}({d}) = {beta} > {sum}");
            assert!(bounds::beta_upper_strong_holds(ru, du, beta));
            if let Some(refined) = bounds::beta_upper_refined_half(ru, du) {
                assert!(beta <= refined.to_u128().unwrap());
            }
            if let Some(refined) = bounds::beta_upper_refined_outer(ru, du) {
                assert!(beta <= refined.to_u128().unwrap());
            }
            // beta floors from the constructions' closed forms
            for formula in [
                bounds::balanced_formula(r, d),
                bounds::prime_formula(r, d),
                bounds::prime_exponential_form(r, d),
            ]
            .into_iter()
            .flatten()
            {
                assert!(
                    beta >= formula.to_u128().unwrap(),
                    "beta_{r}({d}) = {beta} below a lower-bound formula {formula}"
                );
            }
        }
    }
    // constructions: non-blocking sizes below every ceiling, complete sizes
    // above every floor and below their own theorem's bound
    for r in 4..=6u32 {
        for d in 2..=(r / 2) {
            let rec = nonblocking_balanced(dim(r), d).unwrap();
            let size = rec.size();
            assert!(
                size <= bounds::beta_upper_sum(r as u64, d as u64)
                    .to_u128()
                    .unwrap()
            );
            assert!(bounds::beta_upper_strong_holds(r as u64, d as u64, size));
        }
        for d in 2..=r {
            let rec = nonblocking_prime(dim(r), d).unwrap();
            let size = rec.size();
            assert!(
                size <= bounds::beta_upper_sum(r as u64, d as u64)
                    .to_u128()
                    .unwrap()
            );
            assert!(bounds::beta_upper_strong_holds(r as u64, d as u64, size));
        }
    }
    for r in 7..=16u32 {
        let rec = complete_simplex(dim(r), 3).unwrap();
        let size = rec.size();
        let floor = bounds::gamma_lower_binomial(r as u64, 3).to_u128().unwrap();
        assert!(size >= floor, "simplex ({r},3) size {size} below {floor}");
        if r >= 15 {
            assert!(
                bounds::gamma3_lower_holds(r, size).unwrap(),
                "simplex ({r},3) below the cubic floor"
            );
        }
        assert!(
            bounds::gamma_upper_simplex_holds(r, 3, size).unwrap(),
            "simplex ({r},3) breaks its own bound"
        );
        let n = rec.meta().n.unwrap();
        let mu = rec.meta().mu.unwrap();
        assert!(bounds::gamma_upper_generic_holds(r, n, mu, 3, size).unwrap());
    }
    println!("criterion 06: PASS - sandwich checks hold for all exact values and constructions");
}

#[test]
fn criterion_07_coding_kernel() {
    for d in 1..=10u32 {
        let c = simplex_code(d).unwrap();
        let s = weight_stats(&c).unwrap();
        let w = 1u32 << (d - 1);
        assert_eq!(s.distribution.len(), 2, "simplex({d})");
        assert_eq!(s.distribution.get(&0), Some(&1));
        assert_eq!(s.distribution.get(&w), Some(&((1u64 << d) - 1)));
    }
    for (m, e) in [(4u32, 2u32), (5, 2), (6, 2), (5, 4)] {
        let c = dual_bch(m, e).unwrap();
        assert_eq!(c.k(), e * m, "dual_bch({m},{e}) dimension");
        assert!(
            carlitz_uchiyama_check(&c, m, e).unwrap(),
            "dual_bch({m},{e}) weight interval"
        );
    }
    println!(
        "criterion 07: PASS - simplex weights 2^(d-1) for d <= 10; dual-BCH dims em and \
         Carlitz-Uchiyama intervals for (4,2),(5,2),(6,2),(5,4)"
    );
}

#[test]
fn criterion_08_polynomial_method() {
    // dimension formula against exact binomial sums
    for r in 1..=20u32 {
        for d in 0..=r {
            assert_eq!(
                dim_multilinear(dim(r), d).unwrap(),
                bounds::binomial_sum(r as u64, d as u64).to_u128().unwrap()
            );
        }
    }
    // interpolation round-trip: every function at r <= 4
    for r in 1..=4u32 {
        let n = 1usize << r;
        for f in 0u64..(1u64 << n) {
            let mut t = flatcover::bits::Bits::zeros(n);
            for i in 0..n {
                if (f >> i) & 1 == 1 {
                    t.set(i);
                }
            }
            let p = MultilinearPoly::interpolate(dim(r), &t).unwrap();
            assert_eq!(p.truth_table(), t);
        }
    }
    // 10^4 random functions spread over r = 6..10
    let mut rng = StdRng::seed_from_u64(0xF1A7);
    for r in 6..=10u32 {
        for _ in 0..2000 {
            let n = 1usize << r;
            let mut t = flatcover::bits::Bits::zeros(n);
            for w in t.words_mut() {
                *w = rng.random();
            }
            let p = MultilinearPoly::interpolate(dim(r), &t).unwrap();
            assert_eq!(p.truth_table(), t);
        }
    }
    // Fact 1: 10^4 random polynomials of degree < d sum to zero
    for _ in 0..10_000 {
        let d = rng.random_range(2..=10u32);
        let count = rng.random_range(1..=6usize);
        let monos: Vec<u64> = (0..count)
            .map(|_| loop {
                let m = rng.random::<u64>() & dim(d).word_mask();
                if m.count_ones() < d {
                    break m;
                }
            })
            .collect();
        let p = MultilinearPoly::from_monomials(dim(d), monos).unwrap();
        assert!(!fact1_check(&p).unwrap());
    }
    // Fact 2: 10^4 random nonzero polynomials have a nonvanishing point
    let mut done = 0;
    while done < 10_000 {
        let r = rng.random_range(1..=12u32);
        let count = rng.random_range(1..=6usize);
        let monos: Vec<u64> = (0..count)
            .map(|_| rng.random::<u64>() & dim(r).word_mask())
            .collect();
        let p = MultilinearPoly::from_monomials(dim(r), monos).unwrap();
        if p.is_zero() {
            continue;
        }
        assert!(!p.truth_table().is_zero());
        done += 1;
    }
    // witness-flat indicators on three verified non-blocking sets at (4,2)
    let records = [
        nonblocking_balanced(dim(4), 2).unwrap(),
        nonblocking_prime(dim(4), 2).unwrap(),
        nonblocking_multiblock(dim(4), 2, &[(4, 2)]).unwrap(),
    ];
    for rec in &records {
        assert!(check_witnesses(rec, CheckMode::Full).holds);
        let members: Vec<PointF2> = rec.enumerate_points();
        let polys: Vec<MultilinearPoly> = members
            .iter()
            .map(|&b| indicator_of_coflat(&rec.witness(b)))
            .collect();
        assert_eq!(
            evaluation_rank(&polys, &members),
            members.len() as u32,
            "{rec:?}"
        );
    }
    println!("criterion 08: PASS - dimension formula, interpolation round-trips, Facts 1-2, and witness-indicator ranks");
}

#[test]
fn criterion_09_asymptotic_rate_trend() {
    // trend check on the simplex construction at d=3
    let mut rates = Vec::new();
    for r in [14u32, 21, 28] {
        let rec = complete_simplex(dim(r), 3).unwrap();
        let rate = (rec.size() as f64).log2() / r as f64;
        rates.push((r, rec.size(), rate));
    }
    for w in rates.windows(2) {
        assert!(
            w[1].2 < w[0].2,
            "rate not decreasing: {:?} -> {:?}",
            w[0],
            w[1]
        );
    }
    let threshold = 3.0 / 7.0 + 0.15;
    for &(r, size, rate) in &rates {
        assert!(
            rate <= threshold,
            "log2|C|/r at r={r} is {rate:.4} (|C| = {size}), above 3/7 + 0.15 = {threshold:.4}; \
             rates measured: {rates:?}"
        );
    }
    println!("criterion 09: PASS - rates {rates:?} all below {threshold:.4} and decreasing");
}

#[test]
fn criterion_10_inequality_spot_checks() {
    let mut sandwich = 0;
    for r in 2..=200u64 {
        for d in 1..=(r / 2) {
            assert!(
                bounds::binomial_sandwich_check(r, d).unwrap(),
                "entropy sandwich fails at (r,d)=({r},{d})"
            );
            sandwich += 1;
        }
    }
    let mut main_term = 0;
    for r in 2..=100u64 {
        for d in 1..=(r / 2) {
            assert!(
                bounds::main_term_inequality_holds(r, d).unwrap(),
                "main-term inequality fails at (r,d)=({r},{d})"
            );
            main_term += 1;
        }
    }
    println!(
        "criterion 10: PASS - entropy sandwich on {sandwich} pairs (r <= 200), \
         main-term inequality on {main_term} pairs (r <= 100), all exact"
    );
}
