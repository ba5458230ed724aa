//! Exact probabilities, the occupancy formula, tail bounds and the
//! Monte-Carlo estimators, each against an independent oracle.

use hamperm::prob::{
    hoeffding_ln_tail, hoeffding_tail, mc_admissible_rate, occupancy_p0, p22_exact, p3_exact, p_two_admissible,
    p_two_admissible_limit, success_probability_bounds, BoundAlgo, MoveModel, Tail,
};
use hamperm::random::rng;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Direct count over the chord model of a pseudo-3-cycle through vertex 1
/// on `(1 2 … n)`: `j ∈ 2..n−1`, `k ∉ {j−1, j}`, chords `(1, j+1)` and `(j, k+1)`.
fn p3_by_enumeration(n: usize) -> BigRational {
    let succ = |v: usize| v % n + 1;
    let (mut hit, mut total) = (0i64, 0i64);
    for j in 2..n {
        for k in 1..=n {
            if k == j - 1 || k == j {
                continue;
            }
            total += 1;
            if crosses(n, 1, succ(j), j, succ(k)) {
                hit += 1;
            }
        }
    }
    ratio(hit, total)
}

/// Direct count for two chords `(1, j)` and `(r, s)` with `2 ≤ r < j ≤ n`, `s ∉ {r, r+1}`.
fn p22_by_enumeration(n: usize) -> BigRational {
    let (mut hit, mut total) = (0i64, 0i64);
    for j in 2..=n {
        for r in 2..j {
            for s in 1..=n {
                if s == r || s == r + 1 {
                    continue;
                }
                total += 1;
                if crosses(n, 1, j, r, s) {
                    hit += 1;
                }
            }
        }
    }
    ratio(hit, total)
}

/// Strict interleaving of chords on the circle `1..=n`.
fn crosses(n: usize, p: usize, q: usize, r: usize, s: usize) -> bool {
    if p == r || p == s || q == r || q == s {
        return false;
    }
    let d = |v: usize| (v + n - p) % n;
    (d(r) < d(q)) != (d(s) < d(q))
}

#[test]
fn three_cycle_chord_probability() {
    assert_eq!(p3_exact(10).unwrap().value(), &ratio(7, 16));
    assert_eq!(p3_exact(3).unwrap().value(), &ratio(0, 1));
    for n in 4..=30 {
        assert_eq!(p3_exact(n).unwrap().value(), &p3_by_enumeration(n), "n={n}");
    }
    assert!((p3_exact(1_000_000).unwrap().to_f64() - 0.5).abs() < 1e-6);
}

#[test]
fn potdtc_chord_probability() {
    assert_eq!(p22_exact(12).unwrap().value(), &ratio(3, 10));
    assert_eq!(p22_exact(3).unwrap().value(), &ratio(0, 1));
    for n in 4..=30 {
        assert_eq!(p22_exact(n).unwrap().value(), &p22_by_enumeration(n), "n={n}");
    }
    assert!((p22_exact(1_000_000).unwrap().to_f64() - 1.0 / 3.0).abs() < 1e-6);
}

#[test]
fn two_admissible_bound_checkpoints() {
    assert_eq!(p_two_admissible_limit().value(), &ratio(143, 180));
    assert!(p_two_admissible(30).unwrap().to_f64() > 0.7135599);
    assert!(p_two_admissible(20).unwrap().to_f64() >= 0.7);
    let far = p_two_admissible(10_000_000).unwrap().to_f64();
    assert!((far - 143.0 / 180.0).abs() < 1e-5);
    // Negative for small n: the value clamps while the raw formula does not.
    let small = p_two_admissible(8).unwrap();
    assert!(small.was_clamped());
    assert_eq!(small.value(), &ratio(0, 1));
    assert!(small.raw() < &ratio(0, 1));
    assert!(p_two_admissible(6).is_err());
}

#[test]
fn occupancy_small_cases() {
    for r in 1..6 {
        assert_eq!(occupancy_p0(r, 1).unwrap().value(), &ratio(1, 1));
    }
    assert_eq!(occupancy_p0(2, 2).unwrap().value(), &ratio(1, 2));
    assert_eq!(occupancy_p0(2, 3).unwrap().value(), &ratio(0, 1));
    // 3 balls in 3 cells: 3! of the 27 placements cover every cell.
    assert_eq!(occupancy_p0(3, 3).unwrap().value(), &ratio(6, 27));
}

#[test]
fn occupancy_matches_simulation() {
    let exact = occupancy_p0(30, 5).unwrap().to_f64();
    let trials = 200_000;
    let mut r = rng(31, 0);
    let mut hits = 0u32;
    for _ in 0..trials {
        let mut seen = [false; 5];
        for _ in 0..30 {
            seen[r.gen_range(0..5)] = true;
        }
        hits += u32::from(seen.iter().all(|&s| s));
    }
    let mean = f64::from(hits) / trials as f64;
    let sigma = (exact * (1.0 - exact) / trials as f64).sqrt();
    assert!((mean - exact).abs() < 4.0 * sigma, "{mean} vs {exact}");
}

/// Exact binomial tails by summing the mass function in log space.
fn binomial_tails(a: u64, p: f64, lo: f64, hi: f64) -> (f64, f64) {
    let ln_fact = |k: u64| (1..=k).map(|i| (i as f64).ln()).sum::<f64>();
    let (mut lower, mut upper) = (0.0, 0.0);
    for k in 0..=a {
        let ln_pmf = ln_fact(a) - ln_fact(k) - ln_fact(a - k) + k as f64 * p.ln() + (a - k) as f64 * (1.0 - p).ln();
        let kf = k as f64;
        if kf <= lo {
            lower += ln_pmf.exp();
        }
        if kf >= hi {
            upper += ln_pmf.exp();
        }
    }
    (lower, upper)
}

#[test]
fn tail_bounds_dominate_exact_binomial_tails() {
    for a in [10u64, 50, 200, 1000] {
        for p in [0.05, 0.1, 0.3, 0.5, 0.7, 0.9] {
            for alpha in [0.1, 0.3, 0.5, 0.9] {
                let mean = a as f64 * p;
                let (lower, upper) = binomial_tails(a, p, (1.0 - alpha) * mean, (1.0 + alpha) * mean);
                let bl = hoeffding_tail(a as f64, p, alpha, Tail::Lower).unwrap();
                let bu = hoeffding_tail(a as f64, p, alpha, Tail::Upper).unwrap();
                assert!(lower <= bl * (1.0 + 1e-9), "lower a={a} p={p} α={alpha}: {lower} > {bl}");
                assert!(upper <= bu * (1.0 + 1e-9), "upper a={a} p={p} α={alpha}: {upper} > {bu}");
            }
        }
    }
}

#[test]
fn tail_bound_exponents() {
    let n: f64 = 30.0;
    let a = 6.0 * n.powi(3) * n.ln();
    let ln = hoeffding_ln_tail(a, 0.427, 0.5, Tail::Lower).unwrap();
    // α²ap/2 with α = 1/2 and ap = 2.562·n³ ln n.
    let expected = -0.125 * 2.562 * n.powi(3) * n.ln();
    assert!((ln - expected).abs() / expected.abs() < 1e-12, "{ln} vs {expected}");
    assert!((hoeffding_tail(1.0, 0.5, 1e-9, Tail::Lower).unwrap() - 1.0).abs() < 1e-12);
    assert!(hoeffding_tail(10.0, 0.0, 0.5, Tail::Lower).is_err());
    assert!(hoeffding_tail(10.0, 0.5, 0.0, Tail::Upper).is_err());
}

#[test]
fn monte_carlo_agrees_with_closed_forms() {
    let trials = 200_000;
    for (kind, exact) in [(MoveModel::ThreeCycle, p3_exact(30).unwrap()), (MoveModel::Potdtc, p22_exact(30).unwrap())] {
        let est = mc_admissible_rate(kind, 30, trials, 5).unwrap();
        let p = exact.to_f64();
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((est.mean - p).abs() < 4.0 * sigma, "{kind:?}: {} vs {p}", est.mean);
    }
    assert_eq!(mc_admissible_rate(MoveModel::ThreeCycle, 3, 1000, 1).unwrap().successes, 0);
    assert_eq!(mc_admissible_rate(MoveModel::Potdtc, 3, 1000, 1).unwrap().successes, 0);
    assert_eq!(
        mc_admissible_rate(MoveModel::Potdtc, 20, 5000, 9).unwrap(),
        mc_admissible_rate(MoveModel::Potdtc, 20, 5000, 9).unwrap()
    );
}

#[test]
fn success_bounds_shrink_with_n() {
    let mut prev = 0.0;
    for n in (10..=100).step_by(10) {
        let b = success_probability_bounds(n, BoundAlgo::G).unwrap();
        assert!(b.bound > 0.0 && b.bound <= 1.0);
        assert!(b.log10_one_minus_bound < prev, "n={n}");
        prev = b.log10_one_minus_bound;
    }
    let d = success_probability_bounds(30, BoundAlgo::D).unwrap();
    let names: Vec<&str> = d.inputs.iter().map(|(k, _)| k.as_str()).collect();
    assert_eq!(names, ["p_lower", "p_prime_upper", "p_net", "alpha", "occupancy_exponent"]);
    assert!(d.bound > 0.0 && d.bound <= 1.0 && d.log10_one_minus_bound < 0.0);
    assert!(success_probability_bounds(29, BoundAlgo::D).is_err());
}
