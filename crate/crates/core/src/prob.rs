//! Exact probability formulas and Monte-Carlo estimators for admissible moves.
//!
//! - [`p3_exact`] / [`p22_exact`]: the probability that two random chords of
//!   a pseudo-hamilton circuit properly intersect, in the 3-cycle and the
//!   POTDTC sampling models, `(n−3)/(2(n−2))` and `(n−3)/(3(n−2))`.
//! - [`p_two_admissible`]: the degree-6 rational lower bound for obtaining at
//!   least two admissible 3-cycles through a single pseudo-arc vertex.
//! - [`occupancy_p0`]: the probability that `r` balls occupy all `n` cells.
//! - [`hoeffding_tail`]: binomial tail bounds (`exp(−α²ap/2)` for the lower tail).
//! - [`mc_admissible_rate`]: seeded Monte-Carlo estimates of the chord
//!   intersection rates.
//! - [`success_probability_bounds`]: the closed-form success bounds of
//!   Algorithms G and D, evaluated in log space.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::random;

/// Random stream of the Monte-Carlo estimators.
const STREAM_MC: u64 = 20;

/// An exact probability: the unclamped rational and its value clamped to `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalProb {
    raw: BigRational,
    value: BigRational,
}

impl RationalProb {
    /// Wraps an exact rational, clamping it to `[0, 1]`.
    pub fn new(raw: BigRational) -> Self {
        let value = if raw.is_negative() {
            BigRational::zero()
        } else if raw > BigRational::one() {
            BigRational::one()
        } else {
            raw.clone()
        };
        RationalProb { raw, value }
    }

    /// `num / den` as an exact probability.
    pub fn from_ints(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(Self::new(BigRational::new(num.into(), den)))
    }

    /// The clamped value, in lowest terms.
    pub fn value(&self) -> &BigRational {
        &self.value
    }

    /// The formula's value before clamping.
    pub fn raw(&self) -> &BigRational {
        &self.raw
    }

    /// Numerator of the clamped value.
    pub fn numerator(&self) -> &BigInt {
        self.value.numer()
    }

    /// Denominator of the clamped value (positive).
    pub fn denominator(&self) -> &BigInt {
        self.value.denom()
    }

    /// Whether clamping changed the value.
    pub fn was_clamped(&self) -> bool {
        self.raw != self.value
    }

    /// The clamped value as a float.
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for RationalProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.value.numer(), self.value.denom())
    }
}

fn big(v: i128) -> BigInt {
    BigInt::from(v)
}

fn check_n(n: usize, floor: usize, what: &str) -> Result<i128> {
    if n < floor {
        return Err(Error::InvalidInput(format!("{what} needs n ≥ {floor}, got {n}")));
    }
    Ok(n as i128)
}

/// Probability that the two chords `(l, H(j))`, `(j, H(k))` of a random
/// pseudo-3-cycle properly intersect: `(n−3) / (2(n−2))`.
pub fn p3_exact(n: usize) -> Result<RationalProb> {
    let n = check_n(n, 3, "p3")?;
    RationalProb::from_ints(big(n - 3), big(2 * (n - 2)))
}

/// Probability that two random chords, neither an arc of `H`, properly
/// intersect: `(n−3) / (3(n−2))`.
pub fn p22_exact(n: usize) -> Result<RationalProb> {
    let n = check_n(n, 3, "p22")?;
    RationalProb::from_ints(big(n - 3), big(3 * (n - 2)))
}

/// Numerator coefficients (degree 6 down to 0) of the two-admissible bound.
///
/// The constant is `+27624`: subtracting the two "at most one admissible
/// 3-cycle" counts from the total count `1440 · C(n−2,2)² (n−2)²` gives it;
/// copies with `−27624` are typos.
pub const TWO_ADMISSIBLE_NUMERATOR: [i128; 7] = [286, -4326, 23489, -80546, 190342, -112242, 27624];

/// Denominator coefficients: `1440 · C(n−2,2)² (n−2)²`.
pub const TWO_ADMISSIBLE_DENOMINATOR: [i128; 7] = [360, -5040, 29160, -89280, 152640, -138240, 51840];

fn horner(coeffs: &[i128], n: &BigInt) -> BigInt {
    coeffs.iter().fold(BigInt::zero(), |acc, &c| acc * n + big(c))
}

/// Lower bound on the probability of at least two admissible 3-cycles
/// through the only pseudo-arc vertex of `H = (1 2 … n)` when the relevant
/// vertices have the minimum degrees.  Exact; requires `n ≥ 7`.
///
/// The polynomial is negative for `n ≤ 8`; [`RationalProb::value`] then
/// clamps to 0 while [`RationalProb::raw`] keeps the formula's value.
pub fn p_two_admissible(n: usize) -> Result<RationalProb> {
    check_n(n, 7, "the two-admissible bound")?;
    let nb = BigInt::from(n);
    let num = horner(&TWO_ADMISSIBLE_NUMERATOR, &nb);
    let den = horner(&TWO_ADMISSIBLE_DENOMINATOR, &nb);
    RationalProb::from_ints(num, den)
}

/// `143/180`, the limit of [`p_two_admissible`].
pub fn p_two_admissible_limit() -> RationalProb {
    RationalProb::new(BigRational::new(big(143), big(180)))
}

fn binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k.min(n));
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Probability that `r` balls thrown uniformly into `n` cells occupy every
/// cell: `Σ_v (−1)^v C(n,v) (1 − v/n)^r`, exactly.
pub fn occupancy_p0(r: u64, n: u64) -> Result<RationalProb> {
    if n == 0 {
        return Err(Error::InvalidInput("occupancy needs n ≥ 1".into()));
    }
    let exp = u32::try_from(r).map_err(|_| Error::InvalidInput(format!("r = {r} is too large for exact evaluation")))?;
    let nb = BigInt::from(n);
    let den = num_traits::pow::Pow::pow(&nb, exp);
    let mut num = BigInt::zero();
    for v in 0..=n {
        let term = binomial(n, v) * num_traits::pow::Pow::pow(BigInt::from(n - v), exp);
        if v % 2 == 0 {
            num += term;
        } else {
            num -= term;
        }
    }
    RationalProb::from_ints(num, den)
}

/// Which binomial tail a Hoeffding bound covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tail {
    /// `Pr(B(a,p) ≤ (1−α)ap)`.
    Lower,
    /// `Pr(B(a,p) ≥ (1+α)ap)`.
    Upper,
}

impl std::str::FromStr for Tail {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lower" => Ok(Tail::Lower),
            "upper" => Ok(Tail::Upper),
            _ => Err(Error::InvalidInput(format!("unknown tail {s:?} (expected lower or upper)"))),
        }
    }
}

/// Natural log of the Hoeffding-type bound on a binomial tail: `−α²ap/2`
/// for the lower tail and the Chernoff form `−α²ap/(2+α)` for the upper
/// tail (the symmetric `/2` exponent is not a valid upper-tail bound when
/// `p` is small).
pub fn hoeffding_ln_tail(a: f64, p: f64, alpha: f64, tail: Tail) -> Result<f64> {
    if !(a >= 1.0 && a.is_finite()) {
        return Err(Error::InvalidInput(format!("a must be a finite value ≥ 1, got {a}")));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidInput(format!("p must lie in (0, 1), got {p}")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidInput(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let denom = match tail {
        Tail::Lower => 2.0,
        Tail::Upper => 2.0 + alpha,
    };
    Ok(-alpha * alpha * a * p / denom)
}

/// The bound `exp(hoeffding_ln_tail(..))` on the chosen binomial tail.
pub fn hoeffding_tail(a: f64, p: f64, alpha: f64, tail: Tail) -> Result<f64> {
    hoeffding_ln_tail(a, p, alpha, tail).map(f64::exp)
}

/// Which chord-pair sampling model to estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveModel {
    /// Chords `(1, H(j))` and `(j, H(k))` of a pseudo-3-cycle `(1 j k)`.
    ThreeCycle,
    /// Chords `(1, j)` and `(r, s)` with `1 < r < j`, neither an arc of `H`.
    Potdtc,
}

impl std::str::FromStr for MoveModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "three-cycle" | "three_cycle" | "3cycle" => Ok(MoveModel::ThreeCycle),
            "potdtc" => Ok(MoveModel::Potdtc),
            _ => Err(Error::InvalidInput(format!("unknown move model {s:?} (expected three-cycle or potdtc)"))),
        }
    }
}

/// A Monte-Carlo estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    /// Trials run.
    pub trials: u64,
    /// Successful trials.
    pub successes: u64,
    /// `successes / trials`.
    pub mean: f64,
    /// Standard error of the mean.
    pub stderr: f64,
}

/// Whether chords `(p, q)` and `(r, s)` of the circle `1 … n` share no
/// endpoint and cross.
fn chords_cross(n: usize, p: usize, q: usize, r: usize, s: usize) -> bool {
    if p == r || p == s || q == r || q == s {
        return false;
    }
    // Clockwise distance from p.
    let d = |v: usize| (v + n - p) % n;
    let inside = |v: usize| d(v) < d(q);
    inside(r) != inside(s)
}

/// Seeded Monte-Carlo estimate of the chord-intersection rate of a model.
pub fn mc_admissible_rate(kind: MoveModel, n: usize, trials: u64, seed: u64) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be ≥ 1".into()));
    }
    if n < 3 {
        return Err(Error::InvalidInput(format!("the sampling models need n ≥ 3, got {n}")));
    }
    let mut rng = random::rng(seed, STREAM_MC);
    let succ = |v: usize| v % n + 1;
    let mut successes = 0u64;
    for _ in 0..trials {
        let hit = match kind {
            MoveModel::ThreeCycle => {
                // j ∈ 2..=n−1 so that (1, H(j)) is neither a loop nor an arc of H.
                let j = rng.gen_range(2..n);
                // k ∉ {j−1, j} so that (j, H(k)) is neither a loop nor an arc of H.
                let mut k = rng.gen_range(1..=n - 2);
                for skip in [j - 1, j] {
                    if k >= skip {
                        k += 1;
                    }
                }
                chords_cross(n, 1, succ(j), j, succ(k))
            }
            MoveModel::Potdtc => {
                // A uniform pair 2 ≤ r < j ≤ n, then s ∉ {r, H(r)}.
                let (mut r, mut j) = (rng.gen_range(2..=n), rng.gen_range(2..n));
                if j >= r {
                    j += 1;
                }
                if r > j {
                    std::mem::swap(&mut r, &mut j);
                }
                let mut s = rng.gen_range(1..=n - 2);
                for skip in [r, r + 1] {
                    if s >= skip {
                        s += 1;
                    }
                }
                chords_cross(n, 1, j, r, s)
            }
        };
        successes += u64::from(hit);
    }
    let mean = successes as f64 / trials as f64;
    let stderr = (mean * (1.0 - mean) / trials as f64).sqrt();
    Ok(McEstimate { trials, successes, mean, stderr })
}

/// Which algorithm's success bound to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundAlgo {
    /// Algorithm G on random graphs.
    G,
    /// Algorithm D on random digraphs (stated for `n ≥ 30`).
    D,
}

impl std::str::FromStr for BoundAlgo {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "g" => Ok(BoundAlgo::G),
            "d" => Ok(BoundAlgo::D),
            _ => Err(Error::InvalidInput(format!("unknown algorithm {s:?} (expected g or d)"))),
        }
    }
}

/// A success-probability lower bound of the form `∏ (1 − t_k)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuccessBound {
    /// Vertex count.
    pub n: usize,
    /// Algorithm.
    pub algo: BoundAlgo,
    /// Iterations the bound assumes, `12 n³ ln n`.
    pub iterations: f64,
    /// Named inputs of the bound.
    pub inputs: Vec<(String, f64)>,
    /// `ln t_k` of each failure term.
    pub ln_failure_terms: Vec<f64>,
    /// `log₁₀(1 − bound)`.
    pub log10_one_minus_bound: f64,
    /// `1 − bound` in scientific notation.
    pub one_minus_bound: String,
    /// The bound as a float (1.0 whenever `1 − bound` is below `f64` resolution).
    pub bound: f64,
}

/// `ln(1 − e^{−x})` given `ln x`.
fn ln_one_minus_exp_neg(ln_x: f64) -> f64 {
    if ln_x < -40.0 {
        // 1 − e^{−x} = x(1 − x/2 + …) with x < 1e−17.
        ln_x
    } else {
        (-(-ln_x.exp()).exp_m1()).ln()
    }
}

/// `ln(1 − ∏(1 − t_k))` given the `ln t_k`.
fn ln_one_minus_product(ln_terms: &[f64]) -> f64 {
    let max = ln_terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max < -40.0 {
        // 1 − ∏(1 − t_k) = Σ t_k · (1 + O(max t)), and max t < 1e−17.
        let s: f64 = ln_terms.iter().map(|l| (l - max).exp()).sum();
        max + s.ln()
    } else {
        let ln_prod: f64 = ln_terms.iter().map(|l| (-l.exp()).ln_1p()).sum();
        (-ln_prod.exp_m1()).ln()
    }
}

fn scientific(log10: f64) -> String {
    let e = log10.floor();
    let m = 10f64.powf(log10 - e);
    format!("{m:.4}e{e:+}")
}

/// Lower bounds on the success probability of Algorithms G and D.
///
/// For G the bound is `(1 − 2(1−e^{−x})y) · e^{−x} · (1 − y)` with
/// `x = n^{−(6n²−1)}`, `y = n^{−6n²}`.  For D (`n ≥ 30`) it combines the
/// Hoeffding tail at `a = 6n³ ln n`, `p = 0.427`, `α = 0.5` with the same
/// occupancy structure at `2.562 n²` and the circuit-closing term
/// `n^{−1.281 n²}`.  Evaluation is in log space; `1 − bound` is reported.
pub fn success_probability_bounds(n: usize, algo: BoundAlgo) -> Result<SuccessBound> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("success bounds need n ≥ 2, got {n}")));
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let iterations = 12.0 * nf.powi(3) * ln_n;
    let (inputs, ln_terms) = match algo {
        BoundAlgo::G => {
            let e = 6.0 * nf * nf;
            let ln_x = -(e - 1.0) * ln_n;
            let ln_y = -e * ln_n;
            let ln_b = ln_one_minus_exp_neg(ln_x);
            let ln_a = 2f64.ln() + ln_b + ln_y;
            (vec![("occupancy_exponent".to_string(), e)], vec![ln_a, ln_b, ln_y])
        }
        BoundAlgo::D => {
            if n < 30 {
                return Err(Error::InvalidInput(format!("the Algorithm D bound is stated for n ≥ 30, got {n}")));
            }
            let (p, p_prime, p_net, alpha) = (0.7135599, 0.28644, 0.427, 0.5);
            let a = 6.0 * nf.powi(3) * ln_n;
            let ln_h = hoeffding_ln_tail(a, p_net, alpha, Tail::Lower)?;
            let e = 2.0 * 1.281 * nf * nf;
            let ln_x = -(e - 1.0) * ln_n;
            let ln_y = -e * ln_n;
            let ln_b = ln_one_minus_exp_neg(ln_x);
            let ln_a = 2f64.ln() + ln_b + ln_y;
            let ln_c = -1.281 * nf * nf * ln_n;
            let inputs = vec![
                ("p_lower".to_string(), p),
                ("p_prime_upper".to_string(), p_prime),
                ("p_net".to_string(), p_net),
                ("alpha".to_string(), alpha),
                ("occupancy_exponent".to_string(), e),
            ];
            (inputs, vec![ln_h, ln_a, ln_b, ln_c])
        }
    };
    let ln_one_minus = ln_one_minus_product(&ln_terms);
    let log10 = ln_one_minus / std::f64::consts::LN_10;
    Ok(SuccessBound {
        n,
        algo,
        iterations,
        inputs,
        ln_failure_terms: ln_terms,
        log10_one_minus_bound: log10,
        one_minus_bound: scientific(log10),
        bound: 1.0 - ln_one_minus.exp(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_at_small_n() {
        assert_eq!(p3_exact(3).unwrap().to_string(), "0/1");
        assert_eq!(p3_exact(10).unwrap().to_string(), "7/16");
        assert_eq!(p22_exact(12).unwrap().to_string(), "3/10");
        assert!(p3_exact(2).is_err());
    }

    #[test]
    fn two_admissible_is_clamped_below_nine() {
        let p = p_two_admissible(7).unwrap();
        assert!(p.was_clamped());
        assert!(p.raw().is_negative());
        assert_eq!(p.to_f64(), 0.0);
        assert!(p_two_admissible(6).is_err());
    }

    #[test]
    fn occupancy_small_cases() {
        assert_eq!(occupancy_p0(5, 1).unwrap().to_f64(), 1.0);
        assert_eq!(occupancy_p0(2, 2).unwrap().to_string(), "1/2");
        assert_eq!(occupancy_p0(1, 2).unwrap().to_f64(), 0.0);
    }

    #[test]
    fn hoeffding_ranges() {
        assert!(hoeffding_tail(10.0, 0.5, 1.0, Tail::Lower).is_err());
        assert!(hoeffding_tail(0.5, 0.5, 0.5, Tail::Lower).is_err());
        assert!((hoeffding_tail(1.0, 0.5, 1e-9, Tail::Upper).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn monte_carlo_degenerate_n() {
        for kind in [MoveModel::ThreeCycle, MoveModel::Potdtc] {
            assert_eq!(mc_admissible_rate(kind, 3, 100, 1).unwrap().successes, 0);
        }
    }

    #[test]
    fn bounds_are_tiny_failures() {
        let g = success_probability_bounds(10, BoundAlgo::G).unwrap();
        assert!(g.log10_one_minus_bound < -500.0);
        assert!(success_probability_bounds(20, BoundAlgo::D).is_err());
    }
}
