//! Euler-type product identities driven by prime-local data.
//!
//! A [`LocalFactorSpec`] assigns every prime power p^a a weight theta(p, a)
//! and an exponent K(p, a). Expanding
//!
//! ```text
//! prod_p (1 + sum_{a>=1} theta(p, a) x^{K(p, a)} / p^{a k})
//! ```
//!
//! picks one term per prime, so the product equals
//! `1 + sum_{n>=2} alpha(n) x^{beta(n)} / n^k` with alpha multiplicative and
//! beta additive over the factorization of n. Identities are checked two
//! ways: exactly per term for every n up to a bound, and numerically by
//! evaluating truncations of both sides at a rational x.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arithfn::ArithFn;
use crate::error::{Error, Result};
use crate::functions::{self, prime_power_divisor_sum};
use crate::rational::{self, int, uint, Rational};
use crate::series::TruncatedSeries;
use crate::sieve::{Factorization, SieveTable};

type ThetaFn = dyn Fn(u64, u32) -> Rational + Send + Sync;
type KappaFn = dyn Fn(u64, u32) -> u64 + Send + Sync;

/// Prime-local data theta(p, a), K(p, a) for a >= 1.
#[derive(Clone)]
pub struct LocalFactorSpec {
    name: String,
    theta: Arc<ThetaFn>,
    kappa: Arc<KappaFn>,
}

impl fmt::Debug for LocalFactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LocalFactorSpec").field("name", &self.name).finish_non_exhaustive()
    }
}

impl LocalFactorSpec {
    pub fn new<T, K>(name: impl Into<String>, theta: T, kappa: K) -> Self
    where
        T: Fn(u64, u32) -> Rational + Send + Sync + 'static,
        K: Fn(u64, u32) -> u64 + Send + Sync + 'static,
    {
        Self { name: name.into(), theta: Arc::new(theta), kappa: Arc::new(kappa) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn theta(&self, p: u64, a: u32) -> Rational {
        (self.theta)(p, a)
    }

    pub fn kappa(&self, p: u64, a: u32) -> u64 {
        (self.kappa)(p, a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaBeta {
    pub alpha: Rational,
    pub beta: u64,
}

/// alpha(n) = prod theta(p_i, n_i), beta(n) = sum K(p_i, n_i).
pub fn alpha_beta(spec: &LocalFactorSpec, f: &Factorization) -> AlphaBeta {
    let mut alpha = Rational::one();
    let mut beta = 0u64;
    for &(p, a) in f.factors() {
        alpha *= spec.theta(p, a);
        beta += spec.kappa(p, a);
    }
    AlphaBeta { alpha, beta }
}

/// The four instantiations of the general identity shipped with the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BuiltinSpec {
    /// theta = 1, K = 1: `x^{omega(n)} / n^k`.
    LemmaA,
    /// theta(p, a) = sigma_t(p^a), K = 1: `sigma_t(n) x^{omega(n)} / n^k`.
    LemmaB,
    /// theta(p, a) = a + 1, K = 1: `d(n) x^{omega(n)} / n^k`.
    LemmaC,
    /// theta = 1, K(p, a) = a^t: `x^{L_t(n)} / n^k`.
    LemmaD,
}

impl BuiltinSpec {
    pub const ALL: [BuiltinSpec; 4] =
        [BuiltinSpec::LemmaA, BuiltinSpec::LemmaB, BuiltinSpec::LemmaC, BuiltinSpec::LemmaD];

    pub fn as_str(self) -> &'static str {
        match self {
            BuiltinSpec::LemmaA => "lemma-a",
            BuiltinSpec::LemmaB => "lemma-b",
            BuiltinSpec::LemmaC => "lemma-c",
            BuiltinSpec::LemmaD => "lemma-d",
        }
    }

    pub fn takes_t(self) -> bool {
        matches!(self, BuiltinSpec::LemmaB | BuiltinSpec::LemmaD)
    }

    /// The functions alpha, beta the product is claimed to generate,
    /// computed directly from their definitions.
    pub fn direct_functions(self, t: u32) -> Result<(ArithFn, ArithFn)> {
        let omega = ArithFn::distinct_prime_count();
        Ok(match self {
            BuiltinSpec::LemmaA => (ArithFn::one(), omega),
            BuiltinSpec::LemmaB => (ArithFn::divisor_power_sum(t), omega),
            BuiltinSpec::LemmaC => (ArithFn::divisor_count(), omega),
            BuiltinSpec::LemmaD => {
                check_lemma_d_t(t)?;
                (ArithFn::one(), ArithFn::exponent_power_sum(t))
            }
        })
    }
}

impl fmt::Display for BuiltinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BuiltinSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BuiltinSpec::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown identity `{s}`")))
    }
}

fn check_lemma_d_t(t: u32) -> Result<()> {
    if t == 0 {
        return Err(Error::InvalidArgument("lemma-d requires t >= 1".into()));
    }
    Ok(())
}

/// Builds the local data of a built-in identity. `t` is used by lemma-b
/// (t >= 0) and lemma-d (t >= 1) and ignored otherwise.
pub fn builtin_spec(which: BuiltinSpec, t: u32) -> Result<LocalFactorSpec> {
    Ok(match which {
        BuiltinSpec::LemmaA => LocalFactorSpec::new("lemma-a", |_, _| Rational::one(), |_, _| 1),
        BuiltinSpec::LemmaB => LocalFactorSpec::new(
            format!("lemma-b(t={t})"),
            move |p, a| uint(&prime_power_divisor_sum(p, a, t)),
            |_, _| 1,
        ),
        BuiltinSpec::LemmaC => {
            LocalFactorSpec::new("lemma-c", |_, a| int(a as i64 + 1), |_, _| 1)
        }
        BuiltinSpec::LemmaD => {
            check_lemma_d_t(t)?;
            LocalFactorSpec::new(
                format!("lemma-d(t={t})"),
                |_, _| Rational::one(),
                move |_, a| (a as u64).pow(t),
            )
        }
    })
}

/// Truncated evaluation of both sides at a rational point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericCheck {
    #[serde(with = "rational::serde_str")]
    pub x: Rational,
    pub k: u32,
    pub prime_bound: u64,
    pub exp_bound: u32,
    pub n_max: u64,
    pub product: f64,
    pub sum: f64,
    pub difference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheckReport {
    pub spec: String,
    pub n_max: u64,
    pub k: Option<u32>,
    pub passed: bool,
    /// Every n whose term disagrees, ascending.
    pub per_term_failures: Vec<u64>,
    pub numeric_check: Option<NumericCheck>,
}

/// Checks alpha_beta(spec, n) against the direct functions for 2 <= n <= n_max.
pub fn verify_per_term(
    spec: &LocalFactorSpec,
    direct_alpha: &ArithFn,
    direct_beta: &ArithFn,
    n_max: u64,
) -> Result<IdentityCheckReport> {
    if n_max < 2 {
        return Err(Error::InvalidArgument(format!("n_max must be >= 2, got {n_max}")));
    }
    let sieve = SieveTable::new(n_max)?;
    let mut failures = Vec::new();
    for n in 2..=n_max {
        let ab = alpha_beta(spec, &sieve.factorize(n)?);
        let alpha = direct_alpha.eval(n)?;
        let beta = direct_beta.eval(n)?;
        if ab.alpha != alpha || int(ab.beta) != beta {
            failures.push(n);
        }
    }
    Ok(IdentityCheckReport {
        spec: spec.name().to_string(),
        n_max,
        k: None,
        passed: failures.is_empty(),
        per_term_failures: failures,
        numeric_check: None,
    })
}

fn check_k(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("exponent k must be >= 2, got {k}")));
    }
    Ok(())
}

/// Memoized powers of a fixed rational.
struct Powers {
    x: Rational,
    cache: Vec<Rational>,
}

impl Powers {
    fn new(x: &Rational) -> Self {
        Self { x: x.clone(), cache: vec![Rational::one()] }
    }

    fn get(&mut self, e: u64) -> Rational {
        if e > 4096 {
            return rational::pow(&self.x, e);
        }
        while self.cache.len() as u64 <= e {
            let next = self.cache.last().unwrap() * &self.x;
            self.cache.push(next);
        }
        self.cache[e as usize].clone()
    }
}

fn product_pairwise(mut factors: Vec<Rational>) -> Rational {
    if factors.is_empty() {
        return Rational::one();
    }
    while factors.len() > 1 {
        let mut next = Vec::with_capacity(factors.len().div_ceil(2));
        let mut it = factors.into_iter();
        while let Some(a) = it.next() {
            next.push(match it.next() {
                Some(b) => a * b,
                None => a,
            });
        }
        factors = next;
    }
    factors.pop().unwrap()
}

/// prod_{p <= prime_bound} (1 + sum_{a=1}^{exp_bound} theta(p,a) x^{K(p,a)} / p^{a k}).
pub fn truncated_product_eval(
    spec: &LocalFactorSpec,
    x: &Rational,
    k: u32,
    prime_bound: u64,
    exp_bound: u32,
) -> Result<Rational> {
    check_k(k)?;
    if prime_bound < 2 {
        return Ok(Rational::one());
    }
    let sieve = SieveTable::new(prime_bound)?;
    let mut powers = Powers::new(x);
    let factors = sieve
        .primes()
        .map(|p| {
            let pk = BigInt::from(p).pow(k);
            let mut denom = BigInt::one();
            let mut terms = vec![Rational::one()];
            for a in 1..=exp_bound {
                denom *= &pk;
                let t = spec.theta(p, a) * powers.get(spec.kappa(p, a));
                terms.push(t / Rational::from_integer(denom.clone()));
            }
            rational::sum_pairwise(terms)
        })
        .collect();
    Ok(product_pairwise(factors))
}

/// 1 + sum_{n=2}^{n_max} alpha(n) x^{beta(n)} / n^k.
pub fn truncated_sum_eval(
    spec: &LocalFactorSpec,
    x: &Rational,
    k: u32,
    n_max: u64,
) -> Result<Rational> {
    check_k(k)?;
    if n_max < 2 {
        return Ok(Rational::one());
    }
    let sieve = SieveTable::new(n_max)?;
    let mut powers = Powers::new(x);
    let mut terms = Vec::with_capacity(n_max as usize);
    terms.push(Rational::one());
    for n in 2..=n_max {
        let ab = alpha_beta(spec, &sieve.factorize(n)?);
        if ab.alpha.is_zero() {
            continue;
        }
        let nk = Rational::from_integer(BigInt::from(n).pow(k));
        terms.push(ab.alpha * powers.get(ab.beta) / nk);
    }
    Ok(rational::sum_pairwise(terms))
}

/// Truncation bounds for one numeric comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub prime_bound: u64,
    pub exp_bound: u32,
    pub n_max: u64,
}

/// Evaluates both truncations and their exact gap.
pub fn numeric_check(
    spec: &LocalFactorSpec,
    x: &Rational,
    k: u32,
    bounds: Bounds,
) -> Result<(NumericCheck, Rational)> {
    let product = truncated_product_eval(spec, x, k, bounds.prime_bound, bounds.exp_bound)?;
    let sum = truncated_sum_eval(spec, x, k, bounds.n_max)?;
    let gap = rational::abs_diff(&product, &sum);
    let check = NumericCheck {
        x: x.clone(),
        k,
        prime_bound: bounds.prime_bound,
        exp_bound: bounds.exp_bound,
        n_max: bounds.n_max,
        product: rational::to_f64(&product),
        sum: rational::to_f64(&sum),
        difference: rational::to_f64(&gap),
    };
    Ok((check, gap))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub spec: String,
    pub steps: Vec<NumericCheck>,
    /// Each exact gap is <= the previous one.
    pub monotone: bool,
    pub final_gap: f64,
}

/// Runs [`numeric_check`] along a schedule of growing bounds and compares
/// consecutive gaps exactly.
pub fn convergence_sweep(
    spec: &LocalFactorSpec,
    x: &Rational,
    k: u32,
    schedule: &[Bounds],
) -> Result<ConvergenceReport> {
    let mut steps = Vec::with_capacity(schedule.len());
    let mut monotone = true;
    let mut prev: Option<Rational> = None;
    for &b in schedule {
        let (check, gap) = numeric_check(spec, x, k, b)?;
        if prev.as_ref().is_some_and(|p| gap > *p) {
            monotone = false;
        }
        prev = Some(gap);
        steps.push(check);
    }
    let final_gap = steps.last().map_or(0.0, |s| s.difference);
    Ok(ConvergenceReport { spec: spec.name().to_string(), steps, monotone, final_gap })
}

/// Four stages from (125, 4, 10^3) to (1000, 32, 10^5): prime and exponent
/// bounds double each stage.
pub fn default_schedule() -> Vec<Bounds> {
    [(125, 4, 1_000), (250, 8, 5_000), (500, 16, 20_000), (1_000, 32, 100_000)]
        .into_iter()
        .map(|(prime_bound, exp_bound, n_max)| Bounds { prime_bound, exp_bound, n_max })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EulerZetaCheck {
    pub s: u32,
    pub n_max: u64,
    pub prime_bound: u64,
    #[serde(skip)]
    pub sum_exact: Rational,
    #[serde(skip)]
    pub product_exact: Rational,
    pub sum: f64,
    pub product: f64,
    pub difference: f64,
}

/// Truncations of sum_{n<=n_max} n^{-s} and prod_{p<=prime_bound} 1/(1 - p^{-s}).
/// Each prime factor is the closed form of its full geometric series.
pub fn euler_zeta_check(s: u32, n_max: u64, prime_bound: u64) -> Result<EulerZetaCheck> {
    check_k(s)?;
    let sum = rational::sum_pairwise(
        (1..=n_max)
            .map(|n| Rational::new(BigInt::one(), BigInt::from(n).pow(s)))
            .collect(),
    );
    let product = if prime_bound < 2 {
        Rational::one()
    } else {
        let sieve = SieveTable::new(prime_bound)?;
        product_pairwise(
            sieve
                .primes()
                .map(|p| {
                    let ps = BigInt::from(p).pow(s);
                    Rational::new(ps.clone(), ps - 1)
                })
                .collect(),
        )
    };
    let diff = rational::abs_diff(&sum, &product);
    Ok(EulerZetaCheck {
        s,
        n_max,
        prime_bound,
        sum: rational::to_f64(&sum),
        product: rational::to_f64(&product),
        difference: rational::to_f64(&diff),
        sum_exact: sum,
        product_exact: product,
    })
}

/// Coefficients of prod_{m=1}^{N} (1 + x^m + x^{2m} + ...) mod x^{N+1}.
pub fn partition_product_series(order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(order);
    for m in 1..=order {
        let factor = TruncatedSeries::from_coeffs(
            (0..=order).map(|i| if i % m == 0 { Rational::one() } else { Rational::zero() }).collect(),
            order,
        );
        // The factor is sparse, so it goes on the left.
        acc = factor.mul(&acc).expect("equal orders");
    }
    acc
}

/// Compares the product expansion with the pentagonal recurrence for p(n).
pub fn partition_product_check(order: u64) -> Result<IdentityCheckReport> {
    if order < 1 {
        return Err(Error::InvalidArgument("order must be >= 1".into()));
    }
    let series = partition_product_series(order as usize);
    let counts = functions::partition_counts(order);
    let failures: Vec<u64> = counts
        .iter()
        .enumerate()
        .filter(|(n, p)| *series.coeff(*n) != uint(p))
        .map(|(n, _)| n as u64)
        .collect();
    Ok(IdentityCheckReport {
        spec: "partition-product".into(),
        n_max: order,
        k: None,
        passed: failures.is_empty(),
        per_term_failures: failures,
        numeric_check: None,
    })
}
