//! Arithmetical polynomials `1 + sum_{n=1}^{M} x^{beta(n)}`, their exact
//! normalization to probability mass functions, and moments.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arithfn::ArithFn;
use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};
use crate::series::TruncatedSeries;

/// `1 + t_1 x^{s_1} + ... + t_L x^{s_L}`: the standalone leading 1 is kept
/// apart from the histogram `terms`, which counts every n in 1..=M once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithPolynomial {
    pub m: u64,
    /// `(s_j, t_j)` with strictly increasing exponents.
    pub terms: Vec<(u64, u64)>,
}

impl ArithPolynomial {
    pub fn degree(&self) -> u64 {
        self.terms.last().map_or(0, |&(s, _)| s)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::one();
        for &(s, t) in &self.terms {
            acc += int(t) * rational::pow(x, s);
        }
        acc
    }

    /// Coefficients in ascending degree with the leading 1 folded into x^0.
    pub fn coefficients(&self) -> Vec<BigInt> {
        let mut c = vec![BigInt::zero(); self.degree() as usize + 1];
        c[0] += 1;
        for &(s, t) in &self.terms {
            c[s as usize] += t;
        }
        c
    }
}

/// Histogram of beta(n) over n = 1..=M.
pub fn build_polynomial(beta: &ArithFn, m: u64) -> Result<ArithPolynomial> {
    if m < 1 {
        return Err(Error::InvalidArgument("M must be >= 1".into()));
    }
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    for n in 1..=m {
        let v = beta.eval(n)?;
        let s = if v.is_integer() && !v.is_negative() { v.to_integer().to_u64() } else { None };
        let s = s.ok_or_else(|| Error::InvalidFunction {
            name: beta.name().to_string(),
            reason: format!("exponent at n = {n} is {v}, not a nonnegative integer"),
        })?;
        *hist.entry(s).or_default() += 1;
    }
    Ok(ArithPolynomial { m, terms: hist.into_iter().collect() })
}

/// Value at x = 1, which is always M + 1.
pub fn eval_at_one(p: &ArithPolynomial) -> u64 {
    1 + p.terms.iter().map(|&(_, t)| t).sum::<u64>()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PmfPoint {
    pub value: u64,
    #[serde(with = "rational::serde_str")]
    pub probability: Rational,
}

/// Exact probability mass function on nonnegative integer values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pmf {
    pub support: Vec<PmfPoint>,
}

impl Pmf {
    pub fn total(&self) -> Rational {
        self.support.iter().map(|pt| &pt.probability).sum()
    }

    pub fn probability(&self, value: u64) -> Rational {
        self.support
            .iter()
            .find(|pt| pt.value == value)
            .map_or_else(Rational::zero, |pt| pt.probability.clone())
    }

    fn from_weights(weights: impl IntoIterator<Item = (u64, Rational)>, total: &Rational) -> Self {
        let support = weights
            .into_iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|(value, w)| PmfPoint { value, probability: w / total })
            .collect();
        Self { support }
    }
}

/// Divides every coefficient by M + 1. The leading 1 and the n = 1..=M
/// terms with exponent 0 share the support point 0.
pub fn normalize(p: &ArithPolynomial) -> Pmf {
    let total = int(eval_at_one(p));
    let mut weights: BTreeMap<u64, Rational> = BTreeMap::new();
    weights.insert(0, Rational::one());
    for &(s, t) in &p.terms {
        *weights.entry(s).or_insert_with(Rational::zero) += int(t);
    }
    Pmf::from_weights(weights, &total)
}

/// r-th raw moment sum q_j s_j^r.
pub fn moment(pmf: &Pmf, r: u32) -> Rational {
    pmf.support
        .iter()
        .map(|pt| &pt.probability * int(BigInt::from(pt.value).pow(r)))
        .sum()
}

/// The moment function sum q_j x^{s_j}.
pub fn moment_function_eval(pmf: &Pmf, x: &Rational) -> Rational {
    pmf.support.iter().map(|pt| &pt.probability * rational::pow(x, pt.value)).sum()
}

/// Normalizes a nonnegative coefficient sequence by its exact sum.
pub fn normalize_summable_series(a: &TruncatedSeries) -> Result<Pmf> {
    if let Some(n) = a.coeffs().iter().position(Signed::is_negative) {
        return Err(Error::InvalidArgument(format!("coefficient {n} is negative")));
    }
    let total: Rational = a.coeffs().iter().sum();
    if total.is_zero() {
        return Err(Error::InvalidArgument("all coefficients are zero".into()));
    }
    Ok(Pmf::from_weights(
        a.coeffs().iter().enumerate().map(|(n, c)| (n as u64, c.clone())),
        &total,
    ))
}

/// Sign-change scan of J(x) - (M + 1) on an evenly spaced rational grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootScan {
    pub degree: u64,
    #[serde(with = "rational::serde_str")]
    pub lo: Rational,
    #[serde(with = "rational::serde_str")]
    pub hi: Rational,
    pub steps: u32,
    /// Open grid intervals where the sign flips; each holds a real root.
    pub sign_changes: u32,
    #[serde(serialize_with = "ser_rational_vec", deserialize_with = "de_rational_vec")]
    pub grid_zeros: Vec<Rational>,
}

impl RootScan {
    /// Lower bound on the number of distinct real roots inside [lo, hi].
    pub fn real_roots_found(&self) -> u64 {
        self.sign_changes as u64 + self.grid_zeros.len() as u64
    }
}

fn ser_rational_vec<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rational::format))
}

fn de_rational_vec<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
    let v = Vec::<String>::deserialize(d)?;
    v.iter().map(|s| rational::parse(s).map_err(serde::de::Error::custom)).collect()
}

/// Cauchy bound 1 + max_{i<L} |c_i| / |c_L| on the real roots of
/// J(x) - (M + 1); `None` when that polynomial is constant.
pub fn cauchy_root_bound(p: &ArithPolynomial) -> Option<Rational> {
    let mut c = p.coefficients();
    c[0] -= BigInt::from(eval_at_one(p));
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    let (lead, rest) = c.split_last()?;
    if rest.is_empty() {
        return None;
    }
    let max = rest.iter().map(|v| v.abs()).max().unwrap_or_default();
    Some(Rational::one() + Rational::new(max, lead.abs()))
}

/// Scans J(x) - (M + 1) at `steps + 1` grid points in [lo, hi]. The result
/// is an experiment, not a claim about all roots.
pub fn real_root_scan(p: &ArithPolynomial, lo: &Rational, hi: &Rational, steps: u32) -> Result<RootScan> {
    if steps == 0 || lo >= hi {
        return Err(Error::InvalidArgument("need lo < hi and at least one step".into()));
    }
    let shift = int(eval_at_one(p));
    let width = (hi - lo) / int(steps);
    let mut sign_changes = 0;
    let mut grid_zeros = Vec::new();
    let mut last_sign = 0i8;
    for i in 0..=steps {
        let x = lo + &width * int(i);
        let v = p.eval(&x) - &shift;
        let sign = if v.is_zero() { 0 } else if v.is_positive() { 1 } else { -1 };
        if sign == 0 {
            grid_zeros.push(x);
        } else {
            if last_sign != 0 && sign != last_sign {
                sign_changes += 1;
            }
        }
        // a grid zero separates intervals; do not count a flip across it
        last_sign = sign;
    }
    Ok(RootScan { degree: p.degree(), lo: lo.clone(), hi: hi.clone(), steps, sign_changes, grid_zeros })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn omega_pmf(m: u64) -> Pmf {
        normalize(&build_polynomial(&ArithFn::distinct_prime_count(), m).unwrap())
    }

    #[test]
    fn polynomial_examples() {
        let omega = ArithFn::distinct_prime_count();
        let p = build_polynomial(&omega, 3).unwrap();
        assert_eq!(p.terms, vec![(0, 1), (1, 2)]);
        assert_eq!(p.coefficients(), vec![BigInt::from(2), BigInt::from(2)]);
        assert_eq!(eval_at_one(&p), 4);
        let p1 = build_polynomial(&omega, 1).unwrap();
        assert_eq!(p1.terms, vec![(0, 1)]);
        assert_eq!(eval_at_one(&p1), 2);
        let p = build_polynomial(&ArithFn::total_prime_count(), 4).unwrap();
        assert_eq!(p.terms, vec![(0, 1), (1, 2), (2, 1)]);
        assert!(build_polynomial(&omega, 0).is_err());
    }

    #[test]
    fn bad_exponents_rejected() {
        let neg = ArithFn::constant("neg", int(-1));
        assert!(matches!(build_polynomial(&neg, 3), Err(Error::InvalidFunction { .. })));
        let half = ArithFn::constant("half", ratio(1, 2));
        assert!(matches!(build_polynomial(&half, 3), Err(Error::InvalidFunction { .. })));
    }

    #[test]
    fn normalization() {
        let pmf = omega_pmf(3);
        assert_eq!(
            pmf.support,
            vec![
                PmfPoint { value: 0, probability: ratio(1, 2) },
                PmfPoint { value: 1, probability: ratio(1, 2) }
            ]
        );
        assert_eq!(omega_pmf(1).support, vec![PmfPoint { value: 0, probability: int(1) }]);
        assert_eq!(omega_pmf(100).probability(0), ratio(2, 101));
        for m in [2, 17, 500] {
            assert_eq!(omega_pmf(m).total(), int(1));
        }
    }

    #[test]
    fn moments() {
        let pmf = omega_pmf(3);
        assert_eq!(moment(&pmf, 1), ratio(1, 2));
        assert_eq!(moment(&pmf, 2), ratio(1, 2));
        assert_eq!(moment_function_eval(&pmf, &int(1)), int(1));
        assert_eq!(moment_function_eval(&pmf, &ratio(1, 3)), ratio(2, 3));
    }

    #[test]
    fn summable_series() {
        let s = TruncatedSeries::from_integers([1, 1], 1);
        let pmf = normalize_summable_series(&s).unwrap();
        assert_eq!(pmf.probability(0), ratio(1, 2));
        assert_eq!(pmf.probability(1), ratio(1, 2));
        let s = TruncatedSeries::from_integers([2, 0, 6], 2);
        let pmf = normalize_summable_series(&s).unwrap();
        assert_eq!(pmf.support.len(), 2);
        assert_eq!(pmf.probability(2), ratio(3, 4));
        assert!(normalize_summable_series(&TruncatedSeries::from_integers([1, -1], 1)).is_err());
        assert!(normalize_summable_series(&TruncatedSeries::zero(3)).is_err());
    }

    #[test]
    fn root_scan_finds_the_root_at_one() {
        let p = build_polynomial(&ArithFn::distinct_prime_count(), 30).unwrap();
        let scan = real_root_scan(&p, &int(-4), &int(4), 16).unwrap();
        assert!(scan.grid_zeros.contains(&int(1)));
        assert!(scan.real_roots_found() >= 1);
        assert!(real_root_scan(&p, &int(1), &int(0), 4).is_err());
        // 3 + 2x + x^2 - 6 = (x + 3)(x - 1): bound 1 + 3/1
        let p = build_polynomial(&ArithFn::total_prime_count(), 4).unwrap();
        assert_eq!(cauchy_root_bound(&p), Some(int(4)));
        let p1 = build_polynomial(&ArithFn::distinct_prime_count(), 1).unwrap();
        assert_eq!(cauchy_root_bound(&p1), None);
    }
}
