//! Theta series C^(s)(x) = sum_{n in Z} x^{n^s} for even s, their powers
//! U(x; t; s) = C^(s)(x)^t, and the representation counts W_t^(s)(m) they
//! generate.
//!
//! Series counts are ordered, signed and allow zeros: (1, 2), (2, 1) and
//! (-1, 2) are distinct representations of 5. The classical Fermat count is the
//! unordered nonnegative count, [`essentially_distinct_two_squares`]. For a
//! prime p = a^2 + b^2 with 0 < a < b the two differ by a factor 8
//! (4 sign choices times 2 orders).

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};
use crate::series::TruncatedSeries;
use crate::sieve::SieveTable;

/// Truncated C^(s)(x): 1 at index 0, 2 at each n^s <= order with n >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theta {
    s: u32,
    series: TruncatedSeries,
}

impl Theta {
    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    /// U(x; t; s) truncated to the theta's order.
    pub fn power(&self, t: u32) -> TruncatedSeries {
        self.series.pow(t)
    }
}

fn check_s(s: u32) -> Result<()> {
    if s == 0 {
        return Err(Error::InvalidArgument("power s must be >= 2".into()));
    }
    if s % 2 == 1 {
        return Err(Error::Unsupported(format!(
            "odd power s = {s}: only even s is handled"
        )));
    }
    Ok(())
}

/// floor(m^{1/s}) with an exact correction step.
pub fn integer_root(m: u64, s: u32) -> u64 {
    if m == 0 || s == 1 {
        return m;
    }
    let fits = |r: u64| r.checked_pow(s).is_some_and(|v| v <= m);
    let mut r = (m as f64).powf(1.0 / s as f64) as u64;
    while r > 0 && !fits(r) {
        r -= 1;
    }
    while fits(r + 1) {
        r += 1;
    }
    r
}

pub fn generalized_theta(s: u32, order: usize) -> Result<Theta> {
    check_s(s)?;
    let mut coeffs = vec![Rational::zero(); order + 1];
    coeffs[0] = int(1);
    for n in 1..=integer_root(order as u64, s) {
        coeffs[n.pow(s) as usize] = int(2);
    }
    Ok(Theta { s, series: TruncatedSeries::from_coeffs(coeffs, order) })
}

/// K(x) = sum x^{n^2}.
pub fn theta_series(order: usize) -> Theta {
    generalized_theta(2, order).expect("s = 2 is supported")
}

/// W_t^(s)(m) for 0 <= m <= order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepCountTable {
    pub s: u32,
    pub t: u32,
    pub order: usize,
    #[serde(serialize_with = "rational::serde_biguint_vec::serialize")]
    pub counts: Vec<BigUint>,
}

impl RepCountTable {
    fn from_series(s: u32, t: u32, series: &TruncatedSeries) -> Self {
        let counts = series.coeffs().iter().map(series_count).collect();
        Self { s, t, order: series.order(), counts }
    }

    pub fn count(&self, m: usize) -> &BigUint {
        &self.counts[m]
    }

    /// Nonzero entries: the expressible integers up to the order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(m, _)| m)
    }

    /// `m,count` rows under a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,count\n");
        for (m, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{m},{c}\n"));
        }
        out
    }
}

fn series_count(c: &Rational) -> BigUint {
    c.to_integer().to_biguint().expect("theta powers have nonnegative integer coefficients")
}

/// Coefficients of C^(s)(x)^t.
pub fn waring_counts(s: u32, t: u32, order: usize) -> Result<RepCountTable> {
    if t == 0 {
        return Err(Error::InvalidArgument("number of summands t must be >= 1".into()));
    }
    let theta = generalized_theta(s, order)?;
    Ok(RepCountTable::from_series(s, t, &theta.power(t)))
}

/// J(m): representations as a sum of four squares.
pub fn four_square_counts(order: usize) -> RepCountTable {
    waring_counts(2, 4, order).expect("supported parameters")
}

/// S(m): ordered signed representations as a sum of two squares.
pub fn two_square_counts(order: usize) -> RepCountTable {
    waring_counts(2, 2, order).expect("supported parameters")
}

/// Pairs 0 <= a <= b with a^2 + b^2 = n.
pub fn essentially_distinct_two_squares(n: u64) -> u64 {
    let mut count = 0;
    let mut a = 0u64;
    while 2 * a * a <= n {
        let rest = n - a * a;
        let b = integer_root(rest, 2);
        if b * b == rest {
            count += 1;
        }
        a += 1;
    }
    count
}

/// R(n), the coefficients of I(x)^2 = K(x)^8.
pub fn correlation_counts(order: usize) -> Vec<BigUint> {
    theta_series(order).power(8).coeffs().iter().map(series_count).collect()
}

/// t(n): primes p <= n with p = 1 (mod 4).
pub fn primes_4k1_count(n: u64, sieve: &SieveTable) -> Result<u64> {
    if n > sieve.limit() {
        return Err(Error::OutOfRange { what: "n", value: n, limit: sieve.limit() });
    }
    Ok(sieve.primes_upto(n).filter(|p| p % 4 == 1).count() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaGReport {
    pub s: u32,
    pub t: u32,
    pub r: u32,
    pub order: usize,
    pub passed: bool,
    /// Indices m where U(t + r) and U(t) U(r) disagree.
    pub mismatches: Vec<usize>,
}

/// Compares C^(t+r) with the truncated product C^t C^r coefficientwise.
pub fn verify_lemma_g(s: u32, t: u32, r: u32, order: usize) -> Result<LemmaGReport> {
    if t == 0 || r == 0 {
        return Err(Error::InvalidArgument("t and r must be >= 1".into()));
    }
    let theta = generalized_theta(s, order)?;
    let whole = theta.power(t + r);
    let split = theta.power(t).mul(&theta.power(r))?;
    let mismatches: Vec<usize> =
        (0..=order).filter(|&m| whole.coeff(m) != split.coeff(m)).collect();
    Ok(LemmaGReport { s, t, r, order, passed: mismatches.is_empty(), mismatches })
}

/// Exhaustive count of ordered tuples (n_1..n_t) in Z^t with sum n_i^s = m.
/// Entries range over |n_i| <= floor(m^{1/s}); branches whose partial sum
/// already exceeds m are cut.
pub fn brute_force_count(m: u64, s: u32, t: u32) -> Result<u64> {
    check_s(s)?;
    let bound = integer_root(m, s);
    let powers: Vec<u64> = (0..=bound).map(|n| n.pow(s)).collect();
    fn go(rest: u64, slots: u32, powers: &[u64]) -> u64 {
        if slots == 0 {
            return (rest == 0) as u64;
        }
        let mut total = 0;
        for (n, &v) in powers.iter().enumerate() {
            if v > rest {
                break;
            }
            let sub = go(rest - v, slots - 1, powers);
            // n and -n are distinct entries unless n = 0
            total += if n == 0 { sub } else { 2 * sub };
        }
        total
    }
    Ok(go(m, t, &powers))
}

/// Converts a count to `u64` for comparisons against small oracles.
pub fn count_u64(c: &BigUint) -> Option<u64> {
    c.to_u64()
}
