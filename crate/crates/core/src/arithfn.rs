//! Handles to arithmetical functions with exact rational values.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions;
use crate::rational::{int, uint, Rational};
use crate::sieve::{factor, prime_count};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValueKind {
    Integer,
    Rational,
}

type EvalFn = dyn Fn(u64) -> Result<Rational> + Send + Sync;

/// A named, deterministic map from positive integers to exact rationals.
#[derive(Clone)]
pub struct ArithFn {
    name: String,
    kind: ValueKind,
    memoryless: bool,
    eval: Arc<EvalFn>,
}

impl fmt::Debug for ArithFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArithFn")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("memoryless", &self.memoryless)
            .finish_non_exhaustive()
    }
}

impl ArithFn {
    pub fn new<F>(name: impl Into<String>, kind: ValueKind, eval: F) -> Self
    where
        F: Fn(u64) -> Result<Rational> + Send + Sync + 'static,
    {
        Self { name: name.into(), kind, memoryless: true, eval: Arc::new(eval) }
    }

    /// Integer-valued function from a closure over `n`.
    pub fn integer<F>(name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(u64) -> BigInt + Send + Sync + 'static,
    {
        Self::new(name, ValueKind::Integer, move |n| Ok(int(eval(n))))
    }

    /// Marks the function as one whose value may depend on integers other
    /// than the factorization of `n` (phi, pi).
    pub fn with_memory(mut self) -> Self {
        self.memoryless = false;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> ValueKind {
        self.kind
    }

    pub fn is_memoryless(&self) -> bool {
        self.memoryless
    }

    pub fn eval(&self, n: u64) -> Result<Rational> {
        if n == 0 {
            return Err(self.eval_error(0, "arithmetical functions are defined on n >= 1"));
        }
        (self.eval)(n)
    }

    /// Evaluates and insists on an integer value.
    pub fn eval_integer(&self, n: u64) -> Result<BigInt> {
        let v = self.eval(n)?;
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(self.eval_error(n, format!("value {v} is not an integer")))
        }
    }

    /// Values at `1..=bound`, index `k - 1` holding f(k).
    pub fn table(&self, bound: u64) -> Result<Vec<Rational>> {
        (1..=bound).map(|k| self.eval(k)).collect()
    }

    pub(crate) fn eval_error(&self, n: u64, reason: impl Into<String>) -> Error {
        Error::Evaluation { name: self.name.clone(), n, reason: reason.into() }
    }

    pub fn divisor_count() -> Self {
        memoryless_int("d", |f| functions::divisor_count(f).into())
    }

    pub fn divisor_power_sum(t: u32) -> Self {
        memoryless_int(format!("sigma_{t}"), move |f| functions::divisor_power_sum(f, t).into())
    }

    pub fn distinct_prime_count() -> Self {
        memoryless_int("omega", |f| functions::distinct_prime_count(f).into())
    }

    pub fn total_prime_count() -> Self {
        memoryless_int("bigomega", |f| functions::total_prime_count(f).into())
    }

    pub fn exponent_power_sum(t: u32) -> Self {
        memoryless_int(format!("L_{t}"), move |f| functions::exponent_power_sum(f, t).into())
    }

    pub fn euler_totient() -> Self {
        memoryless_int("phi", |f| functions::euler_totient(f).into()).with_memory()
    }

    pub fn prime_count() -> Self {
        Self::new("pi", ValueKind::Integer, |n| Ok(int(prime_count(n)?))).with_memory()
    }

    pub fn partition_count() -> Self {
        Self::new("partition", ValueKind::Integer, |n| Ok(uint(&functions::partition_count(n))))
            .with_memory()
    }

    pub fn constant(name: impl Into<String>, value: Rational) -> Self {
        let kind = if value.is_integer() { ValueKind::Integer } else { ValueKind::Rational };
        Self::new(name, kind, move |_| Ok(value.clone()))
    }

    pub fn one() -> Self {
        Self::constant("one", Rational::one())
    }

    pub fn zero() -> Self {
        Self::constant("zero", Rational::zero())
    }
}

fn memoryless_int<F>(name: impl Into<String>, g: F) -> ArithFn
where
    F: Fn(&crate::sieve::Factorization) -> BigInt + Send + Sync + 'static,
{
    let name = name.into();
    let label = name.clone();
    ArithFn::new(name, ValueKind::Integer, move |n| {
        let f = factor(n).map_err(|e| Error::Evaluation {
            name: label.clone(),
            n,
            reason: e.to_string(),
        })?;
        Ok(int(g(&f)))
    })
}

/// Identifiers of the built-in functions exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FnId {
    #[serde(rename = "d")]
    DivisorCount,
    #[serde(rename = "sigma")]
    DivisorPowerSum,
    #[serde(rename = "omega")]
    DistinctPrimes,
    #[serde(rename = "bigomega")]
    TotalPrimes,
    #[serde(rename = "L")]
    ExponentPowerSum,
    #[serde(rename = "phi")]
    Totient,
    #[serde(rename = "pi")]
    PrimeCount,
    #[serde(rename = "partition")]
    Partition,
}

impl FnId {
    pub const ALL: [FnId; 8] = [
        FnId::DivisorCount,
        FnId::DivisorPowerSum,
        FnId::DistinctPrimes,
        FnId::TotalPrimes,
        FnId::ExponentPowerSum,
        FnId::Totient,
        FnId::PrimeCount,
        FnId::Partition,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FnId::DivisorCount => "d",
            FnId::DivisorPowerSum => "sigma",
            FnId::DistinctPrimes => "omega",
            FnId::TotalPrimes => "bigomega",
            FnId::ExponentPowerSum => "L",
            FnId::Totient => "phi",
            FnId::PrimeCount => "pi",
            FnId::Partition => "partition",
        }
    }

    /// Whether the function takes the integer parameter `t`.
    pub fn takes_t(self) -> bool {
        matches!(self, FnId::DivisorPowerSum | FnId::ExponentPowerSum)
    }

    /// Builds the handle; `t` defaults to 1 where a parameter is used.
    pub fn handle(self, t: Option<u32>) -> Result<ArithFn> {
        let t = t.unwrap_or(1);
        Ok(match self {
            FnId::DivisorCount => ArithFn::divisor_count(),
            FnId::DivisorPowerSum => ArithFn::divisor_power_sum(t),
            FnId::DistinctPrimes => ArithFn::distinct_prime_count(),
            FnId::TotalPrimes => ArithFn::total_prime_count(),
            FnId::ExponentPowerSum => {
                if t == 0 {
                    return Err(Error::InvalidArgument("L_t requires t >= 1".into()));
                }
                ArithFn::exponent_power_sum(t)
            }
            FnId::Totient => ArithFn::euler_totient(),
            FnId::PrimeCount => ArithFn::prime_count(),
            FnId::Partition => ArithFn::partition_count(),
        })
    }
}

impl fmt::Display for FnId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FnId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FnId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown function `{s}`")))
    }
}
