//! Exact rational helpers shared by every module.
//!
//! Rationals are rendered as `numerator/denominator` in lowest terms with a
//! positive denominator, always including the denominator (`3/1`, not `3`).

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

pub fn uint(v: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(v.clone()))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn format(q: &Rational) -> String {
    // `Ratio` keeps itself normalized, so numer/denom are already reduced
    // with a positive denominator.
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("`{s}` is not a rational of the form p/q"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::InvalidArgument(format!("`{s}` has a zero denominator")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(int(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// `x^e` for a non-negative integer exponent.
pub fn pow(x: &Rational, e: u64) -> Rational {
    let mut base = x.clone();
    let mut acc = Rational::one();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Sums exactly by pairwise reduction.
///
/// Summing `1/n^k` terms left to right makes every addition pay a gcd on the
/// full running denominator; pairing keeps operand sizes balanced.
pub fn sum_pairwise(mut terms: Vec<Rational>) -> Rational {
    if terms.is_empty() {
        return Rational::zero();
    }
    while terms.len() > 1 {
        let mut next = Vec::with_capacity(terms.len().div_ceil(2));
        let mut it = terms.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a + b),
                None => next.push(a),
            }
        }
        terms = next;
    }
    terms.pop().unwrap()
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn abs_diff(a: &Rational, b: &Rational) -> Rational {
    (a - b).abs()
}

/// serde adapter: a rational as a `"num/den"` string.
pub mod serde_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

/// serde adapter for `Option<Rational>`.
pub mod serde_opt_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        q: &Option<Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&format(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Rational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| parse(&s).map_err(serde::de::Error::custom)).transpose()
    }
}

/// serde adapter: big unsigned integers as decimal strings.
pub mod serde_biguint {
    use num_bigint::BigUint;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }
}

pub mod serde_biguint_vec {
    use num_bigint::BigUint;
    use serde::ser::{SerializeSeq, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_str_radix(10))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_always_has_denominator() {
        assert_eq!(format(&int(3)), "3/1");
        assert_eq!(format(&ratio(6, -4)), "-3/2");
        assert_eq!(format(&Rational::zero()), "0/1");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse(" 4/8 ").unwrap(), ratio(1, 2));
        assert_eq!(parse("-7").unwrap(), int(-7));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("1/2/3").is_err());
    }

    #[test]
    fn pairwise_sum_matches_sequential() {
        let terms: Vec<_> = (1..=50).map(|n| ratio(1, n * n)).collect();
        let seq = terms.iter().fold(Rational::zero(), |a, b| a + b);
        assert_eq!(sum_pairwise(terms), seq);
    }

    #[test]
    fn pow_small() {
        assert_eq!(pow(&ratio(2, 3), 3), ratio(8, 27));
        assert_eq!(pow(&ratio(2, 3), 0), int(1));
    }
}
