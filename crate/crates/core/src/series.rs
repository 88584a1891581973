//! Truncated formal power series with exact rational coefficients.
//!
//! A series of order N carries c_0..=c_N and all arithmetic is modulo
//! x^{N+1}. Binary operations require equal orders.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(Rational::one(), 0, order)
    }

    /// `c x^k`, or the zero series if `k > order`.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Pads with zeros or truncates so the result has exactly `order + 1`
    /// coefficients.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs }
    }

    pub fn from_integers<I, T>(values: I, order: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::from_coeffs(values.into_iter().map(|v| int(v)).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Keeps c_0..=c_order of a series of at least that order.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::InvalidArgument(format!(
                "cannot truncate order {} to higher order {order}",
                self.order()
            )));
        }
        Ok(Self { coeffs: self.coeffs[..=order].to_vec() })
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::InvalidArgument(format!(
                "series orders differ: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { coeffs })
    }

    /// Cauchy product: c_n = sum_{j=0}^{n} a_j b_{n-j}.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let order = self.order();
        // Theta series are very sparse; skip zero terms of the left factor.
        let support: Vec<usize> = (0..=order).filter(|&j| !self.coeffs[j].is_zero()).collect();
        if self.is_integral() && other.is_integral() {
            let a: Vec<BigInt> = self.coeffs.iter().map(|c| c.to_integer()).collect();
            let b: Vec<BigInt> = other.coeffs.iter().map(|c| c.to_integer()).collect();
            let mut c = vec![BigInt::zero(); order + 1];
            for &j in &support {
                for (k, bk) in b[..=order - j].iter().enumerate() {
                    if !bk.is_zero() {
                        c[j + k] += &a[j] * bk;
                    }
                }
            }
            return Ok(Self { coeffs: c.into_iter().map(Rational::from_integer).collect() });
        }
        let mut c = vec![Rational::zero(); order + 1];
        for &j in &support {
            for (k, bk) in other.coeffs[..=order - j].iter().enumerate() {
                if !bk.is_zero() {
                    c[j + k] += &self.coeffs[j] * bk;
                }
            }
        }
        Ok(Self { coeffs: c })
    }

    /// k-th power by binary powering; a^0 is the series 1.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("equal orders");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("equal orders");
            }
        }
        acc
    }

    /// k-th power through the coefficient recurrence for a_0 != 0:
    /// n a_0 g_n = sum_{j=1}^{n} ((k+1) j - n) a_j g_{n-j}, g_0 = a_0^k.
    pub fn pow_recurrence(&self, k: u32) -> Result<Self> {
        let a = &self.coeffs;
        if a[0].is_zero() {
            return Err(Error::Unsupported(
                "power recurrence needs a nonzero constant term; use pow".into(),
            ));
        }
        let order = self.order();
        let support: Vec<usize> = (1..=order).filter(|&j| !a[j].is_zero()).collect();
        let kk = k as i64 + 1;
        let mut g: Vec<Rational> = Vec::with_capacity(order + 1);
        g.push(rational::pow(&a[0], k as u64));
        for n in 1..=order {
            let mut acc = Rational::zero();
            for &j in support.iter().take_while(|&&j| j <= n) {
                let w = kk * j as i64 - n as i64;
                if w != 0 && !g[n - j].is_zero() {
                    acc += &a[j] * &g[n - j] * int(w);
                }
            }
            g.push(acc / (&a[0] * int(n as i64)));
        }
        Ok(Self { coeffs: g })
    }

    /// Horner evaluation of the truncated polynomial at `x`.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Text form: header line with the order, then one `num/den` per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("order {}\n", self.order());
        for c in &self.coeffs {
            out.push_str(&rational::format(c));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::InvalidArgument("empty series text".into()))?;
        let order: usize = header
            .strip_prefix("order ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::InvalidArgument(format!("bad series header `{header}`")))?;
        let coeffs = lines.map(rational::parse).collect::<Result<Vec<_>>>()?;
        if coeffs.len() != order + 1 {
            return Err(Error::InvalidArgument(format!(
                "series of order {order} needs {} coefficients, found {}",
                order + 1,
                coeffs.len()
            )));
        }
        Ok(Self { coeffs })
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// 1 + x / (p^k - 1): the closed form of 1 + x (p^{-k} + p^{-2k} + ...).
pub fn geometric_factor(p: u64, k: u32, order: usize) -> Result<TruncatedSeries> {
    if p < 2 || k < 1 {
        return Err(Error::InvalidArgument(format!("need p >= 2 and k >= 1, got p={p}, k={k}")));
    }
    let pk = BigInt::from(p).pow(k);
    let c = Rational::new(BigInt::one(), pk - 1);
    let mut s = TruncatedSeries::one(order);
    if order >= 1 {
        s.coeffs[1] = c;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn ints(v: &[i64], order: usize) -> TruncatedSeries {
        TruncatedSeries::from_integers(v.iter().copied(), order)
    }

    #[test]
    fn addition() {
        let s = ints(&[1, 1], 1).add(&ints(&[1, -1], 1)).unwrap();
        assert_eq!(s, ints(&[2], 1));
        let a = ints(&[3, 0, 5], 4);
        assert_eq!(a.add(&TruncatedSeries::zero(4)).unwrap(), a);
        assert!(matches!(ints(&[1], 4).add(&ints(&[1], 5)), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn multiplication() {
        let a = ints(&[1, 1], 2);
        assert_eq!(a.mul(&a).unwrap(), ints(&[1, 2, 1], 2));
        let b = TruncatedSeries::from_coeffs(vec![ratio(1, 3), ratio(-2, 7)], 3);
        assert_eq!(b.mul(&TruncatedSeries::one(3)).unwrap(), b);
        assert!(ints(&[1], 2).mul(&ints(&[1], 3)).is_err());
        // theta squared: r_2(0..=2) = 1, 4, 4
        let theta = ints(&[1, 2, 0, 0, 2], 4);
        let sq = theta.mul(&theta).unwrap();
        assert_eq!(&sq.coeffs()[..3], &[int(1), int(4), int(4)]);
    }

    #[test]
    fn powers() {
        let a = ints(&[1, 1], 4);
        assert_eq!(a.pow(0), TruncatedSeries::one(4));
        assert_eq!(a.pow(1), a);
        assert_eq!(a.pow(4), ints(&[1, 4, 6, 4, 1], 4));
        assert_eq!(a.pow_recurrence(4).unwrap(), a.pow(4));
        let no_const = ints(&[0, 1], 4);
        assert!(matches!(no_const.pow_recurrence(2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn theta_fourth_power_by_both_routes() {
        let order = 100;
        let mut theta = TruncatedSeries::zero(order);
        theta.coeffs[0] = int(1);
        for n in 1..=10usize {
            theta.coeffs[n * n] = int(2);
        }
        assert_eq!(theta.pow_recurrence(4).unwrap(), theta.pow(4));
    }

    #[test]
    fn evaluation() {
        let a = ints(&[7, 3, 9], 2);
        assert_eq!(a.eval(&Rational::zero()), int(7));
        assert_eq!(ints(&[1, 2, 1], 2).eval(&ratio(1, 2)), ratio(9, 4));
    }

    #[test]
    fn geometric_factors() {
        assert_eq!(geometric_factor(2, 1, 3).unwrap().coeff(1), &int(1));
        assert_eq!(geometric_factor(3, 2, 3).unwrap().coeff(1), &ratio(1, 8));
        assert_eq!(geometric_factor(2, 2, 3).unwrap().coeff(1), &ratio(1, 3));
        // p^{-k} / (1 - p^{-k})
        let pk = ratio(1, 9);
        assert_eq!(geometric_factor(3, 2, 1).unwrap().coeff(1), &(&pk / (int(1) - &pk)));
        assert!(geometric_factor(1, 1, 2).is_err());
    }

    #[test]
    fn text_format() {
        let a = TruncatedSeries::from_coeffs(vec![int(1), ratio(-2, 6), int(0)], 2);
        let text = a.to_text();
        assert_eq!(text, "order 2\n1/1\n-1/3\n0/1\n");
        assert_eq!(TruncatedSeries::from_text(&text).unwrap(), a);
        assert!(TruncatedSeries::from_text("order 3\n1/1\n").is_err());
        assert!(TruncatedSeries::from_text("3\n1/1\n").is_err());
    }

    #[test]
    fn truncation() {
        let a = ints(&[1, 2, 3, 4], 3);
        assert_eq!(a.truncate(1).unwrap(), ints(&[1, 2], 1));
        assert!(a.truncate(4).is_err());
    }
}
