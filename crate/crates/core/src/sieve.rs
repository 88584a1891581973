//! Smallest-prime-factor sieve and prime factorizations.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};

/// Smallest prime factor of every integer in `2..=limit`.
#[derive(Debug, Clone)]
pub struct SieveTable {
    limit: u64,
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl SieveTable {
    /// Linear sieve: every composite is crossed out exactly once, by its
    /// smallest prime factor.
    pub fn new(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::InvalidArgument(format!("sieve limit must be >= 2, got {limit}")));
        }
        if limit > u32::MAX as u64 {
            return Err(Error::OutOfRange { what: "sieve limit", value: limit, limit: u32::MAX as u64 });
        }
        let len = limit as usize + 1;
        let mut spf = vec![0u32; len];
        let mut primes = Vec::new();
        for i in 2..len {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m >= len {
                    break;
                }
                spf[m] = p;
            }
        }
        Ok(Self { limit, spf, primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Smallest prime factor of `k`, for `2 <= k <= limit`.
    pub fn spf(&self, k: u64) -> Option<u64> {
        if k < 2 || k > self.limit {
            None
        } else {
            Some(self.spf[k as usize] as u64)
        }
    }

    pub fn is_prime(&self, k: u64) -> Option<bool> {
        self.spf(k).map(|p| p == k).or(if k < 2 { Some(false) } else { None })
    }

    /// All primes up to the limit, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().map(|&p| p as u64)
    }

    pub fn primes_upto(&self, n: u64) -> impl Iterator<Item = u64> + '_ {
        self.primes().take_while(move |&p| p <= n)
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::InvalidArgument("cannot factorize 0".into()));
        }
        if n > self.limit {
            return Err(Error::OutOfRange { what: "n", value: n, limit: self.limit });
        }
        let mut factors: Vec<(u64, u32)> = Vec::new();
        let mut m = n;
        while m > 1 {
            let p = self.spf[m as usize] as u64;
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        Ok(Factorization { n, factors })
    }

    /// pi(n): number of primes `p <= n`.
    pub fn prime_count_upto(&self, n: u64) -> Result<u64> {
        if n > self.limit {
            return Err(Error::OutOfRange { what: "n", value: n, limit: self.limit });
        }
        Ok(self.primes.partition_point(|&p| (p as u64) <= n) as u64)
    }
}

pub fn build_sieve(limit: u64) -> Result<SieveTable> {
    SieveTable::new(limit)
}

/// Prime factorization `n = p_1^{n_1} ... p_l^{n_l}` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Self { n: 1, factors: Vec::new() }
    }

    /// Factorization by trial division; used above the sieve range.
    pub fn trial_division(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("cannot factorize 0".into()));
        }
        let mut factors = Vec::new();
        let mut m = n;
        let mut push = |m: &mut u64, p: u64| {
            let mut e = 0;
            while *m % p == 0 {
                *m /= p;
                e += 1;
            }
            if e > 0 {
                factors.push((p, e));
            }
        };
        push(&mut m, 2);
        push(&mut m, 3);
        let mut d = 5u64;
        while d.checked_mul(d).is_some_and(|dd| dd <= m) {
            push(&mut m, d);
            push(&mut m, d + 2);
            d += 6;
        }
        if m > 1 {
            factors.push((m, 1));
        }
        Ok(Self { n, factors })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }
}

const SHARED_SIEVE_LIMIT: u64 = 1 << 20;

fn shared_sieve() -> &'static SieveTable {
    static SIEVE: OnceLock<SieveTable> = OnceLock::new();
    SIEVE.get_or_init(|| SieveTable::new(SHARED_SIEVE_LIMIT).expect("static limit"))
}

/// Factorizes any positive `n`: shared sieve below 2^20, trial division above.
pub fn factor(n: u64) -> Result<Factorization> {
    if n <= SHARED_SIEVE_LIMIT {
        shared_sieve().factorize(n)
    } else {
        Factorization::trial_division(n)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n <= SHARED_SIEVE_LIMIT {
        shared_sieve().is_prime(n).unwrap_or(false)
    } else {
        Factorization::trial_division(n).is_ok_and(|f| f.factors == [(n, 1)])
    }
}

/// pi(n) over the shared sieve.
pub fn prime_count(n: u64) -> Result<u64> {
    shared_sieve().prime_count_upto(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_spf(k: u64) -> u64 {
        (2..=k).find(|d| k % d == 0).unwrap()
    }

    #[test]
    fn small_sieve() {
        let s = build_sieve(10).unwrap();
        assert_eq!(s.spf(10), Some(2));
        assert_eq!(s.spf(9), Some(3));
        assert_eq!(s.spf(7), Some(7));
        let s = build_sieve(2).unwrap();
        assert_eq!(s.spf(2), Some(2));
    }

    #[test]
    fn rejects_tiny_limit() {
        assert!(matches!(build_sieve(1), Err(Error::InvalidArgument(_))));
        assert!(matches!(build_sieve(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn spf_matches_trial_division() {
        let s = build_sieve(5000).unwrap();
        for k in 2..=5000 {
            assert_eq!(s.spf(k), Some(trial_spf(k)), "k = {k}");
        }
    }

    #[test]
    fn large_prime_entry() {
        let s = build_sieve(1_000_000).unwrap();
        assert_eq!(s.spf(999_983), Some(999_983));
        // trial division oracle
        assert!((2..1000u64).all(|d| 999_983 % d != 0));
    }

    #[test]
    fn factorize_examples() {
        let s = build_sieve(100).unwrap();
        assert!(s.factorize(1).unwrap().factors().is_empty());
        assert_eq!(s.factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(s.factorize(97).unwrap().factors(), &[(97, 1)]);
        assert!(matches!(s.factorize(0), Err(Error::InvalidArgument(_))));
        assert!(matches!(s.factorize(101), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn trial_division_agrees_with_sieve() {
        let s = build_sieve(20_000).unwrap();
        for n in 1..=20_000 {
            assert_eq!(s.factorize(n).unwrap(), Factorization::trial_division(n).unwrap());
        }
        let big = Factorization::trial_division(1_000_000_007 * 6).unwrap();
        assert_eq!(big.factors(), &[(2, 1), (3, 1), (1_000_000_007, 1)]);
    }

    #[test]
    fn prime_counts() {
        let s = build_sieve(100).unwrap();
        assert_eq!(s.prime_count_upto(1).unwrap(), 0);
        assert_eq!(s.prime_count_upto(10).unwrap(), 4);
        assert_eq!(s.prime_count_upto(100).unwrap(), 25);
        assert!(s.prime_count_upto(101).is_err());
        let brute = (2..=100u64).filter(|&k| trial_spf(k) == k).count() as u64;
        assert_eq!(brute, 25);
    }
}
