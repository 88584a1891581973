//! Classical arithmetical functions evaluated from a prime factorization.
//!
//! Conventions at n = 1 (empty factorization): d = sigma_t = phi = 1,
//! omega = L_t = 0.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::sieve::Factorization;

/// d(n) = prod (n_i + 1).
pub fn divisor_count(f: &Factorization) -> BigUint {
    f.factors().iter().map(|&(_, e)| BigUint::from(e + 1)).product()
}

/// sigma_t(n) = prod_i (1 + p_i^t + ... + p_i^{n_i t}).
pub fn divisor_power_sum(f: &Factorization, t: u32) -> BigUint {
    f.factors()
        .iter()
        .map(|&(p, e)| prime_power_divisor_sum(p, e, t))
        .product()
}

/// 1 + p^t + ... + p^{a t}, i.e. sigma_t(p^a).
pub fn prime_power_divisor_sum(p: u64, a: u32, t: u32) -> BigUint {
    let step = BigUint::from(p).pow(t);
    let mut term = BigUint::one();
    let mut acc = BigUint::one();
    for _ in 0..a {
        term *= &step;
        acc += &term;
    }
    acc
}

/// omega(n), the number of distinct prime divisors.
pub fn distinct_prime_count(f: &Factorization) -> u64 {
    f.factors().len() as u64
}

/// L_t(n) = sum of t-th powers of the exponents. L_1 is Omega(n).
pub fn exponent_power_sum(f: &Factorization, t: u32) -> BigUint {
    f.factors().iter().map(|&(_, e)| BigUint::from(e).pow(t)).sum()
}

/// Omega(n), prime divisors counted with multiplicity.
pub fn total_prime_count(f: &Factorization) -> u64 {
    f.factors().iter().map(|&(_, e)| e as u64).sum()
}

/// phi(n) = prod p_i^{n_i - 1} (p_i - 1).
pub fn euler_totient(f: &Factorization) -> BigUint {
    f.factors()
        .iter()
        .map(|&(p, e)| BigUint::from(p).pow(e - 1) * BigUint::from(p - 1))
        .product()
}

/// p(n) by Euler's pentagonal-number recurrence.
pub fn partition_count(n: u64) -> BigUint {
    partition_counts(n).pop().expect("table is never empty")
}

/// p(0), ..., p(n) by the pentagonal-number recurrence
/// p(m) = sum_{j>=1} (-1)^{j+1} [p(m - j(3j-1)/2) + p(m - j(3j+1)/2)].
pub fn partition_counts(n: u64) -> Vec<BigUint> {
    let len = n as usize + 1;
    let mut p: Vec<BigInt> = Vec::with_capacity(len);
    p.push(BigInt::one());
    for m in 1..len {
        let mut acc = BigInt::zero();
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > m {
                break;
            }
            let positive = j % 2 == 1;
            let mut add = |idx: usize| {
                if positive {
                    acc += &p[idx];
                } else {
                    acc -= &p[idx];
                }
            };
            add(m - g1);
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= m {
                add(m - g2);
            }
        }
        p.push(acc);
    }
    p.into_iter()
        .map(|v| v.to_biguint().expect("partition numbers are positive"))
        .collect()
}
