use arithfn_core::classify::{classify, Law};
use arithfn_core::functions::*;
use arithfn_core::identities::{alpha_beta, builtin_spec, BuiltinSpec};
use arithfn_core::probnum::{build_polynomial, eval_at_one, moment_function_eval, normalize};
use arithfn_core::rational::{int, Rational};
use arithfn_core::sieve::{factor, is_prime, Factorization};
use arithfn_core::{ArithFn, TruncatedSeries};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(rational(), order + 1)
        .prop_map(move |c| TruncatedSeries::from_coeffs(c, order))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

proptest! {
    #[test]
    fn factorization_invariants(n in 1u64..5_000_000) {
        let f = factor(n).unwrap();
        let product: u64 = f.factors().iter().map(|&(p, e)| p.pow(e)).product();
        prop_assert_eq!(product, n);
        prop_assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
        prop_assert!(f.factors().iter().all(|&(p, e)| e >= 1 && is_prime(p)));
        prop_assert_eq!(n == 1, f.is_one());
        prop_assert_eq!(f, Factorization::trial_division(n).unwrap());
    }

    #[test]
    fn sigma_zero_is_d(n in 1u64..100_000) {
        let f = factor(n).unwrap();
        prop_assert_eq!(divisor_power_sum(&f, 0), divisor_count(&f));
    }

    #[test]
    fn coprime_multiplicativity(m in 1u64..2000, n in 1u64..2000) {
        prop_assume!(gcd(m, n) == 1);
        let (fm, fn_, fmn) = (factor(m).unwrap(), factor(n).unwrap(), factor(m * n).unwrap());
        prop_assert_eq!(divisor_count(&fmn), divisor_count(&fm) * divisor_count(&fn_));
        prop_assert_eq!(euler_totient(&fmn), euler_totient(&fm) * euler_totient(&fn_));
        for t in 0..3 {
            prop_assert_eq!(
                divisor_power_sum(&fmn, t),
                divisor_power_sum(&fm, t) * divisor_power_sum(&fn_, t)
            );
        }
    }

    #[test]
    fn bigomega_completely_additive(m in 1u64..2000, n in 1u64..2000) {
        let (fm, fn_, fmn) = (factor(m).unwrap(), factor(n).unwrap(), factor(m * n).unwrap());
        prop_assert_eq!(
            exponent_power_sum(&fmn, 1),
            exponent_power_sum(&fm, 1) + exponent_power_sum(&fn_, 1)
        );
    }

    #[test]
    fn alpha_multiplicative_beta_additive(m in 1u64..2000, n in 1u64..2000, t in 0u32..3) {
        prop_assume!(gcd(m, n) == 1);
        for which in BuiltinSpec::ALL {
            let spec = builtin_spec(which, t.max(1)).unwrap();
            let (am, an, amn) = (
                alpha_beta(&spec, &factor(m).unwrap()),
                alpha_beta(&spec, &factor(n).unwrap()),
                alpha_beta(&spec, &factor(m * n).unwrap()),
            );
            prop_assert_eq!(&amn.alpha, &(&am.alpha * &an.alpha));
            prop_assert_eq!(amn.beta, am.beta + an.beta);
        }
    }

    #[test]
    fn mul_commutative_associative(a in series(8), b in series(8), c in series(8)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn pow_routes_agree(a in series(10), k in 1u32..6) {
        prop_assume!(a.coeff(0) != &int(0));
        prop_assert_eq!(a.pow_recurrence(k).unwrap(), a.pow(k));
    }

    /// Low-degree factors whose product degree fits the order, so truncation
    /// never drops a term and evaluation must be multiplicative.
    #[test]
    fn eval_of_product(a in prop::collection::vec(rational(), 4), b in prop::collection::vec(rational(), 4), x in rational()) {
        let order = 8;
        let (a, b) = (TruncatedSeries::from_coeffs(a, order), TruncatedSeries::from_coeffs(b, order));
        prop_assert_eq!(a.mul(&b).unwrap().eval(&x), a.eval(&x) * b.eval(&x));
    }

    #[test]
    fn truncation_stability(a in series(12), b in series(12), k in 0u32..4) {
        let lo = |s: &TruncatedSeries| s.truncate(6).unwrap();
        prop_assert_eq!(lo(&a.mul(&b).unwrap()), lo(&a).mul(&lo(&b)).unwrap());
        prop_assert_eq!(lo(&a.pow(k)), lo(&a).pow(k));
    }

    #[test]
    fn series_text_round_trip(a in series(7)) {
        prop_assert_eq!(TruncatedSeries::from_text(&a.to_text()).unwrap(), a);
    }

    #[test]
    fn polynomial_at_one(m in 1u64..3000, which in 0usize..3) {
        let beta = [ArithFn::distinct_prime_count(), ArithFn::total_prime_count(), ArithFn::divisor_count()][which].clone();
        let p = build_polynomial(&beta, m).unwrap();
        prop_assert_eq!(eval_at_one(&p), m + 1);
        prop_assert_eq!(p.eval(&int(1)), int(m as i64 + 1));
        let pmf = normalize(&p);
        prop_assert_eq!(pmf.total(), int(1));
        prop_assert_eq!(moment_function_eval(&pmf, &int(1)), int(1));
        // q_j (M + 1) recovers the counts, leading 1 merged at 0
        for &(s, t) in &p.terms {
            let extra = if s == 0 { 1 } else { 0 };
            prop_assert_eq!(pmf.probability(s) * int(m as i64 + 1), int((t + extra) as i64));
        }
    }
}

#[test]
fn classify_integrates_with_builtins() {
    let r = classify(&ArithFn::divisor_power_sum(1), 2000).unwrap();
    assert!(r.multiplicative && !r.completely_multiplicative);
    let w = r.witness(Law::CompletelyMultiplicative).unwrap();
    assert!(w.violates(&ArithFn::divisor_power_sum(1)).unwrap());
}

#[test]
fn partition_growth_is_exact_past_u64() {
    let p = partition_count(500);
    assert_eq!(p, "2300165032574323995027".parse::<BigUint>().unwrap());
}
