//! Range-qualified classification of arithmetical functions: multiplicative,
//! additive, their "completely" variants, and memoryless decomposability
//! against the canonical local factor g(p, a) = f(p^a).
//!
//! Every verdict is exact on the tested range `1..=bound` and says nothing
//! beyond it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arithfn::{ArithFn, ValueKind};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::sieve::{factor, SieveTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    Multiplicative,
    CompletelyMultiplicative,
    Additive,
    CompletelyAdditive,
}

impl Law {
    pub const ALL: [Law; 4] = [
        Law::Multiplicative,
        Law::CompletelyMultiplicative,
        Law::Additive,
        Law::CompletelyAdditive,
    ];

    /// Whether the law quantifies only over coprime pairs.
    pub fn coprime_only(self) -> bool {
        matches!(self, Law::Multiplicative | Law::Additive)
    }

    fn holds(self, fm: &Rational, fn_: &Rational, fmn: &Rational) -> bool {
        match self {
            Law::Multiplicative | Law::CompletelyMultiplicative => *fmn == fm * fn_,
            Law::Additive | Law::CompletelyAdditive => *fmn == fm + fn_,
        }
    }
}

/// A pair `(m, n)` on which `law` fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub law: Law,
    pub m: u64,
    pub n: u64,
}

impl Witness {
    /// Re-evaluates `f` and confirms the pair violates the law.
    pub fn violates(&self, f: &ArithFn) -> Result<bool> {
        let (fm, fn_, fmn) = (f.eval(self.m)?, f.eval(self.n)?, f.eval(self.m * self.n)?);
        let coprime_ok = !self.law.coprime_only() || self.m.gcd(&self.n) == 1;
        Ok(coprime_ok && !self.law.holds(&fm, &fn_, &fmn))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub name: String,
    /// Pairs `(m, n)` with `m * n <= bound` were tested.
    pub bound: u64,
    pub value_kind: ValueKind,
    pub memoryless: bool,
    /// Set when values were compared in floating point with a tolerance.
    pub approximate: bool,
    pub multiplicative: bool,
    pub completely_multiplicative: bool,
    pub additive: bool,
    pub completely_additive: bool,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    pub fn verdict(&self, law: Law) -> bool {
        match law {
            Law::Multiplicative => self.multiplicative,
            Law::CompletelyMultiplicative => self.completely_multiplicative,
            Law::Additive => self.additive,
            Law::CompletelyAdditive => self.completely_additive,
        }
    }

    pub fn witness(&self, law: Law) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.law == law)
    }
}

fn check_bound(bound: u64) -> Result<()> {
    if bound < 4 {
        return Err(Error::InvalidArgument(format!("bound must be >= 4, got {bound}")));
    }
    Ok(())
}

/// First pair (m ascending, then n >= m ascending, m * n <= bound) that
/// fails `holds`.
fn first_violation<T>(
    values: &[T],
    bound: u64,
    coprime_only: bool,
    holds: impl Fn(&T, &T, &T) -> bool,
) -> Option<(u64, u64)> {
    let at = |k: u64| &values[(k - 1) as usize];
    for m in 1..=bound {
        if m * m > bound {
            break;
        }
        for n in m..=bound / m {
            if coprime_only && m.gcd(&n) != 1 {
                continue;
            }
            if !holds(at(m), at(n), at(m * n)) {
                return Some((m, n));
            }
        }
    }
    None
}

/// Classifies `f` over all pairs with `m * n <= bound`.
pub fn classify(f: &ArithFn, bound: u64) -> Result<ClassificationReport> {
    check_bound(bound)?;
    let values = f.table(bound)?;
    if values.iter().all(Zero::is_zero) {
        return Err(Error::InvalidFunction {
            name: f.name().to_string(),
            reason: format!("identically zero on 1..={bound}"),
        });
    }
    let mut report = ClassificationReport {
        name: f.name().to_string(),
        bound,
        value_kind: f.kind(),
        memoryless: f.is_memoryless(),
        approximate: false,
        multiplicative: true,
        completely_multiplicative: true,
        additive: true,
        completely_additive: true,
        witnesses: Vec::new(),
        notes: Vec::new(),
    };
    for law in Law::ALL {
        let hit = first_violation(&values, bound, law.coprime_only(), |a, b, ab| law.holds(a, b, ab));
        record(&mut report, law, hit);
    }
    if !f.is_memoryless() && report.multiplicative {
        report.notes.push(format!(
            "`{}` is defined with memory, yet it is multiplicative on 1..={bound}",
            f.name()
        ));
    }
    Ok(report)
}

fn record(report: &mut ClassificationReport, law: Law, hit: Option<(u64, u64)>) {
    let Some((m, n)) = hit else { return };
    match law {
        Law::Multiplicative => report.multiplicative = false,
        Law::CompletelyMultiplicative => report.completely_multiplicative = false,
        Law::Additive => report.additive = false,
        Law::CompletelyAdditive => report.completely_additive = false,
    }
    report.witnesses.push(Witness { law, m, n });
}

/// Floating-point classification for real-valued functions such as `log n`.
/// Values agree when they differ by at most `tol`; the report is flagged
/// approximate.
pub fn classify_approx(
    name: &str,
    f: impl Fn(u64) -> f64,
    bound: u64,
    tol: f64,
) -> Result<ClassificationReport> {
    check_bound(bound)?;
    let values: Vec<f64> = (1..=bound).map(&f).collect();
    if let Some(k) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::Evaluation {
            name: name.to_string(),
            n: k as u64 + 1,
            reason: "non-finite value".into(),
        });
    }
    if values.iter().all(|v| v.abs() <= tol) {
        return Err(Error::InvalidFunction {
            name: name.to_string(),
            reason: format!("identically zero on 1..={bound}"),
        });
    }
    let mut report = ClassificationReport {
        name: name.to_string(),
        bound,
        value_kind: ValueKind::Rational,
        memoryless: true,
        approximate: true,
        multiplicative: true,
        completely_multiplicative: true,
        additive: true,
        completely_additive: true,
        witnesses: Vec::new(),
        notes: vec![format!("floating-point comparison, absolute tolerance {tol:e}")],
    };
    for law in Law::ALL {
        let hit = first_violation(&values, bound, law.coprime_only(), |a, b, ab| match law {
            Law::Multiplicative | Law::CompletelyMultiplicative => (ab - a * b).abs() <= tol,
            Law::Additive | Law::CompletelyAdditive => (ab - (a + b)).abs() <= tol,
        });
        record(&mut report, law, hit);
    }
    Ok(report)
}

/// The table g(p, a) = f(p^a).
pub type LocalTable = BTreeMap<(u64, u32), Rational>;

/// Tabulates the only possible local factor of `f`: g(p, a) = f(p^a) for
/// primes `p <= prime_bound` and `1 <= a <= exp_bound`.
pub fn extract_local_factor(f: &ArithFn, prime_bound: u64, exp_bound: u32) -> Result<LocalTable> {
    let mut table = LocalTable::new();
    if prime_bound < 2 {
        return Ok(table);
    }
    let sieve = SieveTable::new(prime_bound)?;
    for p in sieve.primes() {
        for a in 1..=exp_bound {
            let pa = p.checked_pow(a).ok_or(Error::OutOfRange {
                what: "prime power",
                value: p,
                limit: u64::MAX,
            })?;
            table.insert((p, a), f.eval(pa)?);
        }
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionMode {
    Multiplicative,
    Additive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposabilityReport {
    pub name: String,
    pub mode: DecompositionMode,
    pub bound: u64,
    pub decomposable: bool,
    /// Smallest `n` where f(n) differs from the combined local factors.
    pub witness: Option<u64>,
    pub notes: Vec<String>,
}

/// Checks f(n) = prod g(p_i, n_i) (or the sum, in additive mode) for every
/// `n <= bound` with g(p, a) = f(p^a).
pub fn verify_decomposable(
    f: &ArithFn,
    mode: DecompositionMode,
    bound: u64,
) -> Result<DecomposabilityReport> {
    check_bound(bound)?;
    let values = f.table(bound)?;
    let at = |k: u64| &values[(k - 1) as usize];
    let mut witness = None;
    for n in 1..=bound {
        let fac = factor(n)?;
        let locals = fac.factors().iter().map(|&(p, a)| at(p.pow(a)));
        let combined: Rational = match mode {
            DecompositionMode::Multiplicative => locals.fold(int(1), |acc, g| acc * g),
            DecompositionMode::Additive => locals.fold(int(0), |acc, g| acc + g),
        };
        if combined != *at(n) {
            witness = Some(n);
            break;
        }
    }
    let mut notes = Vec::new();
    if !f.is_memoryless() && witness.is_none() {
        notes.push(format!(
            "`{}` is defined with memory, but its values on 1..={bound} are reproduced by its prime-power table",
            f.name()
        ));
    }
    Ok(DecomposabilityReport {
        name: f.name().to_string(),
        mode,
        bound,
        decomposable: witness.is_none(),
        witness,
        notes,
    })
}

/// n -> base^{f(n)}, exactly. Evaluation fails with `Unsupported` when
/// f(n) is negative or not an integer.
pub fn exp_transform(f: &ArithFn, base: u32) -> Result<ArithFn> {
    if base < 2 {
        return Err(Error::InvalidArgument(format!("base must be >= 2, got {base}")));
    }
    let inner = f.clone();
    let name = format!("{base}^{}", f.name());
    let mut out = ArithFn::new(name, ValueKind::Integer, move |n| {
        let v = inner.eval(n)?;
        if !v.is_integer() || v.is_negative() {
            return Err(Error::Unsupported(format!(
                "exp transform needs a nonnegative integer, `{}`({n}) = {v}",
                inner.name()
            )));
        }
        let e = v.to_integer().to_u32().ok_or_else(|| {
            Error::Unsupported(format!("exponent {v} at n = {n} is too large"))
        })?;
        Ok(int(BigInt::from(base).pow(e)))
    });
    if !f.is_memoryless() {
        out = out.with_memory();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn suite() -> Vec<ArithFn> {
        vec![
            ArithFn::divisor_count(),
            ArithFn::divisor_power_sum(1),
            ArithFn::divisor_power_sum(2),
            ArithFn::distinct_prime_count(),
            ArithFn::total_prime_count(),
            ArithFn::exponent_power_sum(2),
            ArithFn::exponent_power_sum(3),
            ArithFn::euler_totient(),
        ]
    }

    #[test]
    fn divisor_count_verdicts() {
        let r = classify(&ArithFn::divisor_count(), 2000).unwrap();
        assert!(r.multiplicative);
        assert!(!r.completely_multiplicative);
        assert_eq!(
            r.witness(Law::CompletelyMultiplicative),
            Some(&Witness { law: Law::CompletelyMultiplicative, m: 2, n: 2 })
        );
    }

    #[test]
    fn omega_and_bigomega() {
        let r = classify(&ArithFn::distinct_prime_count(), 2000).unwrap();
        assert!(r.additive && !r.completely_additive);
        assert_eq!(r.witness(Law::CompletelyAdditive).map(|w| (w.m, w.n)), Some((2, 2)));
        let r = classify(&ArithFn::total_prime_count(), 2000).unwrap();
        assert!(r.additive && r.completely_additive);
        assert!(!r.multiplicative);
    }

    #[test]
    fn totient_is_multiplicative_with_memory() {
        let r = classify(&ArithFn::euler_totient(), 2000).unwrap();
        assert!(r.multiplicative && !r.completely_multiplicative);
        assert!(!r.memoryless);
        assert!(!r.notes.is_empty());
    }

    #[test]
    fn prime_count_has_no_laws() {
        let f = ArithFn::prime_count();
        let r = classify(&f, 200).unwrap();
        assert!(!r.multiplicative && !r.additive);
        for w in &r.witnesses {
            assert!(w.violates(&f).unwrap());
        }
    }

    #[test]
    fn witnesses_reverify() {
        for f in suite() {
            let r = classify(&f, 500).unwrap();
            assert!(!r.completely_multiplicative || r.multiplicative);
            assert!(!r.completely_additive || r.additive);
            for law in Law::ALL {
                assert_eq!(r.verdict(law), r.witness(law).is_none(), "{} {law:?}", f.name());
            }
            for w in &r.witnesses {
                assert!(w.violates(&f).unwrap(), "{}: {w:?}", f.name());
            }
        }
    }

    #[test]
    fn bound_and_zero_checks() {
        assert!(matches!(classify(&ArithFn::divisor_count(), 3), Err(Error::InvalidArgument(_))));
        assert!(matches!(classify(&ArithFn::zero(), 100), Err(Error::InvalidFunction { .. })));
        let failing = ArithFn::new("bad", ValueKind::Integer, |n| {
            if n == 7 {
                Err(Error::Evaluation { name: "bad".into(), n, reason: "boom".into() })
            } else {
                Ok(int(1))
            }
        });
        assert!(matches!(classify(&failing, 100), Err(Error::Evaluation { n: 7, .. })));
    }

    #[test]
    fn logarithm_is_approximately_completely_additive() {
        let r = classify_approx("log", |n| (n as f64).ln(), 2000, 1e-9).unwrap();
        assert!(r.approximate);
        assert!(r.additive && r.completely_additive);
        assert!(!r.multiplicative);
    }

    #[test]
    fn local_factor_tables() {
        let g = extract_local_factor(&ArithFn::divisor_count(), 50, 6).unwrap();
        assert!(g.iter().all(|(&(_, a), v)| *v == int(a as i64 + 1)));
        let g = extract_local_factor(&ArithFn::divisor_power_sum(1), 10, 3).unwrap();
        assert_eq!(g[&(2, 2)], int(7));
        let g = extract_local_factor(&ArithFn::distinct_prime_count(), 30, 4).unwrap();
        assert!(g.values().all(|v| *v == int(1)));
        assert!(extract_local_factor(&ArithFn::one(), 1, 3).unwrap().is_empty());
        assert!(matches!(
            extract_local_factor(&ArithFn::one(), 3, 64),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn decomposability() {
        use DecompositionMode::*;
        let ok = |f: ArithFn, mode| verify_decomposable(&f, mode, 5000).unwrap().decomposable;
        assert!(ok(ArithFn::divisor_power_sum(2), Multiplicative));
        assert!(ok(ArithFn::exponent_power_sum(3), Additive));
        assert!(ok(ArithFn::euler_totient(), Multiplicative));
        let r = verify_decomposable(&ArithFn::euler_totient(), Multiplicative, 100).unwrap();
        assert!(!r.notes.is_empty());
        let r = verify_decomposable(&ArithFn::prime_count(), Multiplicative, 100).unwrap();
        assert_eq!(r.witness, Some(1));
        let r = verify_decomposable(&ArithFn::divisor_count(), Additive, 100).unwrap();
        assert_eq!(r.witness, Some(1));
    }

    #[test]
    fn additive_decomposable_implies_coprime_additive() {
        for f in suite() {
            let dec = verify_decomposable(&f, DecompositionMode::Additive, 2000).unwrap();
            if dec.decomposable {
                assert!(classify(&f, 2000).unwrap().additive, "{}", f.name());
            }
        }
    }

    #[test]
    fn exp_transform_examples() {
        let two_omega = exp_transform(&ArithFn::distinct_prime_count(), 2).unwrap();
        assert_eq!(two_omega.eval(30).unwrap(), int(8));
        assert!(classify(&two_omega, 2000).unwrap().multiplicative);
        let two_bigomega = exp_transform(&ArithFn::total_prime_count(), 2).unwrap();
        assert!(classify(&two_bigomega, 2000).unwrap().completely_multiplicative);
        let one = exp_transform(&ArithFn::zero(), 3).unwrap();
        assert_eq!(one.eval(17).unwrap(), int(1));
        let r = classify(&one, 100).unwrap();
        assert!(r.completely_multiplicative);

        let neg = ArithFn::constant("neg", int(-1));
        let t = exp_transform(&neg, 2).unwrap();
        assert!(matches!(t.eval(3), Err(Error::Unsupported(_))));
        let half = ArithFn::constant("half", ratio(1, 2));
        assert!(matches!(exp_transform(&half, 2).unwrap().eval(3), Err(Error::Unsupported(_))));
        assert!(exp_transform(&ArithFn::one(), 1).is_err());
    }

    /// f additive on a pair set iff b^f is multiplicative on the same set.
    #[test]
    fn exp_transform_maps_additive_to_multiplicative() {
        let fns = [
            ArithFn::distinct_prime_count(),
            ArithFn::total_prime_count(),
            ArithFn::exponent_power_sum(2),
            ArithFn::divisor_count(),
            ArithFn::prime_count(),
        ];
        for f in fns {
            for base in [2, 3, 5] {
                let g = exp_transform(&f, base).unwrap();
                let rf = classify(&f, 2000).unwrap();
                let rg = classify(&g, 2000).unwrap();
                assert_eq!(rf.additive, rg.multiplicative, "{} base {base}", f.name());
                assert_eq!(rf.completely_additive, rg.completely_multiplicative);
            }
        }
    }
}
