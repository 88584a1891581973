use std::path::Path;

use arithfn_core::classify::{self, DecompositionMode};
use arithfn_core::functions;
use arithfn_core::identities::{self, Bounds, BuiltinSpec};
use arithfn_core::probnum;
use arithfn_core::rational::{self, int, Rational};
use arithfn_core::sieve::SieveTable;
use arithfn_core::waring;
use arithfn_core::{ArithFn, Error, FnId};
use serde_json::{json, Value};

use crate::args::{ClassifyArgs, Format, Identity, ProbnumArgs, TableArgs, VerifyArgs, WaringArgs};
use crate::error::CliError;
use crate::report::{emit, to_value, Report};

type CmdResult = Result<(), CliError>;

fn required<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing required flag --{flag}")))
}

fn at_least<T: PartialOrd + std::fmt::Display + Copy>(v: T, min: T, flag: &str) -> Result<T, CliError> {
    if v < min {
        return Err(CliError::Usage(format!("--{flag} must be >= {min}, got {v}")));
    }
    Ok(v)
}

fn only_json(format: Option<Format>, command: &str) -> CmdResult {
    if format == Some(Format::Csv) {
        return Err(CliError::Usage(format!("`{command}` only produces json reports")));
    }
    Ok(())
}

fn parse_rational(s: &str, flag: &str) -> Result<Rational, CliError> {
    rational::parse(s).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

fn handle(id: FnId, t: Option<u32>) -> Result<ArithFn, CliError> {
    id.handle(t).map_err(CliError::usage)
}

fn finish(report: Report, passed: bool, out: Option<&Path>) -> CmdResult {
    emit(&report.to_json(), out)?;
    if passed { Ok(()) } else { Err(CliError::ChecksFailed) }
}

pub fn table(a: TableArgs, format: Option<Format>, out: Option<&Path>) -> CmdResult {
    let id = required(a.function, "fn")?;
    let nmax = at_least(required(a.nmax, "nmax")?, 1, "nmax")?;
    let f = handle(id, a.t)?;
    let values: Vec<String> = match id {
        FnId::Partition => functions::partition_counts(nmax)
            .into_iter()
            .skip(1)
            .map(|v| v.to_string())
            .collect(),
        FnId::PrimeCount => {
            let sieve = SieveTable::new(nmax.max(2)).map_err(CliError::usage)?;
            (1..=nmax)
                .map(|n| sieve.prime_count_upto(n).map(|c| c.to_string()))
                .collect::<Result<_, _>>()
                .map_err(CliError::runtime)?
        }
        _ => (1..=nmax)
            .map(|n| f.eval_integer(n).map(|v| v.to_string()))
            .collect::<Result<_, _>>()
            .map_err(CliError::runtime)?,
    };
    match format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = format!("n,{}\n", f.name());
            for (i, v) in values.iter().enumerate() {
                s.push_str(&format!("{},{v}\n", i + 1));
            }
            emit(&s, out)
        }
        Format::Json => {
            let rows: Vec<Value> = values
                .iter()
                .enumerate()
                .map(|(i, v)| json!({ "n": i as u64 + 1, "value": v }))
                .collect();
            let params = json!({ "fn": id.as_str(), "t": a.t, "nmax": nmax });
            let body = json!({ "function": f.name(), "rows": rows });
            emit(&Report::new("table", params, body).to_json(), out)
        }
    }
}

pub fn verify(a: VerifyArgs, format: Option<Format>, out: Option<&Path>) -> CmdResult {
    only_json(format, "verify")?;
    let identity = required(a.identity, "identity")?;
    match identity {
        Identity::Lemma(which) => verify_lemma(which, &a, out),
        Identity::EulerProduct => verify_euler(&a, out),
        Identity::PartitionProduct => {
            let order = at_least(a.order.unwrap_or(1000), 1, "order")?;
            let report = identities::partition_product_check(order).map_err(CliError::usage)?;
            let params = json!({ "identity": identity.as_str(), "order": order });
            let passed = report.passed;
            let body = json!({ "identity": identity.as_str(), "passed": passed, "per_term": to_value(&report) });
            finish(Report::new("verify", params, body), passed, out)
        }
    }
}

fn verify_lemma(which: BuiltinSpec, a: &VerifyArgs, out: Option<&Path>) -> CmdResult {
    let t = a.t.unwrap_or(1);
    let n_max = at_least(a.nmax.unwrap_or(10_000), 2, "nmax")?;
    let x = parse_rational(a.x.as_deref().unwrap_or("1/2"), "x")?;
    // sigma_t(n) / n^k needs k >= t + 2 to converge
    let default_k = if which == BuiltinSpec::LemmaB { t + 2 } else { 2 };
    let k = at_least(a.k.unwrap_or(default_k), 2, "k")?;
    let prime_bound = at_least(a.prime_bound.unwrap_or(1000), 2, "prime-bound")?;
    let exp_bound = at_least(a.exp_bound.unwrap_or(32), 1, "exp-bound")?;

    let spec = identities::builtin_spec(which, t).map_err(CliError::usage)?;
    let (alpha, beta) = which.direct_functions(t).map_err(CliError::usage)?;
    let per_term =
        identities::verify_per_term(&spec, &alpha, &beta, n_max).map_err(CliError::runtime)?;

    // Three stages ending at the requested bounds, each halving the previous.
    let schedule: Vec<Bounds> = (0..3)
        .rev()
        .map(|j| Bounds {
            prime_bound: (prime_bound >> j).max(1),
            exp_bound: (exp_bound >> j).max(1),
            n_max: (n_max >> j).max(1),
        })
        .collect();
    let sweep =
        identities::convergence_sweep(&spec, &x, k, &schedule).map_err(CliError::runtime)?;
    let within = a.tolerance.is_none_or(|tol| sweep.final_gap <= tol);
    let numeric_passed = sweep.monotone && within;
    let passed = per_term.passed && numeric_passed;

    let params = json!({
        "identity": which.as_str(),
        "t": if which.takes_t() { Some(t) } else { None },
        "nmax": n_max,
        "x": rational::format(&x),
        "k": k,
        "prime-bound": prime_bound,
        "exp-bound": exp_bound,
        "tolerance": a.tolerance,
    });
    let body = json!({
        "identity": which.as_str(),
        "passed": passed,
        "per_term": to_value(&per_term),
        "convergence": to_value(&sweep),
        "numeric_passed": numeric_passed,
    });
    finish(Report::new("verify", params, body), passed, out)
}

fn verify_euler(a: &VerifyArgs, out: Option<&Path>) -> CmdResult {
    let s = at_least(a.s.unwrap_or(2), 2, "s")?;
    let n_max = at_least(a.nmax.unwrap_or(10_000), 1, "nmax")?;
    let prime_bound = a.prime_bound.unwrap_or(n_max);
    // Tail bounds: sum_{n>N} n^{-s} < 1/((s-1) N^{s-1}); the missing primes
    // change the product by at most zeta(s) sum_{p>P} p^{-s} < 2/((s-1) P^{s-1}).
    let tail = |b: u64| 1.0 / ((s - 1) as f64 * (b.max(1) as f64).powi(s as i32 - 1));
    let tolerance = a.tolerance.unwrap_or(tail(n_max) + 2.0 * tail(prime_bound));
    let check = identities::euler_zeta_check(s, n_max, prime_bound).map_err(CliError::runtime)?;
    let passed = check.difference <= tolerance;
    let params = json!({
        "identity": "euler-product",
        "s": s,
        "nmax": n_max,
        "prime-bound": prime_bound,
        "tolerance": tolerance,
    });
    let body = json!({
        "identity": "euler-product",
        "passed": passed,
        "check": to_value(&check),
        "sum_exact_small": (n_max <= 100).then(|| rational::format(&check.sum_exact)),
    });
    finish(Report::new("verify", params, body), passed, out)
}

pub fn classify(a: ClassifyArgs, format: Option<Format>, out: Option<&Path>) -> CmdResult {
    only_json(format, "classify")?;
    let id = required(a.function, "fn")?;
    let bound = at_least(a.bound.unwrap_or(2000), 4, "bound")?;
    let mut f = handle(id, a.t)?;
    if let Some(base) = a.exp_base {
        f = classify::exp_transform(&f, base).map_err(CliError::usage)?;
    }
    let report = classify::classify(&f, bound).map_err(CliError::runtime)?;
    let decomposability: Vec<Value> = [DecompositionMode::Multiplicative, DecompositionMode::Additive]
        .into_iter()
        .map(|mode| classify::verify_decomposable(&f, mode, bound).map(|r| to_value(&r)))
        .collect::<Result<_, _>>()
        .map_err(CliError::runtime)?;
    let params = json!({ "fn": id.as_str(), "t": a.t, "bound": bound, "exp-base": a.exp_base });
    let body = json!({
        "range": format!("1..={bound}"),
        "classification": to_value(&report),
        "decomposability": decomposability,
    });
    emit(&Report::new("classify", params, body).to_json(), out)
}

pub fn waring(a: WaringArgs, format: Option<Format>, out: Option<&Path>) -> CmdResult {
    let s = a.s.unwrap_or(2);
    let t = at_least(a.t.unwrap_or(4), 1, "t")?;
    let order = a.order.unwrap_or(1024) as usize;
    // Reject odd s before any work.
    waring::generalized_theta(s, 0).map_err(CliError::usage)?;
    if let Some(limit) = a.check_bruteforce {
        if limit as usize > order {
            return Err(CliError::Usage(format!(
                "--check-bruteforce {limit} exceeds --order {order}"
            )));
        }
    }
    let lemma_g = match a.lemma_g.as_deref() {
        None => None,
        Some(&[tg, rg]) => {
            at_least(tg, 1, "lemma-g T")?;
            at_least(rg, 1, "lemma-g R")?;
            Some((tg, rg))
        }
        Some(_) => return Err(CliError::Usage("--lemma-g takes two values T R".into())),
    };

    let table = waring::waring_counts(s, t, order).map_err(CliError::runtime)?;
    let mut passed = true;

    let brute = match a.check_bruteforce {
        Some(limit) => {
            let mut mismatches = Vec::new();
            for m in 0..=limit {
                let expected = waring::brute_force_count(m, s, t).map_err(CliError::runtime)?;
                if waring::count_u64(table.count(m as usize)) != Some(expected) {
                    mismatches.push(m);
                }
            }
            passed &= mismatches.is_empty();
            Some(json!({ "limit": limit, "passed": mismatches.is_empty(), "mismatches": mismatches }))
        }
        None => None,
    };
    let lemma = match lemma_g {
        Some((tg, rg)) => {
            let r = waring::verify_lemma_g(s, tg, rg, order).map_err(CliError::runtime)?;
            passed &= r.passed;
            Some(to_value(&r))
        }
        None => None,
    };

    match format.unwrap_or(Format::Csv) {
        Format::Csv => {
            emit(&table.to_csv(), out)?;
            if let Some(b) = &brute {
                eprintln!("brute-force check: {b}");
            }
            if let Some(l) = &lemma {
                eprintln!("lemma-g check: passed={}", l["passed"]);
            }
        }
        Format::Json => {
            let params = json!({
                "s": s,
                "t": t,
                "order": order,
                "check-bruteforce": a.check_bruteforce,
                "lemma-g": lemma_g.map(|(x, y)| [x, y]),
            });
            let body = json!({
                "passed": passed,
                "table": to_value(&table),
                "bruteforce": brute,
                "lemma_g": lemma,
            });
            emit(&Report::new("waring", params, body).to_json(), out)?;
        }
    }
    if passed { Ok(()) } else { Err(CliError::ChecksFailed) }
}

pub fn probnum(a: ProbnumArgs, format: Option<Format>, out: Option<&Path>) -> CmdResult {
    only_json(format, "probnum")?;
    let id = required(a.beta, "beta")?;
    let m = at_least(required(a.m, "M")?, 1, "M")?;
    let moments = a.moments.unwrap_or(4);
    let lo = a.root_lo.as_deref().map(|s| parse_rational(s, "root-lo")).transpose()?;
    let hi = a.root_hi.as_deref().map(|s| parse_rational(s, "root-hi")).transpose()?;
    let steps = at_least(a.root_steps.unwrap_or(2000), 1, "root-steps")?;
    let beta = handle(id, a.t)?;

    let poly = probnum::build_polynomial(&beta, m).map_err(|e| match e {
        Error::Evaluation { .. } => CliError::runtime(e),
        _ => CliError::usage(e),
    })?;
    let at_one = probnum::eval_at_one(&poly);
    let pmf = probnum::normalize(&poly);
    let moment_values: Vec<Value> = (1..=moments)
        .map(|r| {
            let v = probnum::moment(&pmf, r);
            json!({ "r": r, "value": rational::format(&v), "approx": rational::to_f64(&v) })
        })
        .collect();

    let scan = if a.root_scan {
        let bound = probnum::cauchy_root_bound(&poly);
        let lo = lo.or_else(|| bound.as_ref().map(|b| -b)).unwrap_or_else(|| int(-1));
        let hi = hi.or(bound).unwrap_or_else(|| int(1));
        let r = probnum::real_root_scan(&poly, &lo, &hi, steps).map_err(CliError::usage)?;
        Some(json!({
            "scan": to_value(&r),
            "real_roots_found": r.real_roots_found(),
            "degree": r.degree,
        }))
    } else {
        None
    };

    let params = json!({
        "beta": id.as_str(),
        "t": a.t,
        "M": m,
        "moments": moments,
        "root-scan": a.root_scan,
        "root-steps": a.root_scan.then_some(steps),
    });
    let body = json!({
        "polynomial": {
            "M": m,
            "leading": 1,
            "terms": poly.terms.iter().map(|&(s, c)| json!({ "exponent": s, "count": c })).collect::<Vec<_>>(),
        },
        "eval_at_one": at_one,
        "expected_eval_at_one": m + 1,
        "pmf": to_value(&pmf),
        "pmf_total": rational::format(&pmf.total()),
        "moments": moment_values,
        "root_scan": scan,
    });
    emit(&Report::new("probnum", params, body).to_json(), out)
}
