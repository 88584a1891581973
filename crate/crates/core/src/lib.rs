//! Exact computations with arithmetical functions.
//!
//! * [`sieve`], [`functions`]: factorization and the classical functions
//!   d, sigma_t, omega, Omega, L_t, phi, pi and p(n).
//! * [`classify`]: range-qualified multiplicative / additive verdicts and
//!   decomposability over prime-power tables.
//! * [`series`]: truncated power series over exact rationals.
//! * [`identities`]: Euler-type products built from prime-local data and
//!   their per-term and numeric verification.
//! * [`probnum`]: arithmetical polynomials normalized to probability mass
//!   functions.
//! * [`waring`]: theta-series powers and sums-of-powers representation counts.

pub mod arithfn;
pub mod classify;
pub mod error;
pub mod functions;
pub mod identities;
pub mod probnum;
pub mod rational;
pub mod series;
pub mod sieve;
pub mod waring;

pub use arithfn::{ArithFn, FnId, ValueKind};
pub use classify::{ClassificationReport, DecomposabilityReport, DecompositionMode, Law, Witness};
pub use error::{Error, Result};
pub use identities::{BuiltinSpec, IdentityCheckReport, LocalFactorSpec};
pub use probnum::{ArithPolynomial, Pmf};
pub use rational::Rational;
pub use series::TruncatedSeries;
pub use sieve::{Factorization, SieveTable};
pub use waring::{RepCountTable, Theta};
