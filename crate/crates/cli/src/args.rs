use std::path::{Path, PathBuf};
use std::str::FromStr;

use arithfn_core::{BuiltinSpec, FnId};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "arithfn", version, about = "Exact arithmetical-function tables, identity checks and Waring counts")]
pub struct Cli {
    /// TOML file; its `[<subcommand>]` table and top-level `format`/`out`
    /// supply values for flags that were not given.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output format (tables default to csv, everything else to json).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate an arithmetical function for n = 1..nmax.
    Table(TableArgs),
    /// Verify a product/series identity.
    Verify(VerifyArgs),
    /// Classify a function as multiplicative / additive on a finite range.
    Classify(ClassifyArgs),
    /// Representation counts from powers of theta series.
    Waring(WaringArgs),
    /// Arithmetical polynomial, its PMF and moments.
    Probnum(ProbnumArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Table(_) => "table",
            Command::Verify(_) => "verify",
            Command::Classify(_) => "classify",
            Command::Waring(_) => "waring",
            Command::Probnum(_) => "probnum",
        }
    }
}

fn parse_fn(s: &str) -> Result<FnId, String> {
    FnId::from_str(s).map_err(|e| e.to_string())
}

fn parse_identity(s: &str) -> Result<Identity, String> {
    Identity::from_str(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(try_from = "String")]
pub enum Identity {
    Lemma(BuiltinSpec),
    EulerProduct,
    PartitionProduct,
}

impl Identity {
    pub fn as_str(self) -> &'static str {
        match self {
            Identity::Lemma(b) => b.as_str(),
            Identity::EulerProduct => "euler-product",
            Identity::PartitionProduct => "partition-product",
        }
    }
}

impl FromStr for Identity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "euler-product" => Ok(Identity::EulerProduct),
            "partition-product" => Ok(Identity::PartitionProduct),
            _ => BuiltinSpec::from_str(s).map(Identity::Lemma).map_err(|_| {
                format!(
                    "unknown identity `{s}` (expected lemma-a, lemma-b, lemma-c, lemma-d, euler-product or partition-product)"
                )
            }),
        }
    }
}

impl TryFrom<String> for Identity {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct TableArgs {
    /// d, sigma, omega, bigomega, L, phi, pi or partition.
    #[arg(long = "fn", value_parser = parse_fn)]
    #[serde(rename = "fn")]
    pub function: Option<FnId>,
    /// Parameter t of sigma_t and L_t (default 1).
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub nmax: Option<u64>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct VerifyArgs {
    /// lemma-a, lemma-b, lemma-c, lemma-d, euler-product or partition-product.
    #[arg(long, value_parser = parse_identity)]
    pub identity: Option<Identity>,
    /// Parameter t of lemma-b (>= 0) and lemma-d (>= 1); default 1.
    #[arg(long)]
    pub t: Option<u32>,
    /// Largest n in the per-term check and the truncated sum.
    #[arg(long)]
    pub nmax: Option<u64>,
    /// Series order for partition-product.
    #[arg(long)]
    pub order: Option<u64>,
    /// Evaluation point as p/q (default 1/2).
    #[arg(long)]
    pub x: Option<String>,
    /// Exponent k of n^k (default 2; t + 2 for lemma-b).
    #[arg(long)]
    pub k: Option<u32>,
    /// Exponent s for euler-product (default 2).
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long)]
    pub prime_bound: Option<u64>,
    #[arg(long)]
    pub exp_bound: Option<u32>,
    /// Maximum allowed final numeric gap.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct ClassifyArgs {
    #[arg(long = "fn", value_parser = parse_fn)]
    #[serde(rename = "fn")]
    pub function: Option<FnId>,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub bound: Option<u64>,
    /// Classify n -> base^{f(n)} instead of f.
    #[arg(long)]
    pub exp_base: Option<u32>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct WaringArgs {
    /// Even power s (default 2).
    #[arg(long)]
    pub s: Option<u32>,
    /// Number of summands (default 4).
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub order: Option<u64>,
    /// Compare with brute-force enumeration for every m up to this limit.
    #[arg(long)]
    pub check_bruteforce: Option<u64>,
    /// Check U(t + r) = U(t) U(r).
    #[arg(long, num_args = 2, value_names = ["T", "R"])]
    pub lemma_g: Option<Vec<u32>>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct ProbnumArgs {
    /// Exponent function beta (omega, bigomega, d, ...).
    #[arg(long, value_parser = parse_fn)]
    pub beta: Option<FnId>,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long = "M")]
    #[serde(rename = "M")]
    pub m: Option<u64>,
    /// Number of raw moments to report (default 4).
    #[arg(long)]
    pub moments: Option<u32>,
    /// Count sign changes of J(x) - (M + 1) on a rational grid.
    #[arg(long)]
    #[serde(default)]
    pub root_scan: bool,
    #[arg(long)]
    pub root_lo: Option<String>,
    #[arg(long)]
    pub root_hi: Option<String>,
    #[arg(long)]
    pub root_steps: Option<u32>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ConfigFile {
    format: Option<Format>,
    out: Option<PathBuf>,
    table: Option<TableArgs>,
    verify: Option<VerifyArgs>,
    classify: Option<ClassifyArgs>,
    waring: Option<WaringArgs>,
    probnum: Option<ProbnumArgs>,
}

macro_rules! fill {
    ($dst:expr, $src:expr; $($field:ident),+) => {
        $( if $dst.$field.is_none() { $dst.$field = $src.$field; } )+
    };
}

impl Cli {
    /// Fills unset flags from the config file, if one was given.
    pub fn apply_config(&mut self) -> Result<(), CliError> {
        let Some(path) = self.config.clone() else { return Ok(()) };
        let cfg = load_config(&path)?;
        fill!(self, cfg; format, out);
        match &mut self.command {
            Command::Table(a) => {
                if let Some(c) = cfg.table {
                    fill!(a, c; function, t, nmax);
                }
            }
            Command::Verify(a) => {
                if let Some(c) = cfg.verify {
                    fill!(a, c; identity, t, nmax, order, x, k, s, prime_bound, exp_bound, tolerance);
                }
            }
            Command::Classify(a) => {
                if let Some(c) = cfg.classify {
                    fill!(a, c; function, t, bound, exp_base);
                }
            }
            Command::Waring(a) => {
                if let Some(c) = cfg.waring {
                    fill!(a, c; s, t, order, check_bruteforce, lemma_g);
                }
            }
            Command::Probnum(a) => {
                if let Some(c) = cfg.probnum {
                    fill!(a, c; beta, t, m, moments, root_lo, root_hi, root_steps);
                    a.root_scan |= c.root_scan;
                }
            }
        }
        Ok(())
    }
}

fn load_config(path: &Path) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
}
