use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use uqgl21::{DeformationMode, DeformationParameter, Generator, HighestWeight, Normalization};

use crate::error::{CliError, Result};

/// Environment variable consulted when `--tolerance` is not given.
pub const TOLERANCE_ENV: &str = "UQGL21_TOLERANCE";
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(name = "uqgl21", version, about = "Finite-dimensional representations of U_q[gl(2/1)]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the generator matrices of a representation.
    Build(BuildArgs),
    /// Run the relation suite and the route comparison.
    Verify(VerifyArgs),
    /// Typicality class, invariant subspaces and closure verdict.
    Classify(CommonArgs),
    /// Tensor product of two representations, with Hopf axiom checks.
    Tensor(TensorArgs),
    /// Build, classify and verify every cell of a grid.
    Scan(ScanArgs),
    /// Write a representation document, reload it and re-verify.
    Dump(DumpArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Generic,
    ClassicalLimit,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Highest weight `m13,m23,m33`; m13 and m23 integers, m33 decimal.
    #[arg(long, allow_hyphen_values = true, default_value = "0,0,0")]
    pub weight: String,
    /// Deformation parameter (ignored in classical-limit mode).
    #[arg(long, default_value_t = 1.7)]
    pub q: f64,
    #[arg(long, value_enum, default_value_t = Mode::Generic)]
    pub mode: Mode,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub a1: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub a2: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub a3: f64,
    /// Comparison tolerance [default: $UQGL21_TOLERANCE or 1e-9]
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Build the irreducible factor module of a non-typical weight.
    #[arg(long)]
    pub factor: bool,
    /// Single generator to write (required for csv).
    #[arg(long)]
    pub generator: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, conflicts_with = "input")]
    pub factor: bool,
    /// Verify a representation document instead of building from flags.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TensorArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Highest weight of the right factor [default: same as --weight].
    #[arg(long, allow_hyphen_values = true)]
    pub with: Option<String>,
    #[arg(long)]
    pub generator: Option<String>,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// m13 values: comma-separated numbers or inclusive ranges `a..b`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "span")]
    pub m13: Option<String>,
    /// m13 - m23 values; alternative to --m13.
    #[arg(long, allow_hyphen_values = true)]
    pub span: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub m23: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub m33: String,
    /// q values [default: the value of --q].
    #[arg(long)]
    pub qs: Option<String>,
    /// Also run the closure test and verify factor modules.
    #[arg(long)]
    pub irreducibility: bool,
}

#[derive(Args, Debug)]
pub struct DumpArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, conflicts_with = "input")]
    pub factor: bool,
    /// Reload this document instead of building from flags.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn parse_int(s: &str, what: &str) -> Result<i64> {
    s.trim()
        .parse()
        .map_err(|_| bad(format!("{what} must be an integer, got '{}'", s.trim())))
}

fn parse_real(s: &str, what: &str) -> Result<f64> {
    let x: f64 = s
        .trim()
        .parse()
        .map_err(|_| bad(format!("{what} must be a number, got '{}'", s.trim())))?;
    if !x.is_finite() {
        return Err(bad(format!("{what} must be finite")));
    }
    Ok(x)
}

pub fn parse_weight(s: &str) -> Result<HighestWeight> {
    let parts: Vec<&str> = s.split(',').collect();
    let [a, b, c] = parts[..] else {
        return Err(bad(format!("weight must be m13,m23,m33, got '{s}'")));
    };
    Ok(HighestWeight::new(
        parse_int(a, "m13")?,
        parse_int(b, "m23")?,
        parse_real(c, "m33")?,
    )?)
}

/// Comma-separated integers or inclusive ranges `a..b`; `b < a` is empty.
pub fn parse_int_list(s: &str, what: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        match item.split_once("..") {
            Some((a, b)) => out.extend(parse_int(a, what)?..=parse_int(b, what)?),
            None => out.push(parse_int(item, what)?),
        }
    }
    Ok(out)
}

/// Like [`parse_int_list`], but single items may be decimals.
pub fn parse_real_list(s: &str, what: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        match item.split_once("..") {
            Some((a, b)) => {
                out.extend((parse_int(a, what)?..=parse_int(b, what)?).map(|x| x as f64))
            }
            None => out.push(parse_real(item, what)?),
        }
    }
    Ok(out)
}

pub fn parse_generator(s: &str) -> Result<Generator> {
    Ok(s.parse()?)
}

impl CommonArgs {
    pub fn weight(&self) -> Result<HighestWeight> {
        parse_weight(&self.weight)
    }

    pub fn q_at(&self, value: f64) -> Result<DeformationParameter> {
        let mode = match self.mode {
            Mode::Generic => DeformationMode::Generic,
            Mode::ClassicalLimit => DeformationMode::ClassicalLimit,
        };
        Ok(DeformationParameter::new(value, mode)?)
    }

    pub fn q(&self) -> Result<DeformationParameter> {
        self.q_at(self.q)
    }

    pub fn normalization(&self) -> Result<Normalization> {
        Ok(Normalization::new(self.a1, self.a2, self.a3)?)
    }

    /// `--tolerance`, else the environment override, else the default.
    pub fn tolerance(&self) -> Result<f64> {
        let t = match self.tolerance {
            Some(t) => t,
            None => match std::env::var(TOLERANCE_ENV) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("{TOLERANCE_ENV} must be a number, got '{v}'")))?,
                Err(_) => DEFAULT_TOLERANCE,
            },
        };
        if !(t.is_finite() && t > 0.0) {
            return Err(bad(format!("tolerance must be positive, got {t}")));
        }
        Ok(t)
    }
}
