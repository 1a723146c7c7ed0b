//! Command-line front end: argument parsing, run configuration and the
//! subcommands `loop`, `jones`, `mmr`, `entropy` and `selftest`.

mod commands;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::{DEFAULT_CUTOFF, DEFAULT_FLOOR, DEFAULT_ORDER};
use crate::lawrence::cache::CACHE_ENV;

pub use commands::{execute, selftest, CheckOutcome};

/// Exit status for a complete, verified result.
pub const EXIT_OK: i32 = 0;
/// Exit status for invalid input or an internal error.
pub const EXIT_INVALID: i32 = 1;
/// Exit status for a partial result or a failed check.
pub const EXIT_PARTIAL: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Loop,
    Jones,
    Mmr,
    Entropy,
    Selftest,
}

#[derive(Debug, Parser)]
#[command(name = "loopjones", version, about = "Loop expansion of colored Jones polynomials of braid closures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Loop expansion V^(0..L) with rational reconstruction.
    Loop(BraidArgs),
    /// Colored Jones polynomials from the finite-dimensional R-matrix.
    Jones(BraidArgs),
    /// Alexander polynomial, V^(0) * Delta = 1, and the MacMahon identity.
    Mmr(BraidArgs),
    /// Spectral-radius suprema on the unit torus against braid entropy.
    Entropy(BraidArgs),
    /// Runs the internal consistency suites.
    Selftest(CommonArgs),
}

#[derive(Debug, Args)]
pub struct BraidArgs {
    /// Braid word as signed generator indices, e.g. "1 -2 1 -2".
    #[arg(allow_hyphen_values = true)]
    pub braid: String,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Number of strands (default: one more than the largest generator).
    #[arg(long)]
    pub strands: Option<usize>,
    /// Highest loop order (power of hbar).
    #[arg(long = "L", default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    /// Terms of the m-sum always computed; for `entropy`, the largest m.
    #[arg(long = "M")]
    pub cutoff: Option<usize>,
    /// Largest m the loop expansion may extend to.
    #[arg(long = "M-max")]
    pub max_cutoff: Option<usize>,
    /// Lowest u-degree computed.
    #[arg(long, default_value_t = DEFAULT_FLOOR, allow_hyphen_values = true)]
    pub floor: i32,
    /// Colors, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub alpha: Vec<usize>,
    /// Largest color in the entropy ratio table.
    #[arg(long = "alpha-max")]
    pub alpha_max: Option<usize>,
    /// Roots of unity per torus axis.
    #[arg(long, default_value_t = crate::entropy::DEFAULT_RESOLUTION)]
    pub grid: usize,
    /// Reference entropy of the braid.
    #[arg(long = "h-ref")]
    pub h_ref: Option<f64>,
    /// Directory for cached Lawrence generator matrices.
    #[arg(long = "cache-dir", env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Print the resolved configuration to standard error.
    #[arg(long = "print-config")]
    pub print_config: bool,
}

/// Every setting of a run after defaults are applied.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub braid: String,
    pub strands: Option<usize>,
    #[serde(rename = "L")]
    pub order: usize,
    #[serde(rename = "M")]
    pub cutoff: usize,
    #[serde(rename = "M_max")]
    pub max_cutoff: usize,
    pub floor: i32,
    pub alphas: Vec<usize>,
    pub alpha_max: Option<usize>,
    pub grid: usize,
    pub h_ref: Option<f64>,
    pub cache_dir: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

/// Largest m for `entropy` when `--M` is absent.
pub const DEFAULT_ENTROPY_M: usize = 4;

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<(Self, bool)> {
        let (command, braid, common) = match cli.command {
            Command::Loop(a) => (CommandKind::Loop, a.braid, a.common),
            Command::Jones(a) => (CommandKind::Jones, a.braid, a.common),
            Command::Mmr(a) => (CommandKind::Mmr, a.braid, a.common),
            Command::Entropy(a) => (CommandKind::Entropy, a.braid, a.common),
            Command::Selftest(c) => (CommandKind::Selftest, String::new(), c),
        };
        let default_cutoff = if command == CommandKind::Entropy { DEFAULT_ENTROPY_M } else { DEFAULT_CUTOFF };
        let cutoff = common.cutoff.unwrap_or(default_cutoff);
        let alphas = if common.alpha.is_empty() { vec![2, 3] } else { common.alpha };
        let config = Self {
            command,
            braid,
            strands: common.strands,
            order: common.order,
            cutoff,
            max_cutoff: common.max_cutoff.unwrap_or(4 * cutoff).max(cutoff),
            floor: common.floor,
            alphas,
            alpha_max: common.alpha_max,
            grid: common.grid,
            h_ref: common.h_ref,
            cache_dir: common.cache_dir,
            out: common.out,
            format: common.format,
        };
        config.validate()?;
        Ok((config, common.print_config))
    }

    pub fn validate(&self) -> Result<()> {
        if self.floor >= 0 {
            return Err(Error::InvalidArgument(format!("--floor must be negative, got {}", self.floor)));
        }
        if self.grid == 0 {
            return Err(Error::InvalidArgument("--grid must be positive".into()));
        }
        if self.command == CommandKind::Entropy && self.cutoff == 0 {
            return Err(Error::InvalidArgument("--M must be positive".into()));
        }
        if let Some(&bad) = self.alphas.iter().find(|&&a| a < 2) {
            return Err(Error::InvalidArgument(format!("--alpha must be at least 2, got {bad}")));
        }
        if self.alpha_max.is_some_and(|a| a < 2) {
            return Err(Error::InvalidArgument("--alpha-max must be at least 2".into()));
        }
        if self.h_ref.is_some_and(|h| !h.is_finite() || h < 0.0) {
            return Err(Error::InvalidArgument("--h-ref must be a finite nonnegative number".into()));
        }
        Ok(())
    }
}

/// Parses `args`, runs the command and returns the process exit code.
/// Diagnostics go to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match RunConfig::from_cli(cli).and_then(|(config, echo)| {
        if echo {
            eprintln!("{}", serde_json::to_string_pretty(&config)?);
        }
        execute(&config)
    }) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}
