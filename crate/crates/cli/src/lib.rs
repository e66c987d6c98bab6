//! `sal`: build Steiner triple systems, construct `T_β` over ℚ and run the
//! verification battery. Every report is exact and byte-for-byte
//! reproducible.

mod analyze;
mod commands;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use sal_core::algebra::AlgebraError;
use sal_core::axial::{AxialError, DEFAULT_CLOSURE_CAP};
use sal_core::designs::{as_sts, read_blocks, DesignError, SteinerTripleSystem};
use sal_core::exact::{parse_scalar, Scalar};
use sal_core::idempotents::IdempotentError;
use thiserror::Error;

pub use analyze::{analyze, AnalysisReport, CheckStatus, SystemSummary, Verdict, CHECKS};
pub use commands::run;

/// Version tag written into every JSON document.
pub const SCHEMA: &str = "1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Axial(#[from] AxialError),
    #[error(transparent)]
    Idempotent(#[from] IdempotentError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// `"p/q"` or an integer. Decimals are refused so no float ever leaks in.
pub fn parse_beta(text: &str) -> Result<Scalar, String> {
    parse_scalar(text).map_err(|_| format!("`{text}` is not an exact rational (write p/q or an integer)"))
}

pub fn read_system(path: &Path) -> Result<SteinerTripleSystem, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    Ok(as_sts(&read_blocks(&text)?)?)
}

#[derive(Debug, Parser)]
#[command(name = "sal", version, about = "Exact algebras attached to Steiner triple systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct JsonArg {
    /// Write the JSON document to this path (`-` for stdout).
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, clap::Args)]
pub struct CapArg {
    /// Largest group the closure may build before giving up.
    #[arg(long, env = "SAL_CLOSURE_CAP", default_value_t = DEFAULT_CLOSURE_CAP)]
    pub closure_cap: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a standard system: `fano`, `ag <m>`, `bose <n>` or `skolem <n>`.
    Construct {
        name: String,
        order: Option<usize>,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Check that a block file is a Steiner triple system.
    Validate {
        file: PathBuf,
        #[command(flatten)]
        json: JsonArg,
    },
    /// Run the verification battery for each `--beta`.
    Analyze {
        file: PathBuf,
        #[arg(long = "beta", required = true, allow_hyphen_values = true, value_parser = parse_beta)]
        betas: Vec<Scalar>,
        /// Comma-separated subset of checks; all when omitted.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// Include wall-clock timings (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        json: JsonArg,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Eigenvalue transitions and simplicity across the transitional values
    /// of β plus any `--beta` given.
    Sweep {
        file: PathBuf,
        #[arg(long = "beta", allow_hyphen_values = true, value_parser = parse_beta)]
        betas: Vec<Scalar>,
        #[command(flatten)]
        json: JsonArg,
    },
    /// Idempotents and square-zero elements in block spans.
    Catalog {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_beta)]
        beta: Scalar,
        /// A single block as `i,j,k`; every block when omitted.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        block: Vec<usize>,
        #[command(flatten)]
        json: JsonArg,
    },
    /// The group generated by the point involutions.
    Group {
        file: PathBuf,
        #[command(flatten)]
        json: JsonArg,
        #[command(flatten)]
        cap: CapArg,
    },
    /// List the analysis checks and what each one asserts.
    Checks,
}
