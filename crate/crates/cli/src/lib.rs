//! Front end for `halg-core`: the `.halg` document format, command
//! dispatch and reports.

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use halg_core::superalgebra::AlgebraError;

mod commands;
mod load;
pub mod report;
pub mod spec;

pub use commands::execute;
pub use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid document at `{path}`: {message}")]
    Validation { path: String, message: String },
}

impl CliError {
    /// 2 for usage, I/O and syntax errors, 3 for documents that parse but
    /// do not describe a valid algebra.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation { .. } => 3,
            _ => 2,
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Validation {
            path: String::new(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Names of the products and the twist inside a document.
#[derive(Clone, Debug, Args)]
pub struct Roles {
    #[arg(long, global = true, default_value = "bracket")]
    pub bracket: String,
    #[arg(long, global = true, default_value = "circ")]
    pub circ: String,
    #[arg(long, global = true, default_value = "mul")]
    pub mul: String,
    #[arg(long, global = true, default_value = "alpha")]
    pub alpha: String,
}

#[derive(Debug, Parser)]
#[command(
    name = "halg",
    version,
    about = "Exact checks for Hom-Lie superalgebras, Gel'fand-Dorfman bialgebras and Hom-Lie conformal superalgebras"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for `property`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Run the checkers on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(flatten)]
    pub roles: Roles,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Structure {
    HomLieSuper,
    HomNovikovSuper,
    /// `hom-novikov-super` with `α = id`.
    NovikovSuper,
    HomAssoc,
    Gd,
    HomPoisson,
    /// λ-bracket skew-symmetry and Hom-Jacobi.
    Conformal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Supercommutator,
    YauTwist,
    Derivation,
    Poisson,
    Star,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// GD verdict against the quadratic conformal verdict.
    GdIff,
    /// GD verdict against the loop algebra verdict.
    AffineIff,
    /// Star criteria against the direct GD checks.
    Star,
    /// Theorem relations on solved cocycles.
    Thm51,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify the identities of a structure.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        structure: Structure,
        /// Replace the twist by the identity first.
        #[arg(long)]
        classical: bool,
    },
    /// Build a new structure and certify it.
    Construct {
        #[arg(value_enum)]
        kind: Construction,
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
        /// The twist, derivation or `f` map (default: `alpha`, `D`, `f`).
        #[arg(long)]
        map: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the loop superalgebra.
    #[command(group(ArgGroup::new("mode").required(true).args(["delta", "window"])))]
    Affinize {
        file: PathBuf,
        /// Polynomial identities in formal indices.
        #[arg(long)]
        delta: bool,
        /// Every index in `lo..hi`.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Quadratic conformal superalgebra of GD data.
    Conformalize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// GD data of a quadratic conformal superalgebra.
    GdExtract {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Every twist making the λ-bracket Hom-Lie.
    SolveAlpha {
        file: PathBuf,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Basis of the 2-cocycle space.
    Cocycles {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Directory receiving one cocycle document per basis vector.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Central extension by a cocycle.
    Extend {
        file: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        /// `α(c)` as a multiple of `c`.
        #[arg(long, allow_hyphen_values = true)]
        alpha_center: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Relations satisfied by the components of a cocycle.
    #[command(name = "verify-thm51")]
    VerifyThm51 {
        file: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Randomized agreement suites.
    Property {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

/// Run a parsed command line: the rendered report and the exit code.
pub fn run(cli: &Cli) -> (String, i32) {
    match execute(cli) {
        Ok(report) => {
            let code = if report.passed() { 0 } else { 1 };
            let out = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            (out, code)
        }
        Err(e) => (format!("error: {e}\n"), e.exit_code()),
    }
}
