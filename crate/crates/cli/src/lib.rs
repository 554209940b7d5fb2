//! `entactic`: JSON-in, JSON-out access to the measures, certificates and
//! conversion maps of `entactic-core`, plus the `reproduce` suite.
//!
//! Exit codes: 0 on success, 1 on a computation error or malformed input,
//! 2 on a usage error.

pub mod claims;
mod commands;
mod exact;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use report::{reproduce, ReproReport, SCHEMA_VERSION};

#[derive(Debug, Parser)]
#[command(
    name = "entactic",
    version,
    about = "Multipartite entanglement measures and conversion maps"
)]
pub struct Cli {
    /// Print a human-readable summary on standard error.
    #[arg(long, global = true)]
    pub verbose: bool,

    /// Seed for every randomized step.
    #[arg(long, global = true, env = "ENTACTIC_SEED", default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureKind {
    /// Geometric measure over fully separable states.
    Gfs,
    /// Geometric measure over biseparable states.
    Gbs,
    /// Upper bound on the biseparable robustness.
    RbsUpper,
    /// Robustness of a pure state across one cut (needs --cut).
    Rpure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoryArg {
    Fsp,
    Bsp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessName {
    Ghz,
    W,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a named state as JSON; without a name, list the catalog.
    Catalog {
        name: Option<String>,
        /// Numeric parameters of the state.
        #[arg(allow_negative_numbers = true)]
        params: Vec<f64>,
        /// Emit the density matrix instead of the amplitudes.
        #[arg(long)]
        density: bool,
    },
    /// Evaluate a measure on a pure state.
    Measure {
        #[arg(long, value_enum)]
        kind: MeasureKind,
        #[arg(long = "in")]
        input: PathBuf,
        /// One-based party labels of one side, e.g. `1,2`.
        #[arg(long, value_delimiter = ',')]
        cut: Option<Vec<usize>>,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
    },
    /// Certificate for converting one pure state into another.
    Convert {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long, value_enum)]
        theory: TheoryArg,
        /// Upper bound on the robustness of the target (required for fsp).
        #[arg(long)]
        r_upper: Option<f64>,
        /// Also build the conversion map.
        #[arg(long)]
        build: bool,
        /// Success probability of the built map (default: the certified maximum).
        #[arg(long)]
        p: Option<f64>,
        /// Free mixer for fsp maps (density-matrix JSON).
        #[arg(long)]
        mixer: Option<PathBuf>,
        /// Check preservation on this many sampled free states.
        #[arg(long)]
        verify: Option<usize>,
    },
    /// Project a three-qubit state onto the GHZ-symmetric family.
    Twirl {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Inspect the shipped witnesses or evaluate one on a state.
    Witness {
        #[arg(long, value_enum)]
        name: WitnessName,
        /// Verify the witness range over product states.
        #[arg(long)]
        check: bool,
        /// State file to evaluate the robustness lower bound on.
        #[arg(long)]
        eval: Option<PathBuf>,
    },
    /// Robustness within the GHZ-symmetric family, in exact arithmetic.
    SymmetricRobustness {
        /// `λ+,λ-,λ`; decimals or fractions such as `1/3`.
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Re-derive the reference numbers into a JSON report.
    Reproduce {
        /// Run every registered claim.
        #[arg(long, conflicts_with = "only")]
        all: bool,
        /// Comma-separated claim ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Add wall-clock time per claim (makes reports differ between runs).
        #[arg(long)]
        timings: bool,
        /// List claim ids and exit.
        #[arg(long)]
        list: bool,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(entactic_core::Error),
    Io(String),
    /// The command ran but reported failures (e.g. failing claims).
    Failed(String),
}

impl From<entactic_core::Error> for CliError {
    fn from(e: entactic_core::Error) -> Self {
        CliError::Compute(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Compute(e) => write!(f, "error: {e}"),
            CliError::Io(m) => write!(f, "error: {m}"),
            CliError::Failed(m) => write!(f, "{m}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// JSON to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return 2;
            }
            let _ = write!(out, "{rendered}");
            return 0;
        }
    };
    match commands::dispatch(&cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}
