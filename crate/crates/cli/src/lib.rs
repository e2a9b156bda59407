//! Command-line front end: analyze state files, reproduce the worked
//! examples and figures as CSV, run parameter sweeps, and run the audit
//! harness.

pub mod analyze;
pub mod audit;
pub mod format;
pub mod reproduce;
pub mod sweep;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use telres_core::criteria::DemboVariant;
use telres_core::oracle::InequalityCheck;

pub use reproduce::Target;
pub use sweep::{Family, Quantity, SweepSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_AUDIT: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] telres_core::Error),
    #[error("invalid sweep spec: {0}")]
    InvalidSpec(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    AuditViolation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::AuditViolation(_) => EXIT_AUDIT,
            _ => EXIT_INVALID,
        }
    }

    fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum DemboArg {
    #[default]
    Paper,
    Quarter,
}

impl From<DemboArg> for DemboVariant {
    fn from(v: DemboArg) -> Self {
        match v {
            DemboArg::Paper => DemboVariant::Paper,
            DemboArg::Quarter => DemboVariant::Quarter,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "telres",
    version,
    about = "Teleportation-usefulness criteria for bipartite states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze a density-matrix file and print the criterion report.
    Analyze {
        file: PathBuf,
        /// Dembo variant consulted by the verdict.
        #[arg(long, value_enum, default_value_t = DemboArg::Paper)]
        dembo: DemboArg,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
        /// Print numbers at full precision instead of 4 significant figures.
        #[arg(long)]
        full_precision: bool,
        /// Use this upper eigenvalue bound of the leading block instead of the exact one.
        #[arg(long)]
        eta_high: Option<f64>,
        /// Lower eigenvalue bound of the leading block (with --eta-high).
        #[arg(long, requires = "eta_high", default_value_t = 0.0)]
        eta_low: f64,
    },
    /// Write a worked example or figure series as CSV.
    Reproduce {
        #[arg(value_enum)]
        target: Target,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Evaluate report quantities over a state family and write CSV.
    Sweep {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long = "from", allow_hyphen_values = true)]
        lo: f64,
        #[arg(long = "to", allow_hyphen_values = true)]
        hi: f64,
        #[arg(long)]
        steps: usize,
        /// Comma-separated report fields.
        #[arg(long)]
        quantities: String,
        /// Local dimension (noisy_singlet only; default 3).
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_enum, default_value_t = DemboArg::Paper)]
        dembo: DemboArg,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run the randomized inequality audit.
    Audit {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
}

/// Parse `args` (including the program name), execute, and return the exit
/// code. `extra_checks` are appended to the audit's registered checks.
pub fn run_from_args<I, T>(
    args: I,
    out: &mut dyn Write,
    err: &mut dyn Write,
    extra_checks: Vec<Box<dyn InequalityCheck>>,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, out, extra_checks) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(
    cli: Cli,
    out: &mut dyn Write,
    extra_checks: Vec<Box<dyn InequalityCheck>>,
) -> Result<()> {
    match cli.command {
        Command::Analyze {
            file,
            dembo,
            json,
            full_precision,
            eta_high,
            eta_low,
        } => {
            let opts = analyze::AnalyzeOptions {
                dembo: dembo.into(),
                json,
                full_precision,
                eta: eta_high.map(|hi| (eta_low, hi)),
            };
            analyze::cmd_analyze(&file, &opts, out)
        }
        Command::Reproduce { target, output } => reproduce::cmd_reproduce(target, &output),
        Command::Sweep {
            family,
            lo,
            hi,
            steps,
            quantities,
            d,
            dembo,
            output,
        } => {
            let spec = SweepSpec::new(family, lo, hi, steps, &quantities, d)?;
            sweep::cmd_sweep(&spec, dembo.into(), &output)
        }
        Command::Audit { trials, seed } => audit::cmd_audit(trials, seed, extra_checks, out),
    }
}

/// CSV writer with '\n' row terminators.
pub(crate) fn csv_writer(path: &std::path::Path) -> Result<csv::Writer<std::fs::File>> {
    let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(file))
}
