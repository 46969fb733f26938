//! Command-line front end: spectra, wavefunctions, weak-coupling
//! comparison tables and 1/α scans, written as CSV or JSON.

pub mod commands;
pub mod scan;
pub mod table;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::run;

/// Environment variable that overrides the ν scan ceiling.
pub const NU_BOX_ENV: &str = "DIRAC1D_NU_BOX";

#[derive(Debug, Parser)]
#[command(name = "dirac1d", version, about = "Dirac bound states in a linear scalar potential")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lowest levels from the Hermite continuity condition.
    Spectrum(SpectrumArgs),
    /// ε against 1/α for both parities, with the Airy values alongside.
    Scan(ScanArgs),
    /// Normalized spinor samples of one level.
    Wavefunction(WavefunctionArgs),
    /// Relative deviation from the nonrelativistic levels.
    Compare(CompareArgs),
}

/// Either (--m, --g) or --alpha with g = 1.
#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["m", "g"])]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "g")]
    pub m: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "m")]
    pub g: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParitySelect {
    Even,
    Odd,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Representation {
    Standard,
    Tilde,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Also write the table to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON instead of CSV.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value_t = ParitySelect::Both)]
    pub parity: ParitySelect,
    /// Levels per parity.
    #[arg(long, default_value_t = 4)]
    pub count: usize,
    /// Add the shooting cross-check columns.
    #[arg(long)]
    pub oracle: bool,
    /// Solve the negative-energy branch (E <= -m) instead.
    #[arg(long)]
    pub negative: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = scan::DEFAULT_ALPHA_MIN, allow_negative_numbers = true)]
    pub alpha_min: f64,
    #[arg(long, default_value_t = scan::DEFAULT_ALPHA_MAX, allow_negative_numbers = true)]
    pub alpha_max: f64,
    #[arg(long, default_value_t = scan::DEFAULT_POINTS)]
    pub points: usize,
    /// Levels per parity.
    #[arg(long, default_value_t = scan::DEFAULT_LEVELS)]
    pub levels: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_parser = parse_parity)]
    pub parity: dirac1d::Parity,
    /// 0-based level index within the parity.
    #[arg(long, default_value_t = 0)]
    pub index: usize,
    /// Must be of the form 8k+1.
    #[arg(long, default_value_t = dirac1d::quadrature::SymmetricGrid::DEFAULT_POINTS)]
    pub grid_points: usize,
    #[arg(long, value_enum, default_value_t = Representation::Standard)]
    pub representation: Representation,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Levels per parity.
    #[arg(long, default_value_t = 4)]
    pub levels: usize,
    /// Add the exploratory ε·α column.
    #[arg(long)]
    pub fit: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_parity(s: &str) -> Result<dirac1d::Parity, String> {
    s.parse()
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

/// Result of a command that produced output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Success,
    /// Partial output was written; exit code 3.
    SolverFailure(String),
}

impl Status {
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Success => 0,
            Status::SolverFailure(_) => 3,
        }
    }
}

/// Run a parsed command line against the process environment and stdout.
pub fn main_with(cli: Cli) -> i32 {
    let nu_box = std::env::var(NU_BOX_ENV).ok();
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let result = run(cli, nu_box.as_deref(), &mut lock);
    let _ = lock.flush();
    match result {
        Ok(status) => {
            if let Status::SolverFailure(msg) = &status {
                eprintln!("error: {msg}");
            }
            status.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
