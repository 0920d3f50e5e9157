//! Command-line front end for `subvac-core`.
//!
//! Every subcommand produces an [`Envelope`] that is rendered as CSV or JSON.
//! Exit codes: 0 success, 2 usage or argument error, 3 numerical failure (or a
//! failed `report` row), 4 physical-contract violation.

pub mod commands;
pub mod envelope;
pub mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use subvac_core::Error;

pub use envelope::{Cell, Envelope, Format, Metadata};

/// Environment variable holding the default output format.
pub const FORMAT_ENV: &str = "SUBVAC_FORMAT";

#[derive(Parser, Debug)]
#[command(name = "subvac", version, about = "Sub-vacuum energy densities, sampled bounds and vacuum fluctuation statistics")]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, env = FORMAT_ENV, default_value = "csv")]
    pub format: Format,

    /// Worker threads for sampling (results do not depend on this)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sampled energy bound −C/τ² for a sampling function
    QiBound(QiBoundArgs),
    /// Probability law of the smeared vacuum energy density
    Dist(DistArgs),
    /// Energy density of a single excited mode over time
    ModeEnergy(ModeEnergyArgs),
    /// Parallel-plate stress tensor
    Casimir(CasimirArgs),
    /// Cavity decay ratio over the phases of a squeezed mode
    Decay(DecayArgs),
    /// Reproduce the headline numbers and check each against its reference
    Report(ReportArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::QiBound(_) => "qi-bound",
            Command::Dist(_) => "dist",
            Command::ModeEnergy(_) => "mode-energy",
            Command::Casimir(_) => "casimir",
            Command::Decay(_) => "decay",
            Command::Report(_) => "report",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctionName {
    Gaussian,
    Lorentzian,
    Bump,
}

#[derive(Args, Debug, Serialize)]
pub struct QiBoundArgs {
    #[arg(long, value_enum, default_value = "gaussian")]
    pub function: FunctionName,
    /// Sampling width τ
    #[arg(long, default_value_t = 1.0)]
    pub tau: f64,
    /// Spacetime dimension; only 2 is supported
    #[arg(long, default_value_t = 2)]
    pub dimension: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DistAction {
    Pdf,
    Cdf,
    Sample,
    Moments,
    /// Density curve for plotting, with a cutoff marker column
    Fig2,
}

#[derive(Args, Debug, Serialize)]
pub struct DistArgs {
    #[arg(long, value_enum)]
    pub action: DistAction,
    /// Central charge
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Cutoff offset x₀; the law lives on x > −x₀
    #[arg(long, default_value_t = subvac_core::DEFAULT_X0)]
    pub x0: f64,
    /// Evaluate pdf/cdf at this single point instead of a range
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    /// Range for pdf/cdf/fig2 tables, as LO,HI
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub range: Option<Vec<f64>>,
    /// Number of grid points for pdf/cdf/fig2 tables
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    /// Number of draws for `sample`
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StateName {
    Vacuum,
    Coherent,
    Squeezed,
}

#[derive(Args, Debug, Serialize)]
pub struct ModeEnergyArgs {
    #[arg(long, value_enum, default_value = "squeezed")]
    pub state: StateName,
    /// Squeeze magnitude r
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    /// Squeeze phase θ
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha_re: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha_im: f64,
    /// Mode frequency ω
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Box length L
    #[arg(long, default_value_t = 100.0)]
    pub length: f64,
    /// Observation point
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub x: f64,
    /// Time samples over one period π/ω of the density
    #[arg(long, default_value_t = 64)]
    pub points: usize,
    /// Cross-check against the truncated Fock-space oracle
    #[arg(long)]
    pub oracle: bool,
    /// Starting truncation for the oracle (doubled as needed)
    #[arg(long, default_value_t = subvac_core::fock::DEFAULT_TRUNCATION)]
    pub truncation: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct CasimirArgs {
    /// Plate separation a (natural units, or metres with --si)
    #[arg(long, default_value_t = 1.0)]
    pub separation: f64,
    /// Interpret the separation in metres and report J/m³ and Pa
    #[arg(long)]
    pub si: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct DecayArgs {
    /// Squeeze magnitude r of the cavity mode
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    /// Squared mode function f² on the atom's path
    #[arg(long, default_value_t = 1.0)]
    pub f_squared: f64,
    /// Number of equally spaced transit phases over one cycle
    #[arg(long, default_value_t = 32)]
    pub phases: usize,
    /// Evaluate a single given ⟨E²⟩ shift instead of scanning the mode
    #[arg(long, allow_negative_numbers = true)]
    pub e2: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
pub struct ReportArgs {
    /// Seed for the sampled rows
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Draws used for the sampled negative fraction
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
    /// Replace every row tolerance (harness use)
    #[arg(long, hide = true, allow_negative_numbers = true)]
    pub tolerance_override: Option<f64>,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad argument values; exit code 2.
    Usage(String),
    /// Numerical failure inside the library; exit code 3.
    Numerical(String),
    /// A physical contract such as ⟨E²⟩ ≥ −f² was broken; exit code 4.
    Violation(String),
    /// `report` ran but at least one row failed; exit code 3.
    ReportFailed(Box<Envelope>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) | CliError::ReportFailed(_) => 3,
            CliError::Violation(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::UnsupportedDimension(_) => CliError::Usage(e.to_string()),
            Error::QiViolation { .. } => CliError::Violation(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn run(command: &Command) -> CliResult<Envelope> {
    match command {
        Command::QiBound(a) => commands::qi_bound(a),
        Command::Dist(a) => commands::dist(a),
        Command::ModeEnergy(a) => commands::mode_energy(a),
        Command::Casimir(a) => commands::casimir(a),
        Command::Decay(a) => commands::decay(a),
        Command::Report(a) => report::report(a),
    }
}

pub(crate) fn parameters<T: Serialize>(args: &T) -> serde_json::Value {
    serde_json::to_value(args).expect("argument structs serialize to JSON")
}
