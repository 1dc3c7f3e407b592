//! The `dimerq` command line.
//!
//! Machine output goes to stdout, diagnostics to stderr. Exit status is 0 on
//! success, 1 when a computation fails and 2 for usage errors.

mod commands;
mod figure;
mod params;
mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::dataio::{Format, Normalization, DEFAULT_DIGITS};
pub use params::{ParamArgs, Resolved};
pub use table::{Cell, Table};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
/// Environment variable overriding the printed significant digits.
pub const PRECISION_VAR: &str = "DIMER_DISCORD_PRECISION";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Failure(_) => EXIT_FAILURE,
        }
    }
}

impl From<dimerq_core::Error> for CliError {
    fn from(e: dimerq_core::Error) -> Self {
        Self::Failure(e.to_string())
    }
}

impl From<crate::DataError> for CliError {
    fn from(e: crate::DataError) -> Self {
        use crate::DataError as D;
        match e {
            D::UnknownPreset { .. } | D::BadLiteral { .. } | D::UnknownUnit { .. } => {
                Self::Usage(e.to_string())
            }
            _ => Self::Failure(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Failure(format!("writing output: {e}"))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "dimerq",
    version,
    about = "Quantum discord of Heisenberg spin dimers from theory and experiment"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridKind {
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    /// Integrate c_m/R to the internal energy, then read off G.
    Integrate,
    /// Invert c_m/R(G) at a single point.
    Invert,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Hot,
    Cold,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Correlations of the model dimer over a temperature grid.
    Theory {
        #[command(flatten)]
        params: ParamArgs,
        /// Lowest temperature in K [default: 0.01·|J|].
        #[arg(long, conflicts_with = "t")]
        t_min: Option<f64>,
        /// Highest temperature in K [default: 5·|J|].
        #[arg(long, conflicts_with = "t")]
        t_max: Option<f64>,
        /// Number of grid temperatures
        #[arg(long, default_value_t = 400)]
        points: usize,
        #[arg(long, value_enum, default_value_t = GridKind::Log)]
        grid: GridKind,
        /// Explicit temperatures in K instead of a grid.
        #[arg(long, value_delimiter = ',')]
        t: Vec<f64>,
    },
    /// Dimensionless landmarks and their kelvin values.
    Landmarks {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Discord from the magnetic susceptibility.
    FromChi {
        #[command(flatten)]
        params: ParamArgs,
        /// CSV with columns T_K,chi_emu_per_mol[,sigma_chi].
        #[arg(long, conflicts_with_all = ["t", "chi"])]
        input: Option<PathBuf>,
        /// Temperature in K of a single measurement.
        #[arg(long, requires = "chi")]
        t: Option<f64>,
        /// Susceptibility in emu/mol of a single measurement.
        #[arg(long, requires = "t")]
        chi: Option<f64>,
        /// One-sigma uncertainty of --chi
        #[arg(long, requires = "chi")]
        sigma: Option<f64>,
        /// Whether extensive inputs are per mole of dimers or of Cu
        #[arg(long, value_enum, default_value_t = Normalization::PerDimer)]
        per: Normalization,
    },
    /// Discord from the magnetic specific heat.
    FromCm {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum)]
        route: Route,
        /// CSV with columns T_K,cm_over_R[,sigma] or T_K,cm_J_per_mol_K[,sigma].
        #[arg(long, conflicts_with_all = ["t", "cm"])]
        input: Option<PathBuf>,
        /// Temperature in K of a single measurement.
        #[arg(long, requires = "cm")]
        t: Option<f64>,
        /// c_m/R of a single measurement.
        #[arg(long, requires = "t")]
        cm: Option<f64>,
        /// One-sigma uncertainty of --cm
        #[arg(long, requires = "cm")]
        sigma: Option<f64>,
        /// Side of the Schottky peak [default: from T against the peak temperature].
        #[arg(long, value_enum)]
        branch: Option<BranchArg>,
        /// High-temperature tail c_m/R = a/T², a in K².
        #[arg(long, requires = "tail_start")]
        tail_coefficient: Option<f64>,
        /// Temperature in K from which the tail applies.
        #[arg(long, requires = "tail_coefficient")]
        tail_start: Option<f64>,
        /// Ground-state energy u(0)/R in K [default: the model value].
        #[arg(long, allow_hyphen_values = true, conflicts_with = "u0_from_data")]
        u0: Option<f64>,
        /// Infer u(0)/R as minus the full integral of c_m/R.
        #[arg(long)]
        u0_from_data: bool,
        /// Whether extensive inputs are per mole of dimers or of Cu
        #[arg(long, value_enum, default_value_t = Normalization::PerDimer)]
        per: Normalization,
    },
    /// Discord from a spin-spin correlator measured by neutron scattering.
    FromNeutron {
        #[command(flatten)]
        params: ParamArgs,
        /// Correlator such as -0.54(9); repeatable.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "input")]
        correlator: Vec<String>,
        /// Temperature in K attached to --correlator values.
        #[arg(long)]
        t: Option<f64>,
        /// CSV with columns T_K,G[,sigma_G].
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Least-squares fit of J and g to susceptibility data.
    Fit {
        #[command(flatten)]
        params: ParamArgs,
        /// CSV with columns T_K,chi_emu_per_mol[,sigma_chi].
        #[arg(long)]
        input: PathBuf,
        /// Whether extensive inputs are per mole of dimers or of Cu
        #[arg(long, value_enum, default_value_t = Normalization::PerDimer)]
        per: Normalization,
    },
    /// Curve data behind the figures.
    Figure {
        /// Figure number, 1 to 6.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
        id: u8,
        /// Number of curve points
        #[arg(long, default_value_t = figure::DEFAULT_POINTS)]
        points: usize,
    },
}

/// Significant digits from the environment, default 6.
pub fn precision() -> Result<usize, CliError> {
    match std::env::var(PRECISION_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_DIGITS),
        Ok(text) => match text.trim().parse::<usize>() {
            Ok(d) if (1..=17).contains(&d) => Ok(d),
            _ => Err(CliError::Usage(format!(
                "{PRECISION_VAR} must be an integer from 1 to 17, got {text:?}"
            ))),
        },
        Err(e) => Err(CliError::Usage(format!("{PRECISION_VAR}: {e}"))),
    }
}

/// Runs one invocation and returns the exit status.
pub fn run<I, T, O, E>(args: I, stdout: &mut O, stderr: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_SUCCESS
            };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
            } else {
                let _ = write!(stdout, "{rendered}");
            }
            return code;
        }
    };
    let result = precision().and_then(|digits| commands::dispatch(cli, digits, stdout, stderr));
    match result {
        Ok(()) => EXIT_SUCCESS,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
