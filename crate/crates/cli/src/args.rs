use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const SUBCOMMANDS: [&str; 5] = [
    "force-profile",
    "maxent",
    "limits-check",
    "simulate",
    "entropy",
];

/// Entropic forces, maximum-entropy densities and pair simulations as CSV.
#[derive(Debug, Parser)]
#[command(name = "entropic", version, args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output file. Relative paths resolve against $ENTROPIC_OUT_DIR when it is set.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Significant digits for every number written.
    #[arg(long, global = true, default_value_t = 9,
          value_parser = clap::value_parser!(u8).range(9..=17))]
    pub precision: u8,

    /// JSON file whose keys mirror the flags of the chosen command.
    /// Flags given on the command line win.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced entropic force of a boson and/or fermion pair against separation.
    #[command(args_override_self = true)]
    ForceProfile(ProfileArgs),
    /// Boltzmann density of a tabulated potential.
    #[command(args_override_self = true)]
    Maxent(MaxentArgs),
    /// Compare exact forces against their low-temperature or classical forms.
    #[command(args_override_self = true)]
    LimitsCheck(LimitsArgs),
    /// Overdamped Langevin pair run, histogrammed against the stationary law.
    #[command(args_override_self = true)]
    Simulate(SimulateArgs),
    /// Differential entropy, divergence and scaling gain of a tabulated density.
    #[command(args_override_self = true)]
    Entropy(EntropyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::ForceProfile(_) => "force-profile",
            Command::Maxent(_) => "maxent",
            Command::LimitsCheck(_) => "limits-check",
            Command::Simulate(_) => "simulate",
            Command::Entropy(_) => "entropy",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StatsChoice {
    Bose,
    Fermi,
    Both,
}

impl StatsChoice {
    pub fn bose(self) -> bool {
        self != StatsChoice::Fermi
    }

    pub fn fermi(self) -> bool {
        self != StatsChoice::Bose
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PairChoice {
    Bose,
    Fermi,
    /// No exchange force; the pure x² shell law.
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Regime {
    Low,
    Classical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GeometryChoice {
    Line,
    Radial,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[arg(long, value_enum, default_value_t = StatsChoice::Both)]
    pub stats: StatsChoice,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub x_max: f64,
    /// Number of grid points, endpoints included.
    #[arg(long, default_value_t = 301)]
    pub steps: usize,
    /// Reduced noncommutativity θ/λ².
    #[arg(long, conflicts_with = "theta", allow_negative_numbers = true)]
    pub tau: Option<f64>,
    #[command(flatten)]
    pub physical: PhysicalArgs,
}

#[derive(Debug, Args)]
pub struct PhysicalArgs {
    /// Write `r,f_bose,f_fermi` in physical units instead of reduced ones.
    #[arg(long, requires_all = ["mass", "temperature"])]
    pub physical: bool,
    #[arg(long, requires = "physical")]
    pub mass: Option<f64>,
    #[arg(long, requires = "physical")]
    pub temperature: Option<f64>,
    #[arg(long, requires = "physical", default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, requires = "physical", default_value_t = 1.0)]
    pub kb: f64,
    /// Noncommutative parameter in length², converted with the thermal wavelength.
    #[arg(long, requires = "physical")]
    pub theta: Option<f64>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("constraint").required(true).args(["beta", "mean_energy"])))]
pub struct MaxentArgs {
    /// CSV with columns `r,U`, one row per bin midpoint.
    #[arg(long, value_name = "CSV")]
    pub potential: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mean_energy: Option<f64>,
    #[arg(long, value_enum, default_value_t = GeometryChoice::Line)]
    pub geometry: GeometryChoice,
}

#[derive(Debug, Args)]
pub struct LimitsArgs {
    #[arg(long, value_enum)]
    pub regime: Regime,
    #[arg(long, value_enum, default_value_t = StatsChoice::Both)]
    pub stats: StatsChoice,
    /// Relative tolerance for `low`, absolute for `classical`.
    /// Defaults: 0.01 and 1e-9.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Series terms for the classical regime.
    #[arg(long, default_value_t = 4)]
    pub terms: usize,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub stats: PairChoice,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub tau: f64,
    #[arg(long, default_value_t = 1.0)]
    pub friction: f64,
    #[arg(long, default_value_t = 1.0)]
    pub kt: f64,
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    /// Total steps per walker, burn-in included.
    #[arg(long, default_value_t = 600)]
    pub steps: usize,
    #[arg(long, default_value_t = 400)]
    pub burn_in: usize,
    #[arg(long, default_value_t = 10_000)]
    pub walkers: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 3.0)]
    pub x_max: f64,
    #[arg(long, default_value_t = 30)]
    pub bins: usize,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    /// CSV with columns `x,p`, one row per bin midpoint. Renormalized on load.
    #[arg(long, value_name = "CSV")]
    pub dist: PathBuf,
    /// Reference density on the same points, for the divergence.
    #[arg(long = "ref", value_name = "CSV")]
    pub reference: Option<PathBuf>,
    /// Report the entropy of `alpha * X` and the gain over `X`.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, value_enum, default_value_t = GeometryChoice::Line)]
    pub geometry: GeometryChoice,
}
