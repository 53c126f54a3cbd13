//! Command-line surface. Scenario flags are optional at parse time so
//! a config file can fill them in; resolution and validation happen in
//! [`crate::scenario`].

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

use crate::reproduce::Figure;

#[derive(Parser)]
#[command(
    name = "catbreeder",
    version,
    about = "Breeds high-amplitude cat states by interfering two smaller cats in a \
             waveguide coupler and heralding on a mode-2 photon count"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Run the pipeline at one coupling length and print the result row
    Breed(BreedArgs),
    /// Sweep a coupling-length range and emit one CSV row per point
    Sweep(SweepArgs),
    /// Export the heralded state's Wigner function on a grid as CSV
    Wigner(WignerArgs),
    /// Regenerate the reference figure data files
    Reproduce(ReproduceArgs),
    /// Search a coupling-length range for the best operating point
    Optimize(OptimizeArgs),
    /// Run the oracle-equivalence and convention checks
    Verify(VerifyArgs),
}

#[derive(Args, Clone, Default)]
pub struct ScenarioArgs {
    /// Parity of the mode-1 input cat: even or odd
    #[arg(long)]
    pub parity1: Option<String>,
    /// Parity of the mode-2 input cat: even or odd
    #[arg(long)]
    pub parity2: Option<String>,
    /// Amplitude of the mode-1 input cat (positive)
    #[arg(long)]
    pub alpha0: Option<f64>,
    /// Amplitude of the mode-2 input cat (positive; enters as i*beta0)
    #[arg(long)]
    pub beta0: Option<f64>,
    /// Coupler strength [default: 1]
    #[arg(long)]
    pub mu: Option<f64>,
    /// Heralded photon count in mode 2 [default: 0]
    #[arg(long)]
    pub m: Option<usize>,
    /// Flat key = value config file; explicit flags override it
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args)]
pub struct BreedArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Coupling length in units of pi (append 'rad' for radians)
    #[arg(long)]
    pub z: Option<String>,
    /// Write CSV here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Range start in units of pi (append 'rad' for radians) [default: 0.01]
    #[arg(long = "z-min")]
    pub z_min: Option<String>,
    /// Range end in units of pi (append 'rad' for radians) [default: 0.49]
    #[arg(long = "z-max")]
    pub z_max: Option<String>,
    /// Number of grid points [default: 200]
    #[arg(long)]
    pub steps: Option<usize>,
    /// Write CSV here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct WignerArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Coupling length in units of pi (append 'rad' for radians)
    #[arg(long)]
    pub z: Option<String>,
    /// Samples per axis of the square auto-sized grid
    #[arg(long = "grid-count", default_value_t = 201)]
    pub grid_count: usize,
    /// Write CSV here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FigureArg {
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    #[value(name = "figA")]
    FigA,
}

impl From<FigureArg> for Figure {
    fn from(arg: FigureArg) -> Self {
        match arg {
            FigureArg::Fig4 => Figure::Fig4,
            FigureArg::Fig5 => Figure::Fig5,
            FigureArg::Fig6 => Figure::Fig6,
            FigureArg::Fig7 => Figure::Fig7,
            FigureArg::FigA => Figure::FigA,
        }
    }
}

#[derive(Args)]
pub struct ReproduceArgs {
    /// Which figure's data to regenerate
    #[arg(value_enum)]
    pub figure: FigureArg,
    /// Directory for the emitted files
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Range start in units of pi (append 'rad' for radians) [default: 0.01]
    #[arg(long = "z-min")]
    pub z_min: Option<String>,
    /// Range end in units of pi (append 'rad' for radians) [default: 0.49]
    #[arg(long = "z-max")]
    pub z_max: Option<String>,
    /// Number of grid points [default: 200]
    #[arg(long)]
    pub steps: Option<usize>,
    /// max-amplitude, max-probability, or threshold [default: max-amplitude]
    #[arg(long)]
    pub objective: Option<String>,
    /// Amplitude floor for the threshold objective
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Negative control: negate the beam-splitter reflection so the
    /// convention checks must fail
    #[arg(long = "tamper-r")]
    pub tamper_r: bool,
}
