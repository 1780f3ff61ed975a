use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::RunConfig;

#[derive(Parser, Debug)]
#[command(name = "gnx", version, about = "Interpolation-inequality quotients on periodic grids")]
pub struct Cli {
    /// Worker threads (default: GNX_THREADS, then available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute θ and classify an exponent tuple.
    #[command(subcommand)]
    Regime(RegimeArgs),
    /// Search for an extremizer.
    Optimize(OptimizeArgs),
    /// Riesz energy of a field file.
    Energy(EnergyArgs),
    /// Closed-form demonstrations.
    #[command(subcommand)]
    Demo(DemoArgs),
    /// Numerical checks of the supporting lemmas.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
pub enum RegimeArgs {
    Gn {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
    },
    Riesz {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        lambda: f64,
        /// Exponent; `inf` is accepted.
        #[arg(long)]
        p: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quotient {
    Gn,
    Riesz,
}

#[derive(Args, Debug)]
pub struct OptimizeArgs {
    pub kind: Quotient,
    #[command(flatten)]
    pub run: RunConfig,
    /// JSON file with defaults for any of the run flags; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// JSON array of run objects executed concurrently, each over the resolved flags.
    #[arg(long)]
    pub sweep: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnergyMethod {
    Fourier,
    Direct,
    Both,
}

#[derive(Args, Debug)]
pub struct EnergyArgs {
    /// GNFLD1 field file.
    #[arg(long)]
    pub field: PathBuf,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long, value_enum, default_value = "fourier")]
    pub method: EnergyMethod,
}

#[derive(Subcommand, Debug)]
pub enum DemoArgs {
    /// Bump family approaching the non-attained endpoint constant.
    Endpoint {
        #[arg(long, value_delimiter = ',', default_value = "0.25,0.125,0.0625")]
        deltas: Vec<f64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verifier {
    Pqr,
    Bl,
    CauchySchwarz,
    RefinedSobolev,
    IntermGn,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub name: Verifier,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}
