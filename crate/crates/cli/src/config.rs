use std::path::{Path, PathBuf};

use clap::Args;
use gnx_core::solver::OptimizerConfig;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Flags of one optimization run. Every field is optional so that flags,
/// config files and sweep entries can be layered.
#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Points per axis.
    #[arg(long)]
    pub n: Option<usize>,
    /// Box side length.
    #[arg(long)]
    pub length: Option<f64>,
    /// `gaussian`, `random` or `file:PATH`.
    #[arg(long)]
    pub init: Option<String>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub grad_tol: Option<f64>,
    #[arg(long)]
    pub step0: Option<f64>,
    #[arg(long)]
    pub backtrack: Option<f64>,
    #[arg(long)]
    pub recenter_every: Option<usize>,
    /// `f64` (default) or `f32`.
    #[arg(long)]
    pub precision: Option<String>,
    #[arg(skip)]
    pub threads: Option<usize>,
}

macro_rules! layer {
    ($top:expr, $base:expr, $($f:ident),*) => {
        RunConfig { $($f: $top.$f.or($base.$f)),* }
    };
}

impl RunConfig {
    /// Fields set in `self` win over `base`.
    pub fn over(self, base: RunConfig) -> RunConfig {
        layer!(
            self, base, d, r, s, p, q, lambda, n, length, init, out, seed, max_iters, tol, grad_tol, step0,
            backtrack, recenter_every, precision, threads
        )
    }

    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::domain(format!("{}: {e}", path.display())))
    }

    pub fn load_sweep(path: &Path) -> Result<Vec<RunConfig>, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::domain(format!("{}: {e}", path.display())))
    }

    pub fn optimizer(&self) -> OptimizerConfig {
        let base = OptimizerConfig::default();
        OptimizerConfig {
            max_iters: self.max_iters.unwrap_or(base.max_iters),
            tol: self.tol.unwrap_or(base.tol),
            grad_tol: self.grad_tol.unwrap_or(base.grad_tol),
            step0: self.step0.unwrap_or(base.step0),
            backtrack: self.backtrack.unwrap_or(base.backtrack),
            recenter_every: self.recenter_every.unwrap_or(base.recenter_every),
            seed: self.seed.unwrap_or(base.seed),
        }
    }
}

/// `--threads`, then the run config, then `GNX_THREADS`, then available parallelism.
pub fn resolve_threads(flag: Option<usize>, config: Option<usize>) -> Result<usize, CliError> {
    if let Some(t) = flag.or(config) {
        return if t == 0 {
            Err(CliError::domain("thread count must be at least 1"))
        } else {
            Ok(t)
        };
    }
    if let Ok(v) = std::env::var("GNX_THREADS") {
        return match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(t),
            _ => Err(CliError::domain(format!("GNX_THREADS = {v:?} is not a positive integer"))),
        };
    }
    Ok(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

/// Runs `job` inside a dedicated pool with the resolved thread count.
pub fn with_threads<R>(
    flag: Option<usize>,
    config: Option<usize>,
    job: impl FnOnce() -> Result<R, CliError> + Send,
) -> Result<R, CliError>
where
    R: Send,
{
    let threads = resolve_threads(flag, config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::domain(e.to_string()))?;
    pool.install(job)
}
