use serde::{Deserialize, Serialize};

use super::recenter::recenter;
use crate::error::{Error, Result};
use crate::functionals::{GnObjective, Objective, RieszObjective};
use crate::regimes::{GnParams, RegimeClass, RieszParams};
use crate::scalar::Real;
use crate::spectral::{apply_radial_symbol, make_profile, random_field, Field, Grid, ProfileKind, Space};

/// Maximum number of step halvings in one line search.
pub const MAX_HALVINGS: usize = 60;

/// Consecutive small relative changes required before stopping.
pub const PLATEAU_ITERATIONS: usize = 5;

/// Settings for [`optimize_gn`] and [`optimize_riesz`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerConfig {
    pub max_iters: usize,
    /// Relative quotient change counted as a plateau.
    pub tol: f64,
    /// Upper bound on the scaled gradient norm `‖G‖₂‖φ‖₂` at convergence.
    pub grad_tol: f64,
    pub step0: f64,
    /// Step reduction factor of the line search.
    pub backtrack: f64,
    /// Recenter every this many iterations; 0 disables recentering.
    pub recenter_every: usize,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            max_iters: 5000,
            tol: 1e-9,
            grad_tol: 1e-4,
            step0: 1.0,
            backtrack: 0.5,
            recenter_every: 50,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters < 1 {
            return Err(Error::InvalidParameter("max_iters must be at least 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tol = {} must be positive", self.tol)));
        }
        if !(self.grad_tol > 0.0) {
            return Err(Error::InvalidParameter(format!("grad_tol = {} must be positive", self.grad_tol)));
        }
        if !(self.step0 > 0.0 && self.step0.is_finite()) {
            return Err(Error::InvalidParameter(format!("step0 = {} must be positive", self.step0)));
        }
        if !(self.backtrack > 0.0 && self.backtrack < 1.0) {
            return Err(Error::InvalidParameter(format!("backtrack = {} not in (0, 1)", self.backtrack)));
        }
        Ok(())
    }
}

/// Starting point of an optimization run.
#[derive(Clone, Debug)]
pub enum Init<T: Real> {
    Profile(ProfileKind),
    /// Seeded complex Gaussian coefficients with decay `(1 + |ξ|²)^{−(s + d/2 + 1)/2}`.
    Random,
    Field(Field<T>),
}

/// One recentering applied during a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AppliedShift {
    pub iteration: usize,
    /// Detected center that was moved to the origin.
    pub center: Vec<f64>,
}

/// Outcome of an optimization run.
#[derive(Clone, Debug)]
pub struct OptimizationReport<T: Real> {
    pub best_quotient: T,
    pub iters_used: usize,
    /// Quotient after every accepted step, starting with the initial value.
    pub quotient_history: Vec<T>,
    /// Per history entry: `|‖D^s φ‖₂ − 1|` (enforced) and `|N(φ) − 1|` where `N`
    /// is `‖φ‖_p` for GN and the Riesz energy for the Riesz quotient (recorded only).
    pub gauge_residuals: Vec<[f64; 2]>,
    pub profile: Field<T>,
    pub recenterings: Vec<AppliedShift>,
    pub converged: bool,
    /// `‖G‖₂ ‖φ‖₂` at the returned profile.
    pub final_grad_norm: f64,
}

fn initial_field<T: Real>(grid: &Grid, s: f64, cfg: &OptimizerConfig, init: Init<T>) -> Result<Field<T>> {
    let f = match init {
        Init::Profile(kind) => make_profile(grid, kind)?,
        Init::Random => {
            let decay = s + grid.dim() as f64 / 2.0 + 1.0;
            random_field(grid, cfg.seed, decay, None)
        }
        Init::Field(f) => {
            if f.grid() != grid {
                return Err(Error::GridMismatch);
            }
            f.into_physical()
        }
    };
    if f.is_zero() {
        return Err(Error::ZeroField);
    }
    if !f.is_finite() {
        return Err(Error::InvalidParameter("initial field has non-finite samples".into()));
    }
    Ok(f)
}

/// Rescales `f` so that `‖D^s f‖₂ = 1`.
fn gauge<T: Real>(f: Field<T>, s: f64) -> Result<Field<T>> {
    let h = crate::functionals::sobolev_seminorm(&f, s)?;
    if h == T::zero() {
        return Err(Error::VanishingNorm("‖D^s f‖_2"));
    }
    Ok(f.scaled(T::one() / h))
}

fn gauge_residuals<T: Real>(objective: &dyn Objective<T>, f: &Field<T>) -> Result<[f64; 2]> {
    let h = crate::functionals::sobolev_seminorm(f, objective.sobolev_order())?.as_f64();
    let n = objective.secondary_norm(f)?.as_f64();
    Ok([(h - 1.0).abs(), (n - 1.0).abs()])
}

/// `(1 + |ξ|^{2s})^{−1} G`, an `H^s`-type preconditioned ascent direction.
fn precondition<T: Real>(g: &Field<T>, s: f64) -> Field<T> {
    let grid = *g.grid();
    let mut hat = g.to_frequency();
    apply_radial_symbol(&grid, hat.values_mut(), |k| 1.0 / (1.0 + k.powf(2.0 * s)));
    hat.into_physical()
}

fn grad_norm<T: Real>(g: &Field<T>, f: &Field<T>) -> f64 {
    g.l2_norm().as_f64() * f.l2_norm().as_f64()
}

/// Gauge-fixed preconditioned gradient ascent with backtracking.
pub fn ascend<T: Real>(objective: &dyn Objective<T>, cfg: &OptimizerConfig, init: Field<T>) -> Result<OptimizationReport<T>> {
    cfg.validate()?;
    let s = objective.sobolev_order();
    let mut phi = gauge(init, s)?;
    let (mut value, mut grad) = objective.value_and_gradient(&phi)?;
    let mut history = vec![value];
    let mut residuals = vec![gauge_residuals(objective, &phi)?];
    let mut recenterings = Vec::new();
    let mut step = cfg.step0;
    let mut plateau = 0;
    let mut converged = false;
    let mut iters = 0;

    while iters < cfg.max_iters {
        let gnorm = grad_norm(&grad, &phi);
        if plateau >= PLATEAU_ITERATIONS && gnorm <= cfg.grad_tol {
            converged = true;
            break;
        }
        iters += 1;
        let dir = precondition(&grad, s);
        // recentering may perturb the value by rounding; never fall below the record
        let last = history[history.len() - 1];
        let floor = if value > last { value } else { last };
        let mut t = step;
        let mut accepted = None;
        for _ in 0..=MAX_HALVINGS {
            let trial = phi.add_scaled(&dir, T::lit(t))?;
            if let Ok(trial) = gauge(trial, s) {
                if let Ok(v) = objective.value(&trial) {
                    if v > floor {
                        accepted = Some(trial);
                        break;
                    }
                }
            }
            t *= cfg.backtrack;
        }
        let Some(next) = accepted else {
            if gnorm <= cfg.grad_tol {
                converged = true;
                break;
            }
            return Err(Error::StepUnderflow {
                iteration: iters,
                halvings: MAX_HALVINGS,
            });
        };
        phi = next;
        let (v, g) = objective.value_and_gradient(&phi)?;
        let rel = ((v - value) / value).abs().as_f64();
        plateau = if rel < cfg.tol { plateau + 1 } else { 0 };
        value = v;
        grad = g;
        history.push(value);
        residuals.push(gauge_residuals(objective, &phi)?);
        step = (1.25 * t).min(cfg.step0);

        if cfg.recenter_every > 0 && iters % cfg.recenter_every == 0 {
            let r = recenter(&phi, s)?;
            if r.center.iter().any(|&c| c != 0.0) {
                phi = r.field;
                let (v, g) = objective.value_and_gradient(&phi)?;
                value = v;
                grad = g;
                recenterings.push(AppliedShift {
                    iteration: iters,
                    center: r.center,
                });
            }
        }
    }

    let final_grad_norm = grad_norm(&grad, &phi);
    let best = history.iter().copied().fold(history[0], |a, b| if b > a { b } else { a });
    Ok(OptimizationReport {
        best_quotient: best,
        iters_used: iters,
        quotient_history: history,
        gauge_residuals: residuals,
        profile: phi.into_space(Space::Physical),
        recenterings,
        converged,
        final_grad_norm,
    })
}

fn require_attained(class: RegimeClass) -> Result<()> {
    match class {
        RegimeClass::Attained => Ok(()),
        RegimeClass::Invalid(reason) => Err(Error::InvalidParameter(reason)),
        other => Err(Error::NotAttained(other.name().to_string())),
    }
}

/// Searches for a maximizer of the Gagliardo–Nirenberg quotient.
pub fn optimize_gn<T: Real>(
    params: &GnParams,
    grid: &Grid,
    cfg: &OptimizerConfig,
    init: Init<T>,
) -> Result<OptimizationReport<T>> {
    require_attained(params.classify())?;
    cfg.validate()?;
    let objective = GnObjective::new(grid, *params)?;
    let f = initial_field(grid, params.s, cfg, init)?;
    ascend(&objective, cfg, f)
}

/// Searches for a maximizer of the Riesz-energy quotient.
pub fn optimize_riesz<T: Real>(
    params: &RieszParams,
    grid: &Grid,
    cfg: &OptimizerConfig,
    init: Init<T>,
) -> Result<OptimizationReport<T>> {
    require_attained(params.classify())?;
    cfg.validate()?;
    let objective = RieszObjective::new(grid, *params)?;
    let f = initial_field(grid, params.s, cfg, init)?;
    ascend(&objective, cfg, f)
}
