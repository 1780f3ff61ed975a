use std::path::PathBuf;

use gnx_core::functionals::RieszKernel;
use gnx_core::lemmas::{
    bl_nonlocal_verify, cauchy_schwarz_sweep, interm_gn_ratios, pqr_sweep, refined_sobolev_ratios, standard_corpus,
    BLReport,
};
use gnx_core::regimes::{GnParams, RieszParams};
use gnx_core::solver::{endpoint_demo, endpoint_table_is_monotone, optimize_gn, optimize_riesz, Init, OptimizationReport};
use gnx_core::spectral::io::{load_field, save_field};
use gnx_core::spectral::{make_profile, Field, ProfileKind};
use gnx_core::{Grid, Real};
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::{DemoArgs, EnergyArgs, EnergyMethod, OptimizeArgs, Quotient, RegimeArgs, Verifier, VerifyArgs};
use crate::config::{resolve_threads, with_threads, RunConfig};
use crate::error::CliError;
use crate::output::{profile_csv, to_json, write_file};

/// Largest allowed `|closed form − grid value|` in the endpoint table.
const ENDPOINT_TOL: f64 = 1e-4;

#[derive(Serialize)]
struct RegimeReport {
    kind: Quotient,
    params: serde_json::Value,
    theta: Option<f64>,
    class: &'static str,
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    case: Option<u8>,
}

pub fn regime(args: RegimeArgs) -> Result<(), CliError> {
    let report = match args {
        RegimeArgs::Gn { d, r, s, p, q } => {
            let params = GnParams::new(d, r, s, p, q)?;
            let class = params.classify();
            RegimeReport {
                kind: Quotient::Gn,
                params: serde_json::json!({ "d": d, "r": r, "s": s, "p": p, "q": q }),
                theta: Some(params.theta),
                class: class.name(),
                reason: class.reason().map(str::to_string),
                case: None,
            }
        }
        RegimeArgs::Riesz { d, s, lambda, p } => {
            let params = RieszParams::new(d, s, lambda, p)?;
            let class = params.classify();
            RegimeReport {
                kind: Quotient::Riesz,
                params: serde_json::json!({ "d": d, "s": s, "lambda": lambda, "p": p }),
                theta: params.theta,
                class: class.name(),
                reason: class.reason().map(str::to_string),
                case: Some(params.case()),
            }
        }
    };
    print!("{}", to_json("regime", &report));
    if report.class == "Attained" {
        Ok(())
    } else {
        Err(CliError::domain(match &report.reason {
            Some(r) => format!("{}: {r}", report.class),
            None => format!("regime not attained: {}", report.class),
        }))
    }
}

/// Fully resolved settings, embedded in every optimization report.
#[derive(Clone, Debug, Serialize)]
struct ResolvedRun {
    kind: Quotient,
    params: serde_json::Value,
    grid: GridSpec,
    init: String,
    optimizer: gnx_core::solver::OptimizerConfig,
    precision: &'static str,
    threads: usize,
}

#[derive(Clone, Copy, Debug, Serialize)]
struct GridSpec {
    d: usize,
    n: usize,
    length: f64,
}

#[derive(Serialize)]
struct OptimizeReport<'a> {
    config: &'a ResolvedRun,
    theta: Option<f64>,
    class: &'static str,
    best_quotient: f64,
    iters_used: usize,
    converged: bool,
    final_grad_norm: f64,
    final_gauge_residuals: [f64; 2],
    quotient_history: Vec<f64>,
    gauge_residuals: &'a [[f64; 2]],
    recenterings: &'a [gnx_core::solver::AppliedShift],
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::domain(format!("missing --{flag}")))
}

enum Params {
    Gn(GnParams),
    Riesz(RieszParams),
}

fn params(kind: Quotient, run: &RunConfig, d: usize) -> Result<(Params, serde_json::Value), CliError> {
    let s = need(run.s, "s")?;
    let p = need(run.p, "p")?;
    Ok(match kind {
        Quotient::Gn => {
            let (r, q) = (need(run.r, "r")?, need(run.q, "q")?);
            let params = GnParams::new(d, r, s, p, q)?;
            (Params::Gn(params), serde_json::json!({ "d": d, "r": r, "s": s, "p": p, "q": q }))
        }
        Quotient::Riesz => {
            let lambda = need(run.lambda, "lambda")?;
            let params = RieszParams::new(d, s, lambda, p)?;
            (Params::Riesz(params), serde_json::json!({ "d": d, "s": s, "lambda": lambda, "p": p }))
        }
    })
}

fn load_init<T: Real>(spec: &str, run: &RunConfig) -> Result<(Init<T>, Grid), CliError> {
    if let Some(path) = spec.strip_prefix("file:") {
        let f: Field<T> = load_field(path)?;
        let grid = *f.grid();
        let length = grid.lengths()[0];
        let clash = run.d.is_some_and(|d| d != grid.dim())
            || run.n.is_some_and(|n| n != grid.n())
            || run.length.is_some_and(|l| (l - length).abs() > 1e-12 * length)
            || !grid.is_isotropic();
        if clash {
            return Err(CliError::domain(format!("grid of {path} does not match the grid flags")));
        }
        return Ok((Init::Field(f), grid));
    }
    let grid = Grid::new(need(run.d, "d")?, need(run.n, "n")?, need(run.length, "length")?)?;
    let init = match spec {
        "gaussian" => Init::Profile(ProfileKind::Gaussian { sigma: 1.0 }),
        "random" => Init::Random,
        other => {
            return Err(CliError::domain(format!(
                "unknown --init {other:?}; expected gaussian, random or file:PATH"
            )))
        }
    };
    Ok((init, grid))
}

fn execute<T: Real>(kind: Quotient, run: &RunConfig, threads: usize) -> Result<f64, CliError> {
    let init_spec = run.init.clone().unwrap_or_else(|| "gaussian".into());
    let (init, grid) = load_init::<T>(&init_spec, run)?;
    let (params, params_json) = params(kind, run, grid.dim())?;
    let cfg = run.optimizer();
    let resolved = ResolvedRun {
        kind,
        params: params_json,
        grid: GridSpec {
            d: grid.dim(),
            n: grid.n(),
            length: grid.lengths()[0],
        },
        init: init_spec,
        optimizer: cfg,
        precision: if std::mem::size_of::<T>() == 4 { "f32" } else { "f64" },
        threads,
    };
    let (report, theta, class): (OptimizationReport<T>, Option<f64>, _) = match params {
        Params::Gn(p) => (optimize_gn(&p, &grid, &cfg, init)?, Some(p.theta), p.classify()),
        Params::Riesz(p) => (optimize_riesz(&p, &grid, &cfg, init)?, p.theta, p.classify()),
    };
    let best = report.best_quotient.as_f64();
    let body = OptimizeReport {
        config: &resolved,
        theta,
        class: class.name(),
        best_quotient: best,
        iters_used: report.iters_used,
        converged: report.converged,
        final_grad_norm: report.final_grad_norm,
        final_gauge_residuals: *report.gauge_residuals.last().expect("history is never empty"),
        quotient_history: report.quotient_history.iter().map(|v| v.as_f64()).collect(),
        gauge_residuals: &report.gauge_residuals,
        recenterings: &report.recenterings,
    };
    let json = to_json("optimize", &body);
    match &run.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| CliError::io(format!("{}: {e}", dir.display())))?;
            write_file(&dir.join("report.json"), json.as_bytes())?;
            save_field(dir.join("profile.gnfld"), &report.profile)
                .map_err(|e| CliError::io(format!("{}: {e}", dir.display())))?;
            write_file(&dir.join("profile.csv"), profile_csv(&report.profile).as_bytes())?;
        }
        None => print!("{json}"),
    }
    Ok(best)
}

fn run_one(kind: Quotient, run: &RunConfig, threads: usize) -> Result<f64, CliError> {
    match run.precision.as_deref().unwrap_or("f64") {
        "f64" => execute::<f64>(kind, run, threads),
        "f32" => execute::<f32>(kind, run, threads),
        other => Err(CliError::domain(format!("unknown --precision {other:?}; expected f64 or f32"))),
    }
}

#[derive(Serialize)]
struct SweepEntry {
    job: usize,
    out: Option<PathBuf>,
    best_quotient: Option<f64>,
    exit_code: u8,
    error: Option<String>,
}

pub fn optimize(args: OptimizeArgs, threads_flag: Option<usize>) -> Result<(), CliError> {
    let base = match &args.config {
        Some(path) => args.run.clone().over(RunConfig::load(path)?),
        None => args.run.clone(),
    };
    let threads = resolve_threads(threads_flag, base.threads)?;
    let Some(sweep) = &args.sweep else {
        return with_threads(Some(threads), None, || run_one(args.kind, &base, threads).map(|_| ()));
    };
    let jobs = RunConfig::load_sweep(sweep)?;
    if jobs.is_empty() {
        return Err(CliError::domain("sweep file lists no runs"));
    }
    let kind = args.kind;
    let entries: Vec<SweepEntry> = with_threads(Some(threads), None, || {
        Ok(jobs
            .into_par_iter()
            .enumerate()
            .map(|(k, job)| {
                let mut run = job.over(base.clone());
                if run.out == base.out {
                    run.out = base.out.as_ref().map(|dir| dir.join(format!("job-{k:03}")));
                }
                let result = run_one(kind, &run, threads);
                SweepEntry {
                    job: k,
                    out: run.out.clone(),
                    best_quotient: result.as_ref().ok().copied(),
                    exit_code: result.as_ref().err().map_or(0, |e| e.code),
                    error: result.err().map(|e| e.message),
                }
            })
            .collect())
    })?;
    if base.out.is_some() {
        print!("{}", to_json("sweep", serde_json::json!({ "jobs": &entries })));
    }
    match entries.iter().map(|e| e.exit_code).max() {
        Some(0) | None => Ok(()),
        Some(code) => Err(CliError {
            code,
            message: format!("{} of {} sweep jobs failed", entries.iter().filter(|e| e.exit_code != 0).count(), entries.len()),
        }),
    }
}

#[derive(Serialize)]
struct EnergyReport {
    field: PathBuf,
    lambda: f64,
    fourier: Option<f64>,
    direct: Option<f64>,
    relative_difference: Option<f64>,
}

pub fn energy(args: EnergyArgs) -> Result<(), CliError> {
    let f: Field<f64> = load_field(&args.field)?;
    let kernel = RieszKernel::new(f.grid(), args.lambda)?;
    let fourier = matches!(args.method, EnergyMethod::Fourier | EnergyMethod::Both).then(|| kernel.energy(&f));
    let direct = match args.method {
        EnergyMethod::Direct | EnergyMethod::Both => Some(kernel.energy_direct(&f)?),
        EnergyMethod::Fourier => None,
    };
    let relative_difference = match (fourier, direct) {
        (Some(a), Some(b)) if a == b => Some(0.0),
        (Some(a), Some(b)) => Some((a - b).abs() / a.abs().max(b.abs())),
        _ => None,
    };
    let report = EnergyReport {
        field: args.field,
        lambda: args.lambda,
        fourier,
        direct,
        relative_difference,
    };
    print!("{}", to_json("energy", &report));
    Ok(())
}

pub fn demo(args: DemoArgs) -> Result<(), CliError> {
    let DemoArgs::Endpoint { deltas } = args;
    let rows = endpoint_demo(&deltas)?;
    let mut csv = String::from("delta,closed_form,grid_value,abs_diff\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            r.delta,
            r.closed_form,
            r.grid_value,
            (r.closed_form - r.grid_value).abs()
        ));
    }
    print!("{csv}");
    if let Some(r) = rows.iter().find(|r| (r.closed_form - r.grid_value).abs() > ENDPOINT_TOL) {
        return Err(CliError::verify(format!("δ = {}: grid value off by more than {ENDPOINT_TOL}", r.delta)));
    }
    if !endpoint_table_is_monotone(&rows) {
        return Err(CliError::verify("quotients do not increase toward 1 as δ decreases"));
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyReport<B: Serialize> {
    name: &'static str,
    pass: bool,
    #[serde(flatten)]
    details: B,
}

fn finish<B: Serialize>(name: &'static str, pass: bool, details: B) -> Result<(), CliError> {
    print!("{}", to_json("verify", VerifyReport { name, pass, details }));
    if pass {
        Ok(())
    } else {
        Err(CliError::verify(format!("verify {name} failed")))
    }
}

/// Gaussian pair in d = 3 on (3, 48, 32) with λ = 1 and the Lebesgue exponent
/// `2p = 4` of the Coulomb tuple `(3, 1, 1, 2)`.
fn bl_default() -> Result<BLReport, CliError> {
    let grid = Grid::new(3, 48, 32.0)?;
    let f: Field<f64> = make_profile(&grid, ProfileKind::Gaussian { sigma: 1.0 })?;
    Ok(bl_nonlocal_verify(&f, &f, &[4.0, 6.0, 8.0], 1.0, 4.0)?)
}

/// Corpus maxima on (3, 32, 16) and on the doubled grid.
fn corpus_maxima(ratio: impl Fn(&[Field<f64>]) -> gnx_core::Result<Vec<f64>>) -> Result<Vec<f64>, CliError> {
    let coarse = Grid::new(3, 32, 16.0)?;
    [coarse, coarse.refined(2)?]
        .iter()
        .map(|g| {
            let corpus = standard_corpus(g)?;
            let values = ratio(&corpus)?;
            Ok(values.into_iter().fold(f64::NEG_INFINITY, f64::max))
        })
        .collect()
}

fn stable(maxima: &[f64]) -> bool {
    maxima.iter().all(|v| v.is_finite() && *v > 0.0) && (maxima[0] / maxima[1] - 1.0).abs() <= 0.1
}

pub fn verify(args: VerifyArgs) -> Result<(), CliError> {
    match args.name {
        Verifier::Pqr => {
            let sweep = pqr_sweep(args.trials, args.seed);
            let details = serde_json::json!({
                "trials": args.trials, "seed": args.seed,
                "violations": sweep.violations, "min_slack_ratio": sweep.min_slack,
            });
            finish("pqr", sweep.violations == 0, details)
        }
        Verifier::Bl => {
            let r = bl_default()?;
            let slope = r.decay_slope();
            let window = -r.lambda - 0.5..=-r.lambda + 0.5;
            let pass = r.residuals_decreasing()
                && slope.is_some_and(|s| window.contains(&s))
                && r.cross_term_bounded()
                && r.lp_residuals_decreasing();
            let details = serde_json::json!({ "report": r, "decay_slope": slope });
            finish("bl", pass, details)
        }
        Verifier::CauchySchwarz => {
            let grid = Grid::new(2, 32, 10.0)?;
            let sweep = cauchy_schwarz_sweep(&grid, 1.0, args.trials, args.seed)?;
            finish("cauchy-schwarz", sweep.violations == 0, sweep)
        }
        Verifier::RefinedSobolev => {
            let maxima = corpus_maxima(|c| refined_sobolev_ratios(c, 1.0))?;
            let details = serde_json::json!({ "d": 3, "s": 1.0, "grids": [[3, 32, 16.0], [3, 64, 16.0]], "max_ratio": maxima });
            finish("refined-sobolev", stable(&maxima), details)
        }
        Verifier::IntermGn => {
            let maxima = corpus_maxima(|c| interm_gn_ratios(c, 1.0, 1.0, 2.0))?;
            let details = serde_json::json!({
                "d": 3, "s": 1.0, "lambda": 1.0, "p": 2.0,
                "grids": [[3, 32, 16.0], [3, 64, 16.0]], "max_ratio": maxima,
            });
            finish("interm-gn", stable(&maxima), details)
        }
    }
}

