mod common;

use std::time::Instant;

use gnx_core::solver::{
    endpoint_closed_form, endpoint_demo, endpoint_table_is_monotone, optimize_gn, optimize_riesz, recenter, Init,
    OptimizerConfig,
};
use gnx_core::spectral::{make_profile, translate, Field, ProfileKind};
use gnx_core::{functionals::gn_quotient, Error, GnParams, Grid, RieszParams};
use proptest::prelude::*;

const WEINSTEIN: f64 = 0.871685;

fn weinstein() -> (GnParams, Grid) {
    (GnParams::new(1, 0.0, 1.0, 2.0, 4.0).unwrap(), Grid::new(1, 512, 60.0).unwrap())
}

#[test]
fn weinstein_from_gaussian() {
    let (params, grid) = weinstein();
    let t = Instant::now();
    let r = optimize_gn::<f64>(&params, &grid, &OptimizerConfig::default(), Init::Profile(ProfileKind::Gaussian { sigma: 1.0 }))
        .unwrap();
    println!("iters {} q {} grad {} in {:?}", r.iters_used, r.best_quotient, r.final_grad_norm, t.elapsed());
    assert!(r.converged);
    assert!((r.best_quotient - WEINSTEIN).abs() <= 1e-3);
    assert!(r.quotient_history.windows(2).all(|w| w[1] >= w[0]));
    let (_, _, _, err) = common::fit_sech(&r.profile);
    assert!(err <= 5e-2, "{err}");
    let last = r.gauge_residuals.last().unwrap();
    assert!(last[0] <= 1e-10);
}

#[test]
fn weinstein_from_random() {
    let (params, grid) = weinstein();
    for seed in [1, 2] {
        let cfg = OptimizerConfig { seed, ..Default::default() };
        let t = Instant::now();
        let r = optimize_gn::<f64>(&params, &grid, &cfg, Init::Random).unwrap();
        println!("seed {seed}: iters {} q {} grad {} in {:?}", r.iters_used, r.best_quotient, r.final_grad_norm, t.elapsed());
        assert!(r.converged);
        assert!((r.best_quotient - WEINSTEIN).abs() <= 1e-3);
        let (_, _, _, err) = common::fit_sech(&r.profile);
        assert!(err <= 5e-2, "{err}");
    }
}

#[test]
fn weinstein_from_exact_sech() {
    let (params, grid) = weinstein();
    let f: Field<f64> = make_profile(&grid, ProfileKind::Sech { scale: 1.0 }).unwrap();
    let r = optimize_gn(&params, &grid, &OptimizerConfig::default(), Init::Field(f)).unwrap();
    assert!(r.quotient_history[0] >= 0.8716);
    assert!(r.converged);
    assert!(r.iters_used <= 50, "{}", r.iters_used);
}

#[test]
fn runs_are_deterministic() {
    let (params, grid) = weinstein();
    let cfg = OptimizerConfig { seed: 9, max_iters: 40, ..Default::default() };
    let a = optimize_gn::<f64>(&params, &grid, &cfg, Init::Random).unwrap();
    let b = optimize_gn::<f64>(&params, &grid, &cfg, Init::Random).unwrap();
    assert_eq!(a.quotient_history, b.quotient_history);
    assert_eq!(a.profile, b.profile);
}

#[test]
fn endpoint_regimes_are_rejected() {
    let grid = Grid::new(1, 64, 20.0).unwrap();
    let gp = GnParams::new(1, 1.0, 2.0, 2.0, 2.0).unwrap();
    let r = optimize_gn::<f64>(&gp, &grid, &OptimizerConfig::default(), Init::Random);
    assert!(matches!(r, Err(Error::NotAttained(_))));
    let grid = Grid::new(3, 8, 8.0).unwrap();
    for p in [1.5, 3.0] {
        let rp = RieszParams::new(3, 1.0, 1.0, p).unwrap();
        let r = optimize_riesz::<f64>(&rp, &grid, &OptimizerConfig::default(), Init::Random);
        assert!(matches!(r, Err(Error::NotAttained(_))), "p = {p}");
    }
}

#[test]
fn config_is_validated() {
    let (params, grid) = weinstein();
    for cfg in [
        OptimizerConfig { max_iters: 0, ..Default::default() },
        OptimizerConfig { tol: 0.0, ..Default::default() },
        OptimizerConfig { step0: -1.0, ..Default::default() },
        OptimizerConfig { backtrack: 1.0, ..Default::default() },
    ] {
        assert!(optimize_gn::<f64>(&params, &grid, &cfg, Init::Random).is_err());
    }
    let zero = Field::<f64>::zeros(grid);
    assert!(matches!(
        optimize_gn(&params, &grid, &OptimizerConfig::default(), Init::Field(zero)),
        Err(Error::ZeroField)
    ));
}

#[test]
fn riesz_coulomb_case_converges() {
    let params = RieszParams::new(3, 1.0, 1.0, 2.0).unwrap();
    let mut best = Vec::new();
    for (n, l) in [(32, 16.0), (48, 24.0)] {
        let grid = Grid::new(3, n, l).unwrap();
        let t = Instant::now();
        let r = optimize_riesz::<f64>(&params, &grid, &OptimizerConfig::default(), Init::Profile(ProfileKind::Gaussian { sigma: 1.0 }))
            .unwrap();
        println!("n={n}: iters {} q {} grad {} in {:?}", r.iters_used, r.best_quotient, r.final_grad_norm, t.elapsed());
        assert!(r.converged);
        assert!(r.final_grad_norm <= 1e-4);
        assert!(r.quotient_history.windows(2).all(|w| w[1] >= w[0]));
        best.push(r.best_quotient);
    }
    assert!((best[0] - best[1]).abs() <= 0.02 * best[1], "{best:?}");
}

#[test]
fn recentering_preserves_the_quotient() {
    let (params, grid) = weinstein();
    let h = grid.spacing(0);
    let f: Field<f64> = make_profile(&grid, ProfileKind::Sech { scale: 1.3 }).unwrap();
    let f = translate(&f, &[37.0 * h]);
    let r = recenter(&f, 1.0).unwrap();
    assert!((r.center[0] - 37.0 * h).abs() < 1e-9);
    let a = gn_quotient(&f, &params).unwrap();
    let b = gn_quotient(&r.field, &params).unwrap();
    assert!((a - b).abs() <= 1e-12);
}

#[test]
fn endpoint_demo_reproduces_the_closed_form() {
    let t = Instant::now();
    let rows = endpoint_demo(&[0.25, 0.125, 1.0 / 16.0, 1.0 / 32.0]).unwrap();
    println!("{rows:?} in {:?}", t.elapsed());
    assert!((rows[0].closed_form - 0.980877).abs() < 1e-5);
    assert!((rows[1].closed_form - 0.994897).abs() < 1e-5);
    for r in &rows {
        assert!((r.grid_value - r.closed_form).abs() < 1e-4, "{r:?}");
    }
    assert!(endpoint_table_is_monotone(&rows));
    assert!(rows[3].grid_value > rows[0].grid_value);
    assert!(endpoint_demo(&[0.0]).is_err());
    assert!(endpoint_closed_form(1e-4) < 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10_000, failure_persistence: None, ..ProptestConfig::default() })]

    /// `(1 + x)^α (1 + y)^β ≥ 1 + x^α y^β` for `x, y ≥ 0`, `α, β > 0`, `α + β ≥ 1`.
    #[test]
    fn elementary_inequality(x in 0.0f64..50.0, y in 0.0f64..50.0, alpha in 0.01f64..3.0, extra in 0.0f64..3.0) {
        let beta = (1.0 - alpha).max(0.01) + extra;
        let lhs = (1.0 + x).powf(alpha) * (1.0 + y).powf(beta);
        let rhs = 1.0 + x.powf(alpha) * y.powf(beta);
        prop_assert!(lhs >= rhs * (1.0 - 1e-12), "x={x} y={y} α={alpha} β={beta}");
    }
}
