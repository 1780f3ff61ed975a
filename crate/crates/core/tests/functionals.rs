use std::f64::consts::PI;

use gnx_core::functionals::{
    gn_gradient, gn_quotient, riesz_energy, riesz_energy_gradient, riesz_gradient, riesz_quotient, RieszKernel,
    RieszMethod,
};
use gnx_core::spectral::{make_profile, random_field, translate, Field, ProfileKind};
use gnx_core::{Complex, Error, GnParams, Grid, RieszParams};
use proptest::prelude::*;

fn fd_error(log_q: impl Fn(&Field<f64>) -> f64, f: &Field<f64>, g: &Field<f64>, dir: &Field<f64>) -> f64 {
    let analytic = dir.inner(g).unwrap().re;
    [1e-3, 1e-4, 1e-5]
        .iter()
        .map(|&eps| {
            let plus = log_q(&f.add_scaled(dir, eps).unwrap());
            let minus = log_q(&f.add_scaled(dir, -eps).unwrap());
            let fd = (plus - minus) / (2.0 * eps);
            (analytic - fd).abs() / fd.abs().max(analytic.abs())
        })
        .fold(f64::INFINITY, f64::min)
}

fn complex_bump(grid: Grid, seed: u64) -> Field<f64> {
    let base: Field<f64> = make_profile(&grid, ProfileKind::Gaussian { sigma: 1.3 }).unwrap();
    let noise: Field<f64> = make_profile(&grid, ProfileKind::Random { seed }).unwrap();
    base.add(&noise.scaled_complex(Complex::new(0.1, 0.05))).unwrap()
}

#[test]
fn gn_gradient_matches_finite_differences() {
    let cases = [
        (Grid::new(1, 128, 20.0).unwrap(), GnParams::new(1, 0.0, 1.0, 2.0, 4.0).unwrap()),
        (Grid::new(1, 128, 20.0).unwrap(), GnParams::new(1, 0.5, 1.5, 3.0, 4.0).unwrap()),
        (Grid::new(2, 32, 12.0).unwrap(), GnParams::new(2, 0.5, 1.0, 2.0, 3.0).unwrap()),
    ];
    for (grid, params) in cases {
        let f = complex_bump(grid, 11);
        let g = gn_gradient(&f, &params).unwrap();
        for seed in 0..5 {
            let dir: Field<f64> = random_field(&grid, 100 + seed, 2.0, Some(6));
            let err = fd_error(|u| gn_quotient(u, &params).unwrap().ln(), &f, &g, &dir);
            assert!(err <= 1e-4, "{params:?} seed {seed}: {err}");
        }
    }
}

#[test]
fn riesz_gradient_matches_finite_differences() {
    let grid = Grid::new(3, 16, 10.0).unwrap();
    let params = RieszParams::new(3, 1.0, 1.0, 2.0).unwrap();
    let f = complex_bump(grid, 5);
    let g = riesz_gradient(&f, &params).unwrap();
    for seed in 0..5 {
        let dir: Field<f64> = random_field(&grid, 200 + seed, 2.0, Some(4));
        let err = fd_error(|u| riesz_quotient(u, &params).unwrap().ln(), &f, &g, &dir);
        assert!(err <= 1e-4, "seed {seed}: {err}");
    }
}

#[test]
fn riesz_energy_variation_alone() {
    let grid = Grid::new(2, 32, 10.0).unwrap();
    let kernel = RieszKernel::new(&grid, 1.2).unwrap();
    let f = complex_bump(grid, 3);
    let g = riesz_energy_gradient(&f, &kernel).unwrap();
    for seed in 0..5 {
        let dir: Field<f64> = random_field(&grid, 300 + seed, 2.0, Some(5));
        let analytic = dir.inner(&g).unwrap().re;
        let eps = 1e-4;
        let fd = (kernel.energy(&f.add_scaled(&dir, eps).unwrap()) - kernel.energy(&f.add_scaled(&dir, -eps).unwrap()))
            / (2.0 * eps);
        assert!((analytic - fd).abs() <= 1e-4 * fd.abs(), "{analytic} vs {fd}");
    }
}

#[test]
fn derivative_along_the_field_vanishes() {
    let grid = Grid::new(1, 128, 20.0).unwrap();
    let f = complex_bump(grid, 2);
    let gp = GnParams::new(1, 0.0, 1.0, 2.0, 4.0).unwrap();
    let g = gn_gradient(&f, &gp).unwrap();
    let scale = g.l2_norm() * f.l2_norm();
    assert!(f.inner(&g).unwrap().re.abs() <= 1e-10 * scale.max(1.0));

    let grid = Grid::new(3, 16, 10.0).unwrap();
    let f = complex_bump(grid, 2);
    let rp = RieszParams::new(3, 1.0, 1.0, 2.0).unwrap();
    let g = riesz_gradient(&f, &rp).unwrap();
    let scale = g.l2_norm() * f.l2_norm();
    assert!(f.inner(&g).unwrap().re.abs() <= 1e-10 * scale.max(1.0));
}

#[test]
fn quotient_invariances() {
    let grid = Grid::new(1, 256, 40.0).unwrap();
    let params = GnParams::new(1, 0.0, 1.0, 2.0, 4.0).unwrap();
    let f = complex_bump(grid, 4);
    let q = gn_quotient(&f, &params).unwrap();
    let scaled = gn_quotient(&f.scaled_complex(Complex::new(-1.7, 2.2)), &params).unwrap();
    assert!((q - scaled).abs() <= 1e-10 * q);
    let h = grid.spacing(0);
    let moved = gn_quotient(&translate(&f, &[7.0 * h]), &params).unwrap();
    assert!((q - moved).abs() <= 1e-12 * q);

    let grid = Grid::new(3, 16, 10.0).unwrap();
    let rp = RieszParams::new(3, 1.0, 1.0, 2.0).unwrap();
    let f = complex_bump(grid, 4);
    let a = riesz_quotient(&f, &rp).unwrap();
    let b = riesz_quotient(&f.scaled(2.5), &rp).unwrap();
    assert!((a - b).abs() <= 1e-10 * a);
}

#[test]
fn gaussian_dilation_family() {
    let grid = Grid::new(1, 512, 80.0).unwrap();
    let params = GnParams::new(1, 0.0, 1.0, 2.0, 4.0).unwrap();
    let values: Vec<f64> = [0.5, 1.0, 2.0]
        .iter()
        .map(|&sigma| {
            let f: Field<f64> = make_profile(&grid, ProfileKind::Gaussian { sigma }).unwrap();
            gn_quotient(&f, &params).unwrap()
        })
        .collect();
    let spread = values.iter().cloned().fold(f64::MIN, f64::max) - values.iter().cloned().fold(f64::MAX, f64::min);
    assert!(spread <= 1e-6, "{values:?}");
}

#[test]
fn closed_form_quotients() {
    // Gaussian, r = 1, s = 2, p = q = 2 → 3^{−1/4}
    let grid = Grid::new(1, 512, 40.0).unwrap();
    let params = GnParams::new(1, 1.0, 2.0, 2.0, 2.0).unwrap();
    let f: Field<f64> = make_profile(&grid, ProfileKind::Gaussian { sigma: 1.0 }).unwrap();
    let q = gn_quotient(&f, &params).unwrap();
    assert!((q - 3f64.powf(-0.25)).abs() < 1e-4, "{q}");

    // sech, Weinstein exponents → (4/3)^{1/4} / (2^{3/8} (2/3)^{1/8})
    let params = GnParams::new(1, 0.0, 1.0, 2.0, 4.0).unwrap();
    let f: Field<f64> = make_profile(&grid, ProfileKind::Sech { scale: 1.0 }).unwrap();
    let q = gn_quotient(&f, &params).unwrap();
    assert!((q - 0.871685).abs() < 1e-4, "{q}");

    // endpoint bump family
    let grid = Grid::new(1, 4096, 1024.0 * PI).unwrap();
    let params = GnParams::new(1, 1.0, 2.0, 2.0, 2.0).unwrap();
    let delta = 0.25f64;
    let f: Field<f64> = make_profile(&grid, ProfileKind::FourierBump { delta }).unwrap();
    let q = gn_quotient(&f, &params).unwrap();
    let exact = ((1.0 + delta * delta / 3.0) / (1.0 + 2.0 * delta * delta + delta.powi(4) / 5.0).sqrt()).sqrt();
    assert!((q - exact).abs() < 2e-4, "{q} vs {exact}");
}

#[test]
fn riesz_quotient_grid_convergence_and_errors() {
    let rp = RieszParams::new(3, 1.0, 1.0, 2.0).unwrap();
    let values: Vec<f64> = [(32, 16.0), (48, 24.0)]
        .iter()
        .map(|&(n, l)| {
            let grid = Grid::new(3, n, l).unwrap();
            let f: Field<f64> = make_profile(&grid, ProfileKind::Gaussian { sigma: 1.0 }).unwrap();
            riesz_quotient(&f, &rp).unwrap()
        })
        .collect();
    assert!(values[0] > 0.0);
    assert!((values[0] - values[1]).abs() <= 0.01 * values[1], "{values:?}");

    let grid = Grid::new(3, 8, 4.0).unwrap();
    assert!(matches!(riesz_quotient(&Field::<f64>::zeros(grid), &rp), Err(Error::ZeroField)));
    let gp = GnParams::new(3, 1.0, 2.0, 2.0, 2.0).unwrap();
    assert!(matches!(gn_quotient(&Field::<f64>::zeros(grid), &gp), Err(Error::ZeroField)));
}

#[test]
fn fourier_and_direct_energies_agree() {
    let grid = Grid::new(3, 16, 10.0).unwrap();
    let f: Field<f64> = make_profile(&grid, ProfileKind::Random { seed: 1 }).unwrap();
    let a = riesz_energy(&f, 1.0, RieszMethod::Fourier).unwrap();
    let b = riesz_energy(&f, 1.0, RieszMethod::Direct).unwrap();
    assert!((a - b).abs() <= 1e-3 * b);
}

#[test]
fn direct_sum_is_thread_count_independent() {
    let grid = Grid::new(2, 24, 8.0).unwrap();
    let f: Field<f64> = make_profile(&grid, ProfileKind::Random { seed: 4 }).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| riesz_energy(&f, 1.0, RieszMethod::Direct).unwrap())
    };
    let one = run(1);
    for t in [2, 3, 5] {
        assert!((run(t) - one).abs() <= 1e-13 * one);
    }
}

#[test]
fn doubled_grid_kernel_is_positive() {
    for (d, n, lambda) in [(1, 64, 0.5), (2, 32, 1.0), (3, 16, 1.0), (3, 16, 2.5)] {
        let grid = Grid::new(d, n, 10.0).unwrap();
        let k = RieszKernel::<f64>::new(&grid, lambda).unwrap();
        assert!(k.min_circulant_eigenvalue() > 0.0, "d={d} λ={lambda}: {}", k.min_circulant_eigenvalue());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn energy_is_nonnegative(seed in 0u64..10_000, decay in 0.0f64..3.0) {
        let grid = Grid::new(2, 16, 6.0).unwrap();
        let f: Field<f64> = random_field(&grid, seed, decay, None);
        prop_assert!(riesz_energy(&f, 1.0, RieszMethod::Fourier).unwrap() >= 0.0);
    }

    #[test]
    fn cauchy_schwarz_for_the_kernel(seed in 0u64..100_000) {
        let grid = Grid::new(2, 16, 10.0).unwrap();
        let k = RieszKernel::<f64>::new(&grid, 1.0).unwrap();
        let g: Field<f64> = random_field(&grid, seed, 1.0, None);
        let h: Field<f64> = random_field(&grid, seed + 1_000_000, 1.0, None);
        let lhs = k.bilinear(g.values(), h.values()).norm();
        let gg = k.bilinear(g.values(), g.values()).re;
        let hh = k.bilinear(h.values(), h.values()).re;
        prop_assert!(lhs <= (gg * hh).sqrt() * (1.0 + 1e-9));
    }
}
