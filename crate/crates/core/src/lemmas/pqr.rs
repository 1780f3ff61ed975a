//! Superlevel-set bound from `L^p`, `L^q`, `L^r` control.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Complex, Real};
use crate::spectral::{Field, Grid};

/// Constants of the pqr bound together with the inputs they were built from.
///
/// If `‖f‖_p^p ≤ α`, `‖f‖_q^q ≥ β` and `‖f‖_r^r ≤ γ`, then
/// `|{|f| > η}| ≥ c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PqrConstants {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub eta: f64,
    /// Upper truncation level `M`.
    pub m: f64,
    pub c: f64,
}

/// `η = (β/4α)^{1/(q−p)}`, `M = (4γ/β)^{1/(r−q)}`, `c = β/(2M^q)`.
pub fn pqr_constants(p: f64, q: f64, r: f64, alpha: f64, beta: f64, gamma: f64) -> Result<PqrConstants> {
    if r.is_infinite() {
        return Err(Error::InvalidParameter("r = ∞ is not supported".into()));
    }
    if !(p >= 1.0 && p < q && q < r && r.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "need 1 ≤ p < q < r < ∞, got p = {p}, q = {q}, r = {r}"
        )));
    }
    for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter(format!("{name} = {v} must be positive")));
        }
    }
    let eta = (beta / (4.0 * alpha)).powf(1.0 / (q - p));
    let m = (4.0 * gamma / beta).powf(1.0 / (r - q));
    let c = beta / (2.0 * m.powf(q));
    Ok(PqrConstants {
        p,
        q,
        r,
        alpha,
        beta,
        gamma,
        eta,
        m,
        c,
    })
}

/// `h^d · #{i : |f_i| > η}`.
pub fn superlevel_measure<T: Real>(f: &Field<T>, eta: f64) -> f64 {
    let phys = f.to_physical();
    let count = phys.values().iter().filter(|v| v.norm().as_f64() > eta).count();
    count as f64 * f.grid().cell_volume()
}

/// `h^d Σ |v_i|^p` for a step function given by its cell values.
fn step_power(values: &[f64], p: f64, cell: f64) -> f64 {
    values.iter().map(|v| v.abs().powf(p)).sum::<f64>() * cell
}

/// One generated case of the pqr sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PqrCase {
    pub seed: u64,
    pub constants: PqrConstants,
    pub measure: f64,
}

impl PqrCase {
    /// `measure / c`; at least 1 when the bound holds.
    pub fn slack(&self) -> f64 {
        self.measure / self.constants.c
    }
}

/// Outcome of [`pqr_sweep`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PqrSweep {
    pub cases: Vec<PqrCase>,
    pub violations: usize,
    pub min_slack: f64,
}

/// Random step function on a 1D grid and exponents/bounds it satisfies.
///
/// Exponents are drawn with `1 ≤ p < q < r`, the function has up to eight
/// plateaus with log-uniform heights, and `(α, β, γ)` are its measured norms
/// loosened by random margins of up to 50%.
pub fn feasible_case(seed: u64) -> (Field<f64>, PqrConstants) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = Grid::new(1, 512, 16.0).expect("valid grid");
    let h = grid.cell_volume();
    let n = grid.n();
    let p = rng.random_range(1.0..3.0);
    let q = p + rng.random_range(0.2..2.0);
    let r = q + rng.random_range(0.2..3.0);

    let mut values = vec![0.0; n];
    let plateaus = rng.random_range(1..=8);
    for _ in 0..plateaus {
        let start = rng.random_range(0..n);
        let len = rng.random_range(1..=n / 8);
        let height = 10f64.powf(rng.random_range(-2.0..1.0));
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        for v in values.iter_mut().skip(start).take(len) {
            *v = sign * height;
        }
    }
    let amplitude = 10f64.powf(rng.random_range(-1.0..1.0));
    values.iter_mut().for_each(|v| *v *= amplitude);

    let mut margin = || 1.0 + rng.random_range(0.0..0.5);
    let alpha = step_power(&values, p, h) * margin();
    let beta = step_power(&values, q, h) / margin();
    let gamma = step_power(&values, r, h) * margin();
    let constants = pqr_constants(p, q, r, alpha, beta, gamma).expect("generated exponents are ordered");
    let field = Field::new(
        grid,
        values.into_iter().map(|v| Complex::new(v, 0.0)).collect(),
        crate::spectral::Space::Physical,
    )
    .expect("sized to grid");
    (field, constants)
}

/// Checks the superlevel bound on `trials` generated cases with seeds
/// `seed, seed + 1, …`.
pub fn pqr_sweep(trials: usize, seed: u64) -> PqrSweep {
    let cases: Vec<PqrCase> = (0..trials as u64)
        .into_par_iter()
        .map(|k| {
            let case_seed = seed.wrapping_add(k);
            let (f, constants) = feasible_case(case_seed);
            PqrCase {
                seed: case_seed,
                constants,
                measure: superlevel_measure(&f, constants.eta),
            }
        })
        .collect();
    let violations = cases.iter().filter(|c| c.measure < c.constants.c).count();
    let min_slack = cases.iter().map(PqrCase::slack).fold(f64::INFINITY, f64::min);
    PqrSweep {
        cases,
        violations,
        min_slack,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{make_profile, ProfileKind};
    use std::f64::consts::PI;

    #[test]
    fn worked_constants() {
        let k = pqr_constants(1.0, 2.0, 3.0, 1.0, 2.0, 4.0).unwrap();
        assert!((k.eta - 0.5).abs() < 1e-15);
        assert!((k.m - 8.0).abs() < 1e-13);
        assert!((k.c - 1.0 / 64.0).abs() < 1e-15);
        // 2·χ_[0,1/2] on a fine grid
        let g = Grid::new(1, 1024, 4.0).unwrap();
        let f: Field<f64> = Field::from_real_fn(g, |x| if (0.0..0.5).contains(&x[0]) { 2.0 } else { 0.0 });
        assert!((superlevel_measure(&f, k.eta) - 0.5).abs() < 1e-12);

        let k = pqr_constants(1.0, 2.0, 3.0, 1.0, 1.0, 1.0).unwrap();
        assert!((k.eta - 0.25).abs() < 1e-15);
        assert!((k.c - 1.0 / 32.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_exponents() {
        assert!(pqr_constants(1.0, 2.0, f64::INFINITY, 1.0, 1.0, 1.0).is_err());
        assert!(pqr_constants(2.0, 2.0, 3.0, 1.0, 1.0, 1.0).is_err());
        assert!(pqr_constants(0.5, 2.0, 3.0, 1.0, 1.0, 1.0).is_err());
        assert!(pqr_constants(1.0, 2.0, 3.0, 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn superlevel_examples() {
        let g = Grid::new(1, 8, 2.0 * PI).unwrap();
        let one: Field<f64> = Field::from_real_fn(g, |_| 1.0);
        assert!((superlevel_measure(&one, 0.5) - 2.0 * PI).abs() < 1e-12);
        assert_eq!(superlevel_measure(&one, 2.0), 0.0);

        let g = Grid::new(1, 512, 40.0).unwrap();
        let f: Field<f64> = make_profile(&g, ProfileKind::Gaussian { sigma: 1.0 }).unwrap();
        let m = superlevel_measure(&f, (-0.5f64).exp());
        assert!((m - 2.0).abs() <= g.spacing(0), "{m}");
    }

    #[test]
    fn generated_cases_meet_the_hypotheses() {
        for seed in 0..20 {
            let (f, k) = feasible_case(seed);
            let h = f.grid().cell_volume();
            let vals: Vec<f64> = f.values().iter().map(|v| v.re).collect();
            assert!(step_power(&vals, k.p, h) <= k.alpha);
            assert!(step_power(&vals, k.q, h) >= k.beta);
            assert!(step_power(&vals, k.r, h) <= k.gamma);
        }
    }

    #[test]
    fn sweep_is_deterministic() {
        let a = pqr_sweep(16, 9);
        let b = pqr_sweep(16, 9);
        assert_eq!(a, b);
        assert_eq!(a.violations, 0);
    }
}
