//! Gauss–Legendre rules and the singular-cell average of `|x|^{−λ}`.

use std::f64::consts::PI;

/// Nodes and weights of the `m`-point Gauss–Legendre rule on `[0, 1]`.
pub fn gauss_legendre_unit(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_m(x) and P_m'(x) by the three-term recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=m {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            let pm = if m == 1 { x } else { p1 };
            let pm1 = if m == 1 { 1.0 } else { p0 };
            dp = m as f64 * (x * pm - pm1) / (x * x - 1.0);
            let dx = pm / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map [-1, 1] → [0, 1]
        nodes[i] = 0.5 * (1.0 - x);
        nodes[m - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = 0.5 * w;
        weights[m - 1 - i] = 0.5 * w;
    }
    (nodes, weights)
}

/// Average of `|u|^{−λ}` over the unit cube `[−½, ½]^d`, `0 < λ < d`.
///
/// The cube is split into `2^d · d` congruent pyramids with apex at the origin.
/// On each pyramid `u = t·(1, v)` with `t ∈ (0, ½)`, `v ∈ [0, 1]^{d−1}`, which
/// factors the integral into `∫ t^{d−1−λ} dt` (closed form) times the smooth
/// integral `∫ (1 + |v|²)^{−λ/2} dv` (tensor Gauss–Legendre).
pub fn unit_cell_average(d: usize, lambda: f64) -> f64 {
    assert!((1..=3).contains(&d) && lambda > 0.0 && lambda < d as f64);
    let radial = 0.5f64.powf(d as f64 - lambda) / (d as f64 - lambda);
    let (x, w) = gauss_legendre_unit(40);
    let angular = match d {
        1 => 1.0,
        2 => x
            .iter()
            .zip(&w)
            .map(|(v, wv)| wv * (1.0 + v * v).powf(-lambda / 2.0))
            .sum(),
        _ => {
            let mut acc = 0.0;
            for (v1, w1) in x.iter().zip(&w) {
                for (v2, w2) in x.iter().zip(&w) {
                    acc += w1 * w2 * (1.0 + v1 * v1 + v2 * v2).powf(-lambda / 2.0);
                }
            }
            acc
        }
    };
    (1u32 << d) as f64 * d as f64 * radial * angular
}
