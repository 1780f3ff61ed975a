#![allow(dead_code)]

use gnx_core::spectral::Field;

/// Least-squares fit of `c·sech((x − a)/b)` to `|f|` on a 1D grid.
/// Returns `(a, b, c, relative L² error)`.
pub fn fit_sech(f: &Field<f64>) -> (f64, f64, f64, f64) {
    let grid = *f.grid();
    let xs: Vec<f64> = (0..grid.len()).map(|i| grid.position(i)[0]).collect();
    let ys: Vec<f64> = f.to_physical().values().iter().map(|v| v.norm()).collect();
    let norm: f64 = ys.iter().map(|y| y * y).sum::<f64>().sqrt();
    // error for given (a, b) with the optimal amplitude
    let err = |a: f64, b: f64| -> (f64, f64) {
        let model: Vec<f64> = xs.iter().map(|x| 1.0 / ((x - a) / b).cosh()).collect();
        let c = ys.iter().zip(&model).map(|(y, m)| y * m).sum::<f64>() / model.iter().map(|m| m * m).sum::<f64>();
        let e = ys.iter().zip(&model).map(|(y, m)| (y - c * m).powi(2)).sum::<f64>().sqrt() / norm;
        (e, c)
    };
    let w: f64 = ys.iter().map(|y| y * y).sum();
    let mut a = xs.iter().zip(&ys).map(|(x, y)| x * y * y).sum::<f64>() / w;
    let mut b = 1.0;
    // coordinate search on a log-spaced then refined pattern
    let mut step_a = 1.0;
    let mut step_b = 0.5;
    for _ in 0..200 {
        let (base, _) = err(a, b);
        let mut improved = false;
        for (da, db) in [(step_a, 0.0), (-step_a, 0.0), (0.0, step_b), (0.0, -step_b)] {
            let (na, nb) = (a + da, (b + db).max(1e-3));
            if err(na, nb).0 < base {
                a = na;
                b = nb;
                improved = true;
                break;
            }
        }
        if !improved {
            step_a *= 0.5;
            step_b *= 0.5;
            if step_a < 1e-6 {
                break;
            }
        }
    }
    let (e, c) = err(a, b);
    (a, b, c, e)
}
