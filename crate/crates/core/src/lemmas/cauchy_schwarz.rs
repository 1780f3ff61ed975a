use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::functionals::RieszKernel;
use crate::scalar::Real;
use crate::spectral::{random_field, Field, Grid};

/// Relative slack allowed on the right-hand side.
pub const CS_SLACK: f64 = 1e-9;

/// `(|B(g, h)|, √B(g, g) · √B(h, h))` for the Riesz kernel bilinear form.
pub fn riesz_cauchy_schwarz<T: Real>(g: &Field<T>, h: &Field<T>, lambda: f64) -> Result<(f64, f64)> {
    let kernel = RieszKernel::<T>::new(g.grid(), lambda)?;
    kernel_cauchy_schwarz(&kernel, g, h)
}

fn kernel_cauchy_schwarz<T: Real>(kernel: &RieszKernel<T>, g: &Field<T>, h: &Field<T>) -> Result<(f64, f64)> {
    if g.grid() != h.grid() || g.grid() != kernel.grid() {
        return Err(crate::error::Error::GridMismatch);
    }
    let g = g.to_physical();
    let h = h.to_physical();
    let gh = kernel.bilinear(g.values(), h.values());
    let gg = kernel.bilinear(g.values(), g.values()).re.as_f64();
    let hh = kernel.bilinear(h.values(), h.values()).re.as_f64();
    let lhs = if gh.im == T::zero() { gh.re.as_f64().abs() } else { gh.norm().as_f64() };
    Ok((lhs, (gg * hh).sqrt()))
}

/// Outcome of [`cauchy_schwarz_sweep`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CsSweep {
    pub trials: usize,
    pub violations: usize,
    /// Largest observed `lhs / rhs`.
    pub max_ratio: f64,
}

/// Checks the inequality on `trials` seeded random complex pairs.
pub fn cauchy_schwarz_sweep(grid: &Grid, lambda: f64, trials: usize, seed: u64) -> Result<CsSweep> {
    let kernel = RieszKernel::<f64>::new(grid, lambda)?;
    let mut out = CsSweep {
        trials,
        violations: 0,
        max_ratio: 0.0,
    };
    for k in 0..trials as u64 {
        let base = seed.wrapping_mul(1_000_003).wrapping_add(2 * k);
        let g: Field<f64> = random_field(grid, base, 1.0, None);
        let h: Field<f64> = random_field(grid, base + 1, 1.0, None);
        let (lhs, rhs) = kernel_cauchy_schwarz(&kernel, &g, &h)?;
        if lhs > rhs * (1.0 + CS_SLACK) {
            out.violations += 1;
        }
        if rhs > 0.0 {
            out.max_ratio = out.max_ratio.max(lhs / rhs);
        }
    }
    Ok(out)
}
