use serde::{Deserialize, Serialize};

use super::field::{Field, Space};
use super::grid::Grid;
use crate::error::{Error, Result};
use crate::scalar::{Complex, Real};

/// How a negative-order symbol treats the `ξ = 0` mode.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZeroModePolicy {
    /// Set the zero mode to 0.
    #[default]
    Zero,
    /// Require the field to have vanishing mean.
    Error,
}

/// The Fourier multiplier `|ξ|^σ`, i.e. `D^σ` with `D = √(−Δ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplierSpec {
    pub order: f64,
    pub zero_mode_policy: ZeroModePolicy,
}

impl MultiplierSpec {
    pub fn new(order: f64) -> Self {
        Self {
            order,
            zero_mode_policy: ZeroModePolicy::Zero,
        }
    }

    pub fn with_policy(order: f64, zero_mode_policy: ZeroModePolicy) -> Self {
        Self {
            order,
            zero_mode_policy,
        }
    }

    /// Symbol value at `|ξ|`; `0^σ` is 0 for `σ ≠ 0` and 1 for `σ = 0`.
    #[inline]
    pub fn symbol(&self, abs_xi: f64) -> f64 {
        if self.order == 0.0 {
            1.0
        } else if abs_xi == 0.0 {
            0.0
        } else {
            abs_xi.powf(self.order)
        }
    }
}

/// Multiplies frequency-space values by `symbol(|ξ|)` in place.
pub(crate) fn apply_radial_symbol<T: Real>(
    grid: &Grid,
    values: &mut [Complex<T>],
    symbol: impl Fn(f64) -> f64,
) {
    for (idx, v) in values.iter_mut().enumerate() {
        let xi = grid.wave_vector(idx);
        let k = (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt();
        *v = *v * T::lit(symbol(k));
    }
}

/// Applies `D^σ`; the output is in the same space as the input.
pub fn apply_multiplier<T: Real>(f: &Field<T>, m: &MultiplierSpec) -> Result<Field<T>> {
    if !f.is_finite() {
        return Err(Error::InvalidParameter("field has non-finite samples".into()));
    }
    if m.order == 0.0 {
        return Ok(f.clone());
    }
    let space = f.space();
    let mut hat = f.to_frequency();
    if m.order < 0.0 && m.zero_mode_policy == ZeroModePolicy::Error {
        let mean = hat.values()[0].norm();
        let scale = T::lit(f.grid().cell_volume())
            * f.to_physical().values().iter().map(|v| v.norm()).sum::<T>();
        if mean > T::lit(1e-12) * scale {
            return Err(Error::NonzeroMean { mean: mean.as_f64() });
        }
    }
    let grid = *f.grid();
    apply_radial_symbol(&grid, hat.values_mut(), |k| m.symbol(k));
    Ok(hat.into_space(space))
}

/// Translates `f` by `shift`: the result is `f(· − shift)`.
///
/// Shifts that are whole multiples of the spacing are applied as an exact index
/// rotation; other shifts use the phase `e^{−iξ·a}`.
pub fn translate<T: Real>(f: &Field<T>, shift: &[f64]) -> Field<T> {
    let grid = *f.grid();
    if let Some(steps) = grid.lattice_steps(shift) {
        if steps.iter().all(|&s| s == 0) {
            return f.clone();
        }
        let space = f.space();
        let phys = f.to_physical();
        let n = grid.n() as i64;
        let mut out = vec![Complex::default(); grid.len()];
        for (idx, v) in phys.values().iter().enumerate() {
            let m = grid.unravel(idx);
            let mut target = [0usize; 3];
            for a in 0..grid.dim() {
                target[a] = (m[a] as i64 + steps[a]).rem_euclid(n) as usize;
            }
            out[grid.ravel(&target)] = *v;
        }
        return Field::new(grid, out, Space::Physical)
            .expect("same grid")
            .into_space(space);
    }
    let space = f.space();
    let mut hat = f.to_frequency();
    for (idx, v) in hat.values_mut().iter_mut().enumerate() {
        let xi = grid.wave_vector(idx);
        let phase: f64 = (0..grid.dim())
            .map(|a| -xi[a] * shift.get(a).copied().unwrap_or(0.0))
            .sum();
        *v = *v * Complex::new(T::lit(phase.cos()), T::lit(phase.sin()));
    }
    hat.into_space(space)
}
