use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lemmas::{arg_max, scan_unchecked};
use crate::scalar::Real;
use crate::spectral::{chi0, chi1, translate, Field};

/// Fraction of `max |f|` that the low-frequency part must reach for Case A.
pub const LOW_FREQUENCY_THRESHOLD: f64 = 0.1;

/// Which localization rule found the center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecenterCase {
    /// Peak of the low-frequency part `χ₀(|D|) f`.
    LowFrequency,
    /// Peak of the high-frequency part at the scale maximizing the Besov scan.
    HighFrequency,
}

/// Result of [`recenter`].
#[derive(Clone, Debug)]
pub struct Recentered<T: Real> {
    /// `f(· + center)`, so the detected concentration point sits at the origin.
    pub field: Field<T>,
    /// Detected concentration point; always a lattice position.
    pub center: Vec<f64>,
    pub case: RecenterCase,
}

fn filtered<T: Real>(f: &Field<T>, cutoff: impl Fn(f64) -> f64) -> Field<T> {
    let grid = *f.grid();
    let mut hat = f.to_frequency();
    let abs_xi = grid.abs_wavenumbers();
    for (v, k) in hat.values_mut().iter_mut().zip(&abs_xi) {
        *v = *v * T::lit(cutoff(*k));
    }
    hat.into_physical()
}

/// Moves the concentration point of `f` to the origin.
///
/// Case A looks at `χ₀(|D|) f`; when its peak is below
/// [`LOW_FREQUENCY_THRESHOLD`] of `max |f|`, Case B scans `χ₁(|D|) f` over
/// dyadic scales with order `min(s, d/2)/2`. Ties go to the first cell in
/// row-major order, i.e. the lexicographically smallest coordinate.
pub fn recenter<T: Real>(f: &Field<T>, s: f64) -> Result<Recentered<T>> {
    let phys = f.to_physical();
    if phys.is_zero() {
        return Err(Error::ZeroField);
    }
    if !(s > 0.0) {
        return Err(Error::InvalidParameter(format!("order s = {s} must be positive")));
    }
    let grid = *f.grid();
    let d = grid.dim();
    let low = filtered(&phys, chi0);
    let (idx, peak) = arg_max(low.values());
    let (center, case) = if peak >= LOW_FREQUENCY_THRESHOLD * phys.max_abs().as_f64() {
        (grid.position(idx), RecenterCase::LowFrequency)
    } else {
        let high = filtered(&phys, chi1);
        let order = s.min(d as f64 / 2.0) / 2.0;
        (scan_unchecked(&high, order).location, RecenterCase::HighFrequency)
    };
    let center = center[..d].to_vec();
    let back: Vec<f64> = center.iter().map(|c| -c).collect();
    let moved = translate(&phys, &back).into_space(f.space());
    Ok(Recentered {
        field: moved,
        center,
        case,
    })
}
