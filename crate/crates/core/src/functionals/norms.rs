use crate::error::{Error, Result};
use crate::scalar::{compensated_sum, Complex, Real};
use crate::spectral::{Field, Grid};

/// `(h^d Σ |v_i|^p)^{1/p}` over raw physical samples; `p = ∞` gives the max.
pub(crate) fn lp_of_samples<T: Real>(grid: &Grid, values: &[Complex<T>], p: f64) -> T {
    if p.is_infinite() {
        return values
            .iter()
            .map(|v| v.norm())
            .fold(T::zero(), |a, b| if b > a { b } else { a });
    }
    let w = T::lit(grid.cell_volume());
    let s = if p == 2.0 {
        compensated_sum(values.iter().map(|v| v.norm_sqr()))
    } else {
        let pt = T::lit(p);
        compensated_sum(values.iter().map(|v| v.norm().powf(pt)))
    };
    (s * w).powf(T::lit(1.0 / p))
}

/// `Σ |ξ|^{2s} |f̂|² / L^d` from frequency samples.
pub(crate) fn sobolev_sq_of_spectrum<T: Real>(abs_xi: &[f64], hat: &[Complex<T>], s: f64, box_volume: f64) -> T {
    let total = compensated_sum(abs_xi.iter().zip(hat).map(|(&k, v)| {
        if k == 0.0 {
            T::zero()
        } else {
            T::lit(k.powf(2.0 * s)) * v.norm_sqr()
        }
    }));
    total / T::lit(box_volume)
}

/// Discrete `L^p` norm, `1 < p ≤ ∞`.
pub fn lp_norm<T: Real>(f: &Field<T>, p: f64) -> Result<T> {
    if !(p > 1.0) {
        return Err(Error::InvalidParameter(format!("L^p exponent {p} must exceed 1")));
    }
    let phys = f.to_physical();
    Ok(lp_of_samples(f.grid(), phys.values(), p))
}

/// Homogeneous Sobolev seminorm `‖D^s f‖₂` via Plancherel.
pub fn sobolev_seminorm<T: Real>(f: &Field<T>, s: f64) -> Result<T> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidParameter(format!("Sobolev order {s} must be positive")));
    }
    if !f.is_finite() {
        return Err(Error::InvalidParameter("field has non-finite samples".into()));
    }
    let hat = f.to_frequency();
    let abs_xi = f.grid().abs_wavenumbers();
    Ok(sobolev_sq_of_spectrum(&abs_xi, hat.values(), s, f.grid().box_volume()).sqrt())
}
