//! Scale-invariant ratios behind the refined Sobolev and intermediate GN bounds.

use crate::error::{Error, Result};
use crate::functionals::{lp_norm, sobolev_seminorm};
use crate::regimes::riesz_theta;
use crate::scalar::Real;
use crate::spectral::{apply_multiplier, Field, MultiplierSpec};

use super::besov::scan_unchecked;

/// `‖u‖_q / (‖u‖_{Ḣ^s}^{2/q} · B(u)^{1−2/q})` with `q = 2d/(d − 2s)` and `B`
/// the Besov sup of order `s`.
pub fn refined_sobolev_single<T: Real>(u: &Field<T>, s: f64) -> Result<f64> {
    let d = u.grid().dim() as f64;
    if !(s > 0.0 && s < d / 2.0) {
        return Err(Error::InvalidParameter(format!("order s = {s} not in (0, d/2 = {})", d / 2.0)));
    }
    if u.is_zero() {
        return Err(Error::ZeroField);
    }
    let q = 2.0 * d / (d - 2.0 * s);
    let num = lp_norm(u, q)?.as_f64();
    let hs = sobolev_seminorm(u, s)?.as_f64();
    let besov = scan_unchecked(u, s).value;
    if hs == 0.0 || besov == 0.0 {
        return Err(Error::VanishingNorm("refined Sobolev denominator"));
    }
    Ok(num / (hs.powf(2.0 / q) * besov.powf(1.0 - 2.0 / q)))
}

/// Per-member refined Sobolev ratios.
pub fn refined_sobolev_ratios<T: Real>(corpus: &[Field<T>], s: f64) -> Result<Vec<f64>> {
    if corpus.is_empty() {
        return Err(Error::InvalidParameter("empty corpus".into()));
    }
    corpus.iter().map(|u| refined_sobolev_single(u, s)).collect()
}

/// Largest refined Sobolev ratio over the corpus.
pub fn refined_sobolev_ratio<T: Real>(corpus: &[Field<T>], s: f64) -> Result<f64> {
    Ok(max_of(&refined_sobolev_ratios(corpus, s)?))
}

/// `‖D^{(d−λ)/2} ψ‖_p / (‖ψ‖₂^{1−θ} ‖D^{s+(d−λ)/2} ψ‖_{2p/(p+1)}^θ)` with `θ`
/// from [`riesz_theta`]; the dimension is taken from the grid.
pub fn interm_gn_ratio<T: Real>(psi: &Field<T>, s: f64, lambda: f64, p: f64) -> Result<f64> {
    let d = psi.grid().dim();
    let df = d as f64;
    if !(lambda > 0.0 && lambda < df) {
        return Err(Error::InvalidParameter(format!("λ = {lambda} not in (0, {d})")));
    }
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!("p = {p} must lie in (1, ∞)")));
    }
    let theta = riesz_theta(d, s, lambda, p)?;
    let floor = (df - lambda) / (df + 2.0 * s - lambda);
    if !(theta >= floor - 1e-12 && theta < 1.0) {
        return Err(Error::InvalidParameter(format!("θ = {theta} not in [{floor}, 1)")));
    }
    if psi.is_zero() {
        return Err(Error::ZeroField);
    }
    let a = (df - lambda) / 2.0;
    let deriv = |order: f64| apply_multiplier(psi, &MultiplierSpec::new(order));
    let num = lp_norm(&deriv(a)?, p)?.as_f64();
    let l2 = psi.l2_norm().as_f64();
    let high = lp_norm(&deriv(s + a)?, 2.0 * p / (p + 1.0))?.as_f64();
    if high == 0.0 {
        return Err(Error::VanishingNorm("‖D^{s+(d−λ)/2} ψ‖"));
    }
    Ok(num / (l2.powf(1.0 - theta) * high.powf(theta)))
}

/// Per-member intermediate GN ratios.
pub fn interm_gn_ratios<T: Real>(corpus: &[Field<T>], s: f64, lambda: f64, p: f64) -> Result<Vec<f64>> {
    if corpus.is_empty() {
        return Err(Error::InvalidParameter("empty corpus".into()));
    }
    corpus.iter().map(|u| interm_gn_ratio(u, s, lambda, p)).collect()
}

fn max_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}
