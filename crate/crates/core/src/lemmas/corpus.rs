//! A fixed set of twenty test fields defined by formulas, so that the same
//! members can be sampled on any grid covering the same box.

use crate::error::{Error, Result};
use crate::scalar::{Complex, Real};
use crate::spectral::{make_profile, Field, Grid, ProfileKind};

/// Number of fields in [`standard_corpus`].
pub const CORPUS_SIZE: usize = 20;

fn r2(x: [f64; 3]) -> f64 {
    x[0] * x[0] + x[1] * x[1] + x[2] * x[2]
}

fn gauss_at(c: [f64; 3], sigma: f64) -> impl Fn([f64; 3]) -> f64 {
    move |x| (-r2([x[0] - c[0], x[1] - c[1], x[2] - c[2]]) / (2.0 * sigma * sigma)).exp()
}

/// Twenty smooth, localized fields of width about 1 to 2.
///
/// Gaussians of five widths, three sech profiles, three anisotropic Gaussians,
/// two superpositions of separated bumps, two modulated packets, a Hermite-type
/// odd mode, a radial node, an algebraically decaying profile and two
/// band-limited random fields. Intended for boxes of side at least 16.
pub fn standard_corpus<T: Real>(grid: &Grid) -> Result<Vec<Field<T>>> {
    let min_side = grid.lengths().iter().copied().fold(f64::INFINITY, f64::min);
    if min_side < 8.0 {
        return Err(Error::InvalidParameter(format!("corpus needs a box side of at least 8, got {min_side}")));
    }
    let g = *grid;
    let real = |f: &dyn Fn([f64; 3]) -> f64| Field::<T>::from_real_fn(g, f);
    let mut out = Vec::with_capacity(CORPUS_SIZE);
    for sigma in [0.75, 1.0, 1.25, 1.5, 2.0] {
        out.push(make_profile(grid, ProfileKind::Gaussian { sigma })?);
    }
    for scale in [0.75, 1.0, 1.5] {
        out.push(make_profile(grid, ProfileKind::Sech { scale })?);
    }
    for w in [[1.0, 1.5, 2.0], [0.8, 0.8, 1.6], [2.0, 1.0, 1.0]] {
        out.push(real(&|x| {
            (-(x[0] * x[0] / (w[0] * w[0]) + x[1] * x[1] / (w[1] * w[1]) + x[2] * x[2] / (w[2] * w[2])) / 2.0).exp()
        }));
    }
    let pair = (gauss_at([-2.0, 0.0, 0.0], 1.0), gauss_at([2.0, 0.0, 0.0], 1.0));
    out.push(real(&|x| pair.0(x) + pair.1(x)));
    let lopsided = (gauss_at([0.0; 3], 1.0), gauss_at([3.0, 3.0, 0.0], 0.8));
    out.push(real(&|x| lopsided.0(x) + 0.5 * lopsided.1(x)));
    let packet = gauss_at([0.0; 3], 1.5);
    out.push(real(&|x| packet(x) * (2.0 * x[0]).cos()));
    out.push(Field::from_fn(g, |x| {
        let a = packet(x);
        Complex::new(T::lit(a * (1.5 * x[0]).cos()), T::lit(a * (1.5 * x[0]).sin()))
    }));
    out.push(real(&|x| x[0] * (-r2(x) / 2.0).exp()));
    out.push(real(&|x| (1.0 - r2(x) / 3.0) * (-r2(x) / 2.0).exp()));
    out.push(real(&|x| (1.0 + r2(x)).powi(-2)));
    for seed in [1, 2] {
        out.push(make_profile(grid, ProfileKind::Random { seed })?);
    }
    debug_assert_eq!(out.len(), CORPUS_SIZE);
    Ok(out)
}
