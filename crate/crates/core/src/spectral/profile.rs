use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::field::{Field, Space};
use super::grid::Grid;
use crate::error::{Error, Result};
use crate::scalar::{Complex, Real};

/// Deterministic fields used as fixtures and optimizer starting points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProfileKind {
    /// `exp(−|x|²/(2σ²))`.
    Gaussian { sigma: f64 },
    /// `sech(|x|/scale)`.
    Sech { scale: f64 },
    /// One-dimensional field whose transform is the indicator of `(1−δ, 1+δ)`.
    FourierBump { delta: f64 },
    /// Band-limited smooth random field with unit `L²` norm.
    Random { seed: u64 },
}

/// Highest integer mode per axis used by [`ProfileKind::Random`]; keeps the field
/// identical across resolutions with `n ≥ 18`.
const RANDOM_PROFILE_BAND: usize = 8;

pub fn make_profile<T: Real>(grid: &Grid, kind: ProfileKind) -> Result<Field<T>> {
    match kind {
        ProfileKind::Gaussian { sigma } => {
            if !(sigma > 0.0) {
                return Err(Error::InvalidParameter(format!("gaussian sigma {sigma} must be positive")));
            }
            Ok(Field::from_real_fn(*grid, |x| {
                (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / (2.0 * sigma * sigma)).exp()
            }))
        }
        ProfileKind::Sech { scale } => {
            if !(scale > 0.0) {
                return Err(Error::InvalidParameter(format!("sech scale {scale} must be positive")));
            }
            Ok(Field::from_real_fn(*grid, |x| {
                1.0 / ((x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt() / scale).cosh()
            }))
        }
        ProfileKind::FourierBump { delta } => {
            if grid.dim() != 1 {
                return Err(Error::InvalidParameter("fourier_bump requires d = 1".into()));
            }
            if !(delta > 0.0 && delta < 1.0) {
                return Err(Error::InvalidParameter(format!("fourier_bump delta {delta} not in (0, 1)")));
            }
            let values = (0..grid.len())
                .map(|j| {
                    let xi = grid.wavenumber(0, j);
                    if xi > 1.0 - delta && xi < 1.0 + delta {
                        Complex::new(T::one(), T::zero())
                    } else {
                        Complex::default()
                    }
                })
                .collect();
            Ok(Field::new(*grid, values, Space::Frequency)?.into_physical())
        }
        ProfileKind::Random { seed } => {
            let band = RANDOM_PROFILE_BAND.min(grid.n() / 2 - 1);
            let decay = grid.dim() as f64 / 2.0 + 2.0;
            let f = random_field(grid, seed, decay, Some(band));
            let norm = f.l2_norm();
            Ok(f.scaled(T::one() / norm))
        }
    }
}

/// Complex Gaussian frequency coefficients weighted by `(1 + |ξ|²)^{−decay/2}`.
///
/// With `band = Some(K)` only integer modes `|k_a| ≤ K` are populated, drawn in
/// lexicographic order of `k`, so the field does not depend on `n`. With `None`
/// every lattice mode is populated in FFT order.
pub fn random_field<T: Real>(grid: &Grid, seed: u64, decay: f64, band: Option<usize>) -> Field<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = vec![Complex::<T>::default(); grid.len()];
    let weight = |idx: usize| {
        let xi = grid.wave_vector(idx);
        (1.0 + xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).powf(-decay / 2.0)
    };
    let draw = |rng: &mut ChaCha8Rng| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        (re, im)
    };
    match band {
        Some(k) => {
            let d = grid.dim();
            let n = grid.n() as i64;
            let side = 2 * k + 1;
            for flat in 0..side.pow(d as u32) {
                let mut slot = [0usize; 3];
                let mut rest = flat;
                for a in (0..d).rev() {
                    let ka = (rest % side) as i64 - k as i64;
                    rest /= side;
                    slot[a] = ka.rem_euclid(n) as usize;
                }
                let (re, im) = draw(&mut rng);
                let idx = grid.ravel(&slot);
                let w = weight(idx);
                values[idx] = Complex::new(T::lit(re * w), T::lit(im * w));
            }
        }
        None => {
            for (idx, v) in values.iter_mut().enumerate() {
                let (re, im) = draw(&mut rng);
                let w = weight(idx);
                *v = Complex::new(T::lit(re * w), T::lit(im * w));
            }
        }
    }
    Field::new(*grid, values, Space::Frequency)
        .expect("sized to grid")
        .into_physical()
}
