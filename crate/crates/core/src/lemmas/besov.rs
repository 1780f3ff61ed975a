//! Dyadic scan for `sup_{A>0} A^{s−d/2} ‖χ₀(|D|/A) u‖_∞`.

use crate::error::{Error, Result};
use crate::scalar::{Complex, Real};
use crate::spectral::{chi0, inverse_in_place, Field, Grid};

/// Outcome of a Besov scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesovScan {
    /// The largest scanned value.
    pub value: f64,
    /// Frequency scale `A` attaining it.
    pub scale: f64,
    /// Position of the first cell where `|χ₀(|D|/A) u|` is maximal at that scale.
    pub location: [f64; 3],
}

/// Low-pass `χ₀(|ξ|/A) û` back in physical space.
fn low_pass<T: Real>(grid: &Grid, hat: &[Complex<T>], abs_xi: &[f64], scale: f64) -> Vec<Complex<T>> {
    let mut out: Vec<Complex<T>> = hat
        .iter()
        .zip(abs_xi)
        .map(|(v, &k)| *v * T::lit(chi0(k / scale)))
        .collect();
    inverse_in_place(grid, &mut out);
    out
}

/// First index of the largest modulus, with its modulus.
pub(crate) fn arg_max<T: Real>(values: &[Complex<T>]) -> (usize, f64) {
    let mut best = (0, -1.0);
    for (i, v) in values.iter().enumerate() {
        let a = v.norm().as_f64();
        if a > best.1 {
            best = (i, a);
        }
    }
    best
}

/// Scan without checking the range of `s`.
pub(crate) fn scan_unchecked<T: Real>(f: &Field<T>, s: f64) -> BesovScan {
    let grid = *f.grid();
    let d = grid.dim() as f64;
    let hat = f.to_frequency().into_values();
    let abs_xi = grid.abs_wavenumbers();
    let eval = |scale: f64| {
        let g = low_pass(&grid, &hat, &abs_xi, scale);
        let (idx, m) = arg_max(&g);
        (scale.powf(s - d / 2.0) * m, idx)
    };
    let lo = grid.min_wavenumber().log2().floor() as i32 - 1;
    let hi = grid.max_wavenumber().log2().ceil() as i32 + 1;
    let mut best = (f64::NEG_INFINITY, 0.0, 0usize);
    let mut best_j = lo;
    for j in lo..=hi {
        let a = 2f64.powi(j);
        let (v, idx) = eval(a);
        if v > best.0 {
            best = (v, a, idx);
            best_j = j;
        }
    }
    for k in -3..=3 {
        if k == 0 {
            continue;
        }
        let a = 2f64.powf(best_j as f64 + k as f64 / 4.0);
        let (v, idx) = eval(a);
        if v > best.0 {
            best = (v, a, idx);
        }
    }
    BesovScan {
        value: best.0.max(0.0),
        scale: best.1,
        location: grid.position(best.2),
    }
}

/// Scan over dyadic scales covering the grid's frequency range, refined to
/// quarter octaves around the best octave. Requires `0 < s < d/2`.
pub fn besov_scan<T: Real>(f: &Field<T>, s: f64) -> Result<BesovScan> {
    let d = f.grid().dim() as f64;
    if !(s > 0.0 && s < d / 2.0) {
        return Err(Error::InvalidParameter(format!("Besov order s = {s} not in (0, d/2 = {})", d / 2.0)));
    }
    Ok(scan_unchecked(f, s))
}

/// `sup_A A^{s−d/2} ‖χ₀(|D|/A) f‖_∞`, equivalently `sup_A A^{d/2+s} ‖θ(A·) ⋆ f‖_∞`
/// for the mollifier `θ` with `θ̂ = χ₀`.
pub fn besov_sup<T: Real>(f: &Field<T>, s: f64) -> Result<f64> {
    Ok(besov_scan(f, s)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{make_profile, translate, ProfileKind};

    #[test]
    fn zero_and_range() {
        let g = Grid::new(3, 16, 10.0).unwrap();
        assert_eq!(besov_sup(&Field::<f64>::zeros(g), 1.0).unwrap(), 0.0);
        assert!(besov_sup(&Field::<f64>::zeros(g), 1.5).is_err());
        let g1 = Grid::new(1, 64, 10.0).unwrap();
        assert!(besov_sup(&Field::<f64>::zeros(g1), 0.5).is_err());
    }

    #[test]
    fn translation_invariance_is_exact() {
        let g = Grid::new(2, 64, 20.0).unwrap();
        let f: Field<f64> = make_profile(&g, ProfileKind::Gaussian { sigma: 1.5 }).unwrap();
        let h = g.spacing(0);
        let a = besov_sup(&f, 0.5).unwrap();
        let b = besov_sup(&translate(&f, &[5.0 * h, -3.0 * h]), 0.5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dilation_covariance() {
        for (d, n, l, s) in [(1, 1024, 200.0, 0.25), (3, 64, 40.0, 1.0)] {
            let g = Grid::new(d, n, l).unwrap();
            let one: Field<f64> = make_profile(&g, ProfileKind::Gaussian { sigma: 1.0 }).unwrap();
            let two: Field<f64> = make_profile(&g, ProfileKind::Gaussian { sigma: 2.0 }).unwrap();
            let ratio = besov_sup(&two, s).unwrap() / besov_sup(&one, s).unwrap();
            let expected = 2f64.powf(d as f64 / 2.0 - s);
            assert!((ratio / expected - 1.0).abs() < 0.05, "d={d}: {ratio} vs {expected}");
        }
    }
}
