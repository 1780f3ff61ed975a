//! Brézis–Lieb splitting for the Riesz energy of `f + g(· − a e₁)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::{lp_norm, RieszKernel};
use crate::scalar::{Complex, Real};
use crate::spectral::{translate, Field};

/// Cells below this fraction of `max |g|` count as outside the support of `g`.
const SUPPORT_TOLERANCE: f64 = 1e-10;

/// Cross terms of the splitting at one separation, with `u = f_a − f`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossTerms {
    /// `B(f̄u, f̄u)`.
    pub bl1: f64,
    /// `B(r, r)` with `r = Re(f̄u)`.
    pub r1: f64,
    /// `B(r, |f_a|²)`.
    pub r2: f64,
    /// `B(r, |f|²)`.
    pub r3: f64,
}

/// Outcome of [`bl_nonlocal_verify`]. All lists are aligned with `separations`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BLReport {
    pub lambda: f64,
    pub p: f64,
    pub separations: Vec<f64>,
    /// `|E(f_a) − E(f) − E(f_a − f)|`.
    pub residuals: Vec<f64>,
    pub cross_terms: Vec<CrossTerms>,
    /// `|‖f_a‖_p^p − ‖f‖_p^p − ‖f_a − f‖_p^p|`.
    pub lp_residuals: Vec<f64>,
    /// Relative defect of the exact expansion
    /// `E(f_a) = 2B(|f|², |f_a|²) − E(f) + E(u) − 4R₁ + 4R₂ − 4R₃`.
    pub identity_defects: Vec<f64>,
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

impl BLReport {
    pub fn residuals_decreasing(&self) -> bool {
        strictly_decreasing(&self.residuals)
    }

    pub fn lp_residuals_decreasing(&self) -> bool {
        strictly_decreasing(&self.lp_residuals)
    }

    /// Least-squares slope of `log residual` against `log separation`.
    pub fn decay_slope(&self) -> Option<f64> {
        log_log_slope(&self.separations, &self.residuals)
    }

    /// Whether `|B(f̄u, f̄u)| ≤ residual(a₀)·(a/a₀)^{−λ+1/2}` at every separation.
    pub fn cross_term_bounded(&self) -> bool {
        let (Some(&a0), Some(&r0)) = (self.separations.first(), self.residuals.first()) else {
            return true;
        };
        self.separations
            .iter()
            .zip(&self.cross_terms)
            .all(|(&a, c)| c.bl1.abs() <= r0 * (a / a0).powf(0.5 - self.lambda))
    }
}

/// Least-squares slope through `(ln x, ln y)`; `None` with fewer than two
/// usable points.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = x
        .iter()
        .zip(y)
        .filter(|(a, b)| **a > 0.0 && **b > 0.0)
        .map(|(a, b)| (a.ln(), b.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Largest distance from the origin to a cell where `|g|` exceeds the support
/// tolerance; 0 for the zero field.
fn support_radius<T: Real>(g: &Field<T>) -> f64 {
    let grid = g.grid();
    let top = g.max_abs().as_f64();
    if top == 0.0 {
        return 0.0;
    }
    g.values()
        .iter()
        .enumerate()
        .filter(|(_, v)| v.norm().as_f64() > SUPPORT_TOLERANCE * top)
        .map(|(i, _)| {
            let x = grid.position(i);
            (0..grid.dim()).map(|a| x[a].abs()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

fn modulus_sq<T: Real>(v: &[Complex<T>]) -> Vec<Complex<T>> {
    v.iter().map(|z| Complex::new(z.norm_sqr(), T::zero())).collect()
}

fn lp_power<T: Real>(f: &Field<T>, p: f64) -> Result<f64> {
    if f.is_zero() {
        return Ok(0.0);
    }
    Ok(lp_norm(f, p)?.as_f64().powf(p))
}

/// Evaluates both sides of the Riesz-energy splitting for `f_a = f + g(· − a e₁)`
/// at each separation `a`, along with the cross terms and the classical `L^p`
/// splitting.
///
/// Separations must be whole multiples of the spacing and keep the support of
/// the shifted `g` inside the box; otherwise the periodic shift would wrap.
pub fn bl_nonlocal_verify<T: Real>(
    f: &Field<T>,
    g: &Field<T>,
    separations: &[f64],
    lambda: f64,
    p: f64,
) -> Result<BLReport> {
    if f.grid() != g.grid() {
        return Err(Error::GridMismatch);
    }
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!("p = {p} must lie in (1, ∞)")));
    }
    let grid = *f.grid();
    let kernel = RieszKernel::<T>::new(&grid, lambda)?;
    let f = f.to_physical();
    let g = g.to_physical();
    let half = grid.lengths()[0] / 2.0;
    let reach = support_radius(&g);
    let h = grid.spacing(0);
    for &a in separations {
        if !(a >= 0.0) || a + reach > half - h {
            return Err(Error::UnsafeSeparation { separation: a });
        }
        if grid.lattice_steps(&[a]).is_none() {
            return Err(Error::InvalidParameter(format!("separation {a} is not a multiple of the spacing {h}")));
        }
    }

    let rho_f = modulus_sq(f.values());
    let e_f = kernel.energy(&f).as_f64();
    let lp_f = lp_power(&f, p)?;
    let mut report = BLReport {
        lambda,
        p,
        separations: separations.to_vec(),
        residuals: Vec::new(),
        cross_terms: Vec::new(),
        lp_residuals: Vec::new(),
        identity_defects: Vec::new(),
    };
    for &a in separations {
        let mut shift = vec![0.0; grid.dim()];
        shift[0] = a;
        let u = translate(&g, &shift);
        let fa = f.add(&u)?;
        let e_fa = kernel.energy(&fa).as_f64();
        let e_u = kernel.energy(&u).as_f64();
        report.residuals.push((e_fa - e_f - e_u).abs());

        let s: Vec<Complex<T>> = f.values().iter().zip(u.values()).map(|(a, b)| a.conj() * b).collect();
        let r: Vec<Complex<T>> = s.iter().map(|z| Complex::new(z.re, T::zero())).collect();
        let rho_fa = modulus_sq(fa.values());
        let terms = CrossTerms {
            bl1: kernel.bilinear(&s, &s).re.as_f64(),
            r1: kernel.bilinear(&r, &r).re.as_f64(),
            r2: kernel.bilinear(&r, &rho_fa).re.as_f64(),
            r3: kernel.bilinear(&r, &rho_f).re.as_f64(),
        };
        let mixed = kernel.bilinear(&rho_f, &rho_fa).re.as_f64();
        let expanded = 2.0 * mixed - e_f + e_u - 4.0 * terms.r1 + 4.0 * terms.r2 - 4.0 * terms.r3;
        report.identity_defects.push((expanded - e_fa).abs() / e_fa.abs().max(f64::MIN_POSITIVE));
        report.cross_terms.push(terms);

        report.lp_residuals.push((lp_power(&fa, p)? - lp_f - lp_power(&u, p)?).abs());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{make_profile, Grid, ProfileKind};

    fn gauss(g: &Grid) -> Field<f64> {
        make_profile(g, ProfileKind::Gaussian { sigma: 1.0 }).unwrap()
    }

    #[test]
    fn zero_profile_has_zero_residual() {
        let g = Grid::new(2, 32, 16.0).unwrap();
        let f = gauss(&g);
        let r = bl_nonlocal_verify(&f, &Field::zeros(g), &[2.0, 4.0], 1.0, 2.0).unwrap();
        assert!(r.residuals.iter().all(|&v| v == 0.0), "{:?}", r.residuals);
        assert!(r.lp_residuals.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn expansion_is_exact() {
        let g = Grid::new(2, 32, 24.0).unwrap();
        let f = gauss(&g);
        let r = bl_nonlocal_verify(&f, &f, &[0.75, 1.5, 3.0], 1.0, 3.0).unwrap();
        assert!(r.identity_defects.iter().all(|&v| v < 1e-12), "{:?}", r.identity_defects);
    }

    #[test]
    fn unsafe_and_off_lattice_separations() {
        let g = Grid::new(1, 64, 32.0).unwrap();
        let f = gauss(&g);
        assert!(matches!(
            bl_nonlocal_verify(&f, &f, &[10.0], 0.5, 2.0),
            Err(Error::UnsafeSeparation { .. })
        ));
        assert!(matches!(
            bl_nonlocal_verify(&f, &f, &[1.1], 0.5, 2.0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn slope_of_a_power_law() {
        let x = [2.0, 4.0, 8.0];
        let y: Vec<f64> = x.iter().map(|a: &f64| 3.0 * a.powf(-1.5)).collect();
        assert!((log_log_slope(&x, &y).unwrap() + 1.5).abs() < 1e-12);
        assert!(log_log_slope(&[1.0], &[1.0]).is_none());
    }
}
