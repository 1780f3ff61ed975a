//! Discretized Riesz double integral `∬ ρ(x) ρ(y) |x − y|^{−λ} dx dy`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::quadrature::unit_cell_average;
use crate::error::{Error, Result};
use crate::scalar::{compensated_sum, Complex, Real};
use crate::spectral::{CubeFft, Field, Grid};

/// Largest grid (in cells) accepted by the direct double sum.
pub const DIRECT_MAX_CELLS: usize = 1 << 15;

/// How [`riesz_energy`] evaluates the double sum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RieszMethod {
    /// Zero-padded FFT convolution, `O(N log N)`.
    #[default]
    Fourier,
    /// Explicit double sum over cell pairs, `O(N²)`.
    Direct,
}

/// The kernel `|x|^{−λ}` sampled at lattice displacements, with the singular
/// cell replaced by the cell average, prepared for linear convolution on a grid.
///
/// Both evaluation routes share the same discrete kernel, so they agree up to
/// rounding.
#[derive(Clone)]
pub struct RieszKernel<T: Real> {
    grid: Grid,
    lambda: f64,
    padded: usize,
    fft: CubeFft<T>,
    /// Kernel DFT on the doubled grid, pre-multiplied by `h^d / (2n)^d`.
    spectrum: Vec<T>,
    singular: f64,
}

impl<T: Real> RieszKernel<T> {
    pub fn new(grid: &Grid, lambda: f64) -> Result<Self> {
        let d = grid.dim();
        if !(lambda > 0.0 && lambda < d as f64) {
            return Err(Error::InvalidParameter(format!("λ = {lambda} not in (0, {d})")));
        }
        if !grid.is_isotropic() {
            return Err(Error::InvalidGrid("Riesz kernel needs equal spacing on every axis".into()));
        }
        let h = grid.spacing(0);
        let singular = unit_cell_average(d, lambda) * h.powf(-lambda);
        let padded = 2 * grid.n();
        let fft = CubeFft::new(padded, d);
        let total = padded.pow(d as u32);
        let mut buf: Vec<Complex<T>> = (0..total)
            .map(|idx| {
                let m = padded_displacement(idx, padded, d);
                Complex::new(T::lit(kernel_value(m, h, lambda, singular)), T::zero())
            })
            .collect();
        fft.forward(&mut buf);
        let scale = T::lit(grid.cell_volume() / total as f64);
        let spectrum = buf.into_iter().map(|v| v.re * scale).collect();
        Ok(Self {
            grid: *grid,
            lambda,
            padded,
            fft,
            spectrum,
            singular,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Kernel value used for the zero displacement.
    pub fn singular_value(&self) -> f64 {
        self.singular
    }

    /// Kernel value at the lattice displacement `m` (in cells).
    pub fn sample(&self, m: [i64; 3]) -> f64 {
        kernel_value(m, self.grid.spacing(0), self.lambda, self.singular)
    }

    /// Smallest eigenvalue of the doubled-grid circulant that realizes the
    /// convolution, in units of the kernel spectrum (without the `h^d` weight).
    pub fn min_circulant_eigenvalue(&self) -> f64 {
        let total = self.padded.pow(self.grid.dim() as u32) as f64;
        let w = self.grid.cell_volume();
        self.spectrum
            .iter()
            .map(|v| v.as_f64() * total / w)
            .fold(f64::INFINITY, f64::min)
    }

    /// `V_i = h^d Σ_j K(x_i − x_j) ρ_j` for a complex density on the grid.
    pub fn potential(&self, density: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(density.len(), self.grid.len());
        let n = self.grid.n();
        let d = self.grid.dim();
        let m = self.padded;
        let mut buf = vec![Complex::<T>::default(); m.pow(d as u32)];
        for (idx, v) in density.iter().enumerate() {
            buf[self.padded_index(idx)] = *v;
        }
        self.fft.forward_pruned(&mut buf, n);
        buf.par_iter_mut()
            .zip(self.spectrum.par_iter())
            .for_each(|(v, k)| *v = *v * *k);
        self.fft.inverse_pruned(&mut buf, n);
        (0..density.len()).map(|idx| buf[self.padded_index(idx)]).collect()
    }

    /// `B(g, h) = h^{2d} Σ_i Σ_j conj(g_i) h_j K(x_i − x_j)`.
    pub fn bilinear(&self, g: &[Complex<T>], h: &[Complex<T>]) -> Complex<T> {
        let v = self.potential(h);
        let w = T::lit(self.grid.cell_volume());
        let re = compensated_sum(g.iter().zip(&v).map(|(a, b)| a.re * b.re + a.im * b.im));
        let im = compensated_sum(g.iter().zip(&v).map(|(a, b)| a.re * b.im - a.im * b.re));
        Complex::new(re * w, im * w)
    }

    /// Energy of `f` by FFT convolution.
    pub fn energy(&self, f: &Field<T>) -> T {
        let phys = f.to_physical();
        let rho = density(phys.values());
        self.energy_of_density(&rho).0
    }

    /// Returns the energy of the density together with its potential.
    pub(crate) fn energy_of_density(&self, rho: &[Complex<T>]) -> (T, Vec<Complex<T>>) {
        let v = self.potential(rho);
        let w = T::lit(self.grid.cell_volume());
        let e = compensated_sum(rho.iter().zip(&v).map(|(r, p)| r.re * p.re)) * w;
        (e, v)
    }

    /// Energy of `f` by the explicit double sum. Row sums run in parallel and
    /// are combined in index order, so the result does not depend on the
    /// number of worker threads.
    pub fn energy_direct(&self, f: &Field<T>) -> Result<T> {
        let cells = self.grid.len();
        if cells > DIRECT_MAX_CELLS {
            return Err(Error::GridTooLarge { cells });
        }
        let phys = f.to_physical();
        let rho: Vec<f64> = phys.values().iter().map(|v| v.norm_sqr().as_f64()).collect();
        let d = self.grid.dim();
        let multi: Vec<[i64; 3]> = (0..cells)
            .map(|i| {
                let m = self.grid.unravel(i);
                [m[0] as i64, m[1] as i64, m[2] as i64]
            })
            .collect();
        let h = self.grid.spacing(0);
        // kernel table indexed by displacement + (n − 1) per axis
        let n = self.grid.n() as i64;
        let side = (2 * n - 1) as usize;
        let table: Vec<f64> = (0..side.pow(d as u32))
            .map(|t| {
                let mut rest = t;
                let mut m = [0i64; 3];
                for a in (0..d).rev() {
                    m[a] = (rest % side) as i64 - (n - 1);
                    rest /= side;
                }
                kernel_value(m, h, self.lambda, self.singular)
            })
            .collect();
        let rows: Vec<f64> = (0..cells)
            .into_par_iter()
            .map(|i| {
                if rho[i] == 0.0 {
                    return 0.0;
                }
                let mi = multi[i];
                let terms = (0..cells).map(|j| {
                    let mj = multi[j];
                    let mut t = 0usize;
                    for a in 0..d {
                        t = t * side + (mi[a] - mj[a] + n - 1) as usize;
                    }
                    table[t] * rho[j]
                });
                rho[i] * compensated_sum(terms)
            })
            .collect();
        let w = self.grid.cell_volume();
        Ok(T::lit(compensated_sum(rows) * w * w))
    }

    fn padded_index(&self, idx: usize) -> usize {
        let m = self.grid.unravel(idx);
        let mut out = 0;
        for &c in &m[..self.grid.dim()] {
            out = out * self.padded + c;
        }
        out
    }
}

/// `|f|²` as a complex array with zero imaginary part.
pub(crate) fn density<T: Real>(values: &[Complex<T>]) -> Vec<Complex<T>> {
    values
        .iter()
        .map(|v| Complex::new(v.norm_sqr(), T::zero()))
        .collect()
}

/// Signed displacement (in cells) for a flat index on the doubled grid.
fn padded_displacement(idx: usize, padded: usize, d: usize) -> [i64; 3] {
    let half = (padded / 2) as i64;
    let mut rest = idx;
    let mut m = [0i64; 3];
    for a in (0..d).rev() {
        let c = (rest % padded) as i64;
        rest /= padded;
        m[a] = if c < half { c } else { c - padded as i64 };
    }
    m
}

fn kernel_value(m: [i64; 3], h: f64, lambda: f64, singular: f64) -> f64 {
    let r2 = (m[0] * m[0] + m[1] * m[1] + m[2] * m[2]) as f64;
    if r2 == 0.0 {
        singular
    } else {
        (h * h * r2).powf(-lambda / 2.0)
    }
}

/// `∬ |f(x)|² |f(y)|² |x − y|^{−λ} dx dy` on the grid.
pub fn riesz_energy<T: Real>(f: &Field<T>, lambda: f64, method: RieszMethod) -> Result<T> {
    let kernel = RieszKernel::new(f.grid(), lambda)?;
    match method {
        RieszMethod::Fourier => Ok(kernel.energy(f)),
        RieszMethod::Direct => kernel.energy_direct(f),
    }
}
