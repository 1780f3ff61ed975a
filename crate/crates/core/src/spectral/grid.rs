use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Periodic rectangular discretization of a box in ℝ^d, `d ∈ {1, 2, 3}`.
///
/// Samples sit at `x_j = (j − n/2)·h` per axis, so index `n/2` is the origin.
/// Storage is row-major with the last axis fastest.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    dim: usize,
    n: usize,
    lengths: [f64; 3],
}

fn is_five_smooth(mut n: usize) -> bool {
    for p in [2, 3, 5] {
        while n.is_multiple_of(p) {
            n /= p;
        }
    }
    n == 1
}

impl Grid {
    /// Isotropic grid with box side `length` on every axis.
    pub fn new(dim: usize, n: usize, length: f64) -> Result<Self> {
        Self::with_lengths(dim, n, &vec![length; dim.clamp(1, 3)])
    }

    pub fn with_lengths(dim: usize, n: usize, lengths: &[f64]) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidGrid(format!("dimension {dim} not in 1..=3")));
        }
        if n < 8 || !n.is_multiple_of(2) || !is_five_smooth(n) {
            return Err(Error::InvalidGrid(format!(
                "n = {n} must be an even 5-smooth integer >= 8 (powers of two preferred)"
            )));
        }
        if lengths.len() != dim {
            return Err(Error::InvalidGrid(format!(
                "{} box lengths given for dimension {dim}",
                lengths.len()
            )));
        }
        let mut ls = [0.0; 3];
        for (slot, &l) in ls.iter_mut().zip(lengths) {
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::InvalidGrid(format!("box length {l} must be positive")));
            }
            *slot = l;
        }
        Ok(Self { dim, n, lengths: ls })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths[..self.dim]
    }

    /// Total number of cells, `n^d`.
    #[inline]
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn spacing(&self, axis: usize) -> f64 {
        self.lengths[axis] / self.n as f64
    }

    pub fn is_isotropic(&self) -> bool {
        self.lengths().iter().all(|&l| l == self.lengths[0])
    }

    pub fn cell_volume(&self) -> f64 {
        (0..self.dim).map(|a| self.spacing(a)).product()
    }

    pub fn box_volume(&self) -> f64 {
        self.lengths().iter().product()
    }

    /// Physical coordinate of sample `j` along `axis`.
    #[inline]
    pub fn coordinate(&self, axis: usize, j: usize) -> f64 {
        (j as f64 - (self.n / 2) as f64) * self.spacing(axis)
    }

    /// Signed lattice index of FFT slot `j`: `0, 1, …, n/2−1, −n/2, …, −1`.
    #[inline]
    pub fn frequency_index(&self, j: usize) -> i64 {
        if j < self.n / 2 {
            j as i64
        } else {
            j as i64 - self.n as i64
        }
    }

    /// Angular wavenumber `ξ = 2πk/L` of FFT slot `j` along `axis`.
    #[inline]
    pub fn wavenumber(&self, axis: usize, j: usize) -> f64 {
        2.0 * PI * self.frequency_index(j) as f64 / self.lengths[axis]
    }

    /// Multi-index of a flat row-major offset (unused axes are 0).
    #[inline]
    pub fn unravel(&self, mut idx: usize) -> [usize; 3] {
        let mut out = [0; 3];
        for a in (0..self.dim).rev() {
            out[a] = idx % self.n;
            idx /= self.n;
        }
        out
    }

    #[inline]
    pub fn ravel(&self, multi: &[usize]) -> usize {
        multi[..self.dim].iter().fold(0, |acc, &j| acc * self.n + j)
    }

    /// Physical position of a flat offset.
    pub fn position(&self, idx: usize) -> [f64; 3] {
        let m = self.unravel(idx);
        let mut x = [0.0; 3];
        for a in 0..self.dim {
            x[a] = self.coordinate(a, m[a]);
        }
        x
    }

    /// Wave vector of a flat offset interpreted in FFT order.
    pub fn wave_vector(&self, idx: usize) -> [f64; 3] {
        let m = self.unravel(idx);
        let mut xi = [0.0; 3];
        for a in 0..self.dim {
            xi[a] = self.wavenumber(a, m[a]);
        }
        xi
    }

    /// `|ξ|` for every cell in FFT order.
    pub fn abs_wavenumbers(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| {
                let xi = self.wave_vector(i);
                (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt()
            })
            .collect()
    }

    /// Smallest nonzero `|ξ|` on the lattice.
    pub fn min_wavenumber(&self) -> f64 {
        self.lengths()
            .iter()
            .map(|l| 2.0 * PI / l)
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest `|ξ|` on the lattice (corner Nyquist mode).
    pub fn max_wavenumber(&self) -> f64 {
        self.lengths()
            .iter()
            .map(|l| PI * self.n as f64 / l)
            .map(|k| k * k)
            .sum::<f64>()
            .sqrt()
    }

    /// The same box with `factor` times as many points per axis.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        Self::with_lengths(self.dim, self.n * factor, self.lengths())
    }

    /// Rounds a shift to whole cells if it is within `1e-9` cells of the lattice.
    pub fn lattice_steps(&self, shift: &[f64]) -> Option<[i64; 3]> {
        let mut steps = [0i64; 3];
        for a in 0..self.dim {
            let cells = shift.get(a).copied().unwrap_or(0.0) / self.spacing(a);
            let rounded = cells.round();
            if (cells - rounded).abs() > 1e-9 {
                return None;
            }
            steps[a] = rounded as i64;
        }
        Some(steps)
    }
}

/// Builds an isotropic grid; alias of [`Grid::new`].
pub fn make_grid(dim: usize, n: usize, length: f64) -> Result<Grid> {
    Grid::new(dim, n, length)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_lattice() {
        let g = make_grid(1, 8, 2.0 * PI).unwrap();
        assert!((g.spacing(0) - PI / 4.0).abs() < 1e-15);
        let mut ks: Vec<f64> = (0..8).map(|j| g.wavenumber(0, j)).collect();
        ks.sort_by(f64::total_cmp);
        let expected: Vec<f64> = (-4..4).map(|k| k as f64).collect();
        for (k, e) in ks.iter().zip(&expected) {
            assert!((k - e).abs() < 1e-14);
        }
        assert_eq!(g.coordinate(0, 4), 0.0);
    }

    #[test]
    fn three_dimensional_cells() {
        let g = make_grid(3, 16, 20.0).unwrap();
        assert_eq!(g.len(), 4096);
        assert_eq!(g.spacing(0), 1.25);
        assert!((g.cell_volume() - 1.25f64.powi(3)).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(make_grid(1, 7, 2.0 * PI).is_err());
        assert!(make_grid(4, 8, 1.0).is_err());
        assert!(make_grid(2, 8, 0.0).is_err());
        assert!(make_grid(2, 8, -1.0).is_err());
        assert!(make_grid(1, 4, 1.0).is_err());
        assert!(make_grid(1, 14, 1.0).is_err());
        assert!(make_grid(3, 48, 24.0).is_ok());
    }

    #[test]
    fn ravel_round_trip() {
        let g = make_grid(3, 8, 1.0).unwrap();
        for idx in [0, 1, 9, 77, 511] {
            assert_eq!(g.ravel(&g.unravel(idx)), idx);
        }
    }

    #[test]
    fn lattice_symmetric_except_nyquist() {
        let g = make_grid(1, 16, 3.0).unwrap();
        let ks: Vec<i64> = (0..16).map(|j| g.frequency_index(j)).collect();
        for &k in &ks {
            if k != -8 {
                assert!(ks.contains(&-k));
            }
        }
        assert!(!ks.contains(&8));
    }
}
