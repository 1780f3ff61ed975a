//! Multi-dimensional complex FFT on cubic row-major arrays.

use std::sync::Arc;

use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::scalar::{Complex, Real};

/// Forward/inverse plans for an `n^dim` cube.
#[derive(Clone)]
pub struct CubeFft<T: Real> {
    n: usize,
    dim: usize,
    forward: Arc<dyn Fft<T>>,
    inverse: Arc<dyn Fft<T>>,
}

impl<T: Real> CubeFft<T> {
    pub fn new(n: usize, dim: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            n,
            dim,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Unnormalized forward DFT over every axis.
    pub fn forward(&self, data: &mut [Complex<T>]) {
        self.forward_pruned(data, self.n);
    }

    /// Unnormalized inverse DFT over every axis.
    pub fn inverse(&self, data: &mut [Complex<T>]) {
        self.inverse_pruned(data, self.n);
    }

    /// Forward DFT of an array known to vanish outside the corner block
    /// `[0, active)^dim`. Lines that are still identically zero are skipped.
    pub fn forward_pruned(&self, data: &mut [Complex<T>], active: usize) {
        for axis in (0..self.dim).rev() {
            self.axis_pass(data, axis, active, &self.forward);
        }
    }

    /// Inverse DFT whose result is only needed on the corner block
    /// `[0, active)^dim`; values outside the block are left unspecified.
    pub fn inverse_pruned(&self, data: &mut [Complex<T>], active: usize) {
        for axis in 0..self.dim {
            self.axis_pass(data, axis, active, &self.inverse);
        }
    }

    fn axis_pass(&self, data: &mut [Complex<T>], axis: usize, active: usize, fft: &Arc<dyn Fft<T>>) {
        assert_eq!(data.len(), self.len());
        let n = self.n;
        let stride = n.pow((self.dim - 1 - axis) as u32);
        let block = n * stride;
        let scratch_len = fft.get_inplace_scratch_len();
        data.par_chunks_mut(block)
            .enumerate()
            .for_each(|(outer, chunk)| {
                // outer enumerates the coordinates on axes < axis, base n
                let mut o = outer;
                for _ in 0..axis {
                    if o % n >= active {
                        return;
                    }
                    o /= n;
                }
                let mut scratch = vec![Complex::default(); scratch_len];
                if stride == 1 {
                    fft.process_with_scratch(chunk, &mut scratch);
                    return;
                }
                let mut lines = vec![Complex::default(); block];
                for j in 0..n {
                    let row = &chunk[j * stride..(j + 1) * stride];
                    for (i, v) in row.iter().enumerate() {
                        lines[i * n + j] = *v;
                    }
                }
                fft.process_with_scratch(&mut lines, &mut scratch);
                for j in 0..n {
                    let row = &mut chunk[j * stride..(j + 1) * stride];
                    for (i, v) in row.iter_mut().enumerate() {
                        *v = lines[i * n + j];
                    }
                }
            });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_dft_1d(x: &[Complex<f64>]) -> Vec<Complex<f64>> {
        let n = x.len();
        (0..n)
            .map(|k| {
                x.iter()
                    .enumerate()
                    .map(|(j, v)| {
                        let ang = -2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64;
                        v * Complex::new(ang.cos(), ang.sin())
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft_in_2d() {
        let n = 8;
        let plan = CubeFft::<f64>::new(n, 2);
        let data: Vec<Complex<f64>> = (0..n * n)
            .map(|i| Complex::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()))
            .collect();
        let mut fast = data.clone();
        plan.forward(&mut fast);
        // rows then columns
        let mut rows: Vec<Complex<f64>> = Vec::new();
        for r in 0..n {
            rows.extend(naive_dft_1d(&data[r * n..(r + 1) * n]));
        }
        let mut slow = rows.clone();
        for c in 0..n {
            let col: Vec<_> = (0..n).map(|r| rows[r * n + c]).collect();
            for (r, v) in naive_dft_1d(&col).into_iter().enumerate() {
                slow[r * n + c] = v;
            }
        }
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn pruned_transforms_agree_with_full_ones() {
        let n = 8;
        let active = 4;
        let plan = CubeFft::<f64>::new(n, 3);
        let mut data = vec![Complex::default(); n * n * n];
        for i in 0..active {
            for j in 0..active {
                for k in 0..active {
                    data[(i * n + j) * n + k] = Complex::new((i + 2 * j) as f64, k as f64 - 1.5);
                }
            }
        }
        let mut full = data.clone();
        plan.forward(&mut full);
        let mut pruned = data.clone();
        plan.forward_pruned(&mut pruned, active);
        for (a, b) in full.iter().zip(&pruned) {
            assert!((a - b).norm() < 1e-10);
        }
        plan.inverse(&mut full);
        plan.inverse_pruned(&mut pruned, active);
        for i in 0..active {
            for j in 0..active {
                for k in 0..active {
                    let idx = (i * n + j) * n + k;
                    assert!((full[idx] - pruned[idx]).norm() < 1e-9);
                    assert!((full[idx] / 512.0 - data[idx]).norm() < 1e-12);
                }
            }
        }
    }
}
