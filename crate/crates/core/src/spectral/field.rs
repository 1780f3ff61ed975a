use serde::{Deserialize, Serialize};

use super::fft::CubeFft;
use super::grid::Grid;
use crate::error::{Error, Result};
use crate::scalar::{compensated_sum, Complex, Real};

/// Which representation a [`Field`] currently holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Space {
    Physical,
    Frequency,
}

/// Complex samples on a [`Grid`].
///
/// In frequency space the values approximate `f̂(ξ) = ∫ f(x) e^{−iξ·x} dx` at the
/// lattice wave vectors, stored in FFT order. With this convention
/// `‖f‖₂² = L^{−d} Σ |f̂_k|²` and every Fourier multiplier acts with its textbook symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct Field<T: Real> {
    grid: Grid,
    values: Vec<Complex<T>>,
    space: Space,
}

/// `(−1)^{Σ j_a}`: the phase `e^{−iξ·x₀}` for the box corner `x₀ = −L/2`.
fn corner_phase_is_negative(grid: &Grid, idx: usize) -> bool {
    grid.unravel(idx)[..grid.dim()].iter().sum::<usize>() % 2 == 1
}

pub(crate) fn forward_in_place<T: Real>(grid: &Grid, values: &mut [Complex<T>]) {
    CubeFft::new(grid.n(), grid.dim()).forward(values);
    let w = T::lit(grid.cell_volume());
    for (idx, v) in values.iter_mut().enumerate() {
        *v = if corner_phase_is_negative(grid, idx) { -*v * w } else { *v * w };
    }
}

pub(crate) fn inverse_in_place<T: Real>(grid: &Grid, values: &mut [Complex<T>]) {
    let w = T::one() / T::lit(grid.box_volume());
    for (idx, v) in values.iter_mut().enumerate() {
        *v = if corner_phase_is_negative(grid, idx) { -*v * w } else { *v * w };
    }
    CubeFft::new(grid.n(), grid.dim()).inverse(values);
}

impl<T: Real> Field<T> {
    pub fn new(grid: Grid, values: Vec<Complex<T>>, space: Space) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "{} values for a grid of {} cells",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values, space })
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![Complex::default(); grid.len()],
            space: Space::Physical,
        }
    }

    /// Samples `f` at every grid position.
    pub fn from_fn(grid: Grid, f: impl Fn([f64; 3]) -> Complex<T>) -> Self {
        let values = (0..grid.len()).map(|i| f(grid.position(i))).collect();
        Self {
            grid,
            values,
            space: Space::Physical,
        }
    }

    pub fn from_real_fn(grid: Grid, f: impl Fn([f64; 3]) -> f64) -> Self {
        Self::from_fn(grid, |x| Complex::new(T::lit(f(x)), T::zero()))
    }

    #[inline]
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    #[inline]
    pub fn space(&self) -> Space {
        self.space
    }

    #[inline]
    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    #[inline]
    pub fn values_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    pub fn into_frequency(mut self) -> Self {
        if self.space == Space::Physical {
            forward_in_place(&self.grid, &mut self.values);
            self.space = Space::Frequency;
        }
        self
    }

    pub fn into_physical(mut self) -> Self {
        if self.space == Space::Frequency {
            inverse_in_place(&self.grid, &mut self.values);
            self.space = Space::Physical;
        }
        self
    }

    pub fn to_frequency(&self) -> Self {
        self.clone().into_frequency()
    }

    pub fn to_physical(&self) -> Self {
        self.clone().into_physical()
    }

    pub fn into_space(self, space: Space) -> Self {
        match space {
            Space::Physical => self.into_physical(),
            Space::Frequency => self.into_frequency(),
        }
    }

    pub fn scaled(&self, c: T) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v = *v * c);
        out
    }

    pub fn scaled_complex(&self, c: Complex<T>) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v = *v * c);
        out
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    /// `self + c·other`, in the representation of `self`.
    pub fn add_scaled(&self, other: &Self, c: T) -> Result<Self> {
        self.check_compatible(other)?;
        let other = other.clone().into_space(self.space);
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            *a = *a + *b * c;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, T::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, -T::one())
    }

    /// `⟨self, other⟩ = ∫ conj(self)·other dx`, evaluated in whichever space `self` is in.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        self.check_compatible(other)?;
        let other = other.clone().into_space(self.space);
        let weight = match self.space {
            Space::Physical => T::lit(self.grid.cell_volume()),
            Space::Frequency => T::one() / T::lit(self.grid.box_volume()),
        };
        let re = compensated_sum(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.re * b.re + a.im * b.im),
        );
        let im = compensated_sum(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.re * b.im - a.im * b.re),
        );
        Ok(Complex::new(re * weight, im * weight))
    }

    /// `L²` norm, computed in the field's current representation.
    pub fn l2_norm(&self) -> T {
        let weight = match self.space {
            Space::Physical => T::lit(self.grid.cell_volume()),
            Space::Frequency => T::one() / T::lit(self.grid.box_volume()),
        };
        (compensated_sum(self.values.iter().map(|v| v.norm_sqr())) * weight).sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.values
            .iter()
            .map(|v| v.norm())
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.re == T::zero() && v.im == T::zero())
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// Converts the samples to another scalar type.
    pub fn cast<U: Real>(&self) -> Field<U> {
        Field {
            grid: self.grid,
            values: self
                .values
                .iter()
                .map(|v| Complex::new(U::lit(v.re.as_f64()), U::lit(v.im.as_f64())))
                .collect(),
            space: self.space,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn round_trip_is_accurate() {
        let g = Grid::new(2, 32, 7.0).unwrap();
        let f: Field<f64> = Field::from_fn(g, |x| Complex::new((-x[0] * x[0]).exp() * x[1], x[0].sin()));
        let back = f.to_frequency().to_physical();
        let err = back.sub(&f).unwrap().l2_norm() / f.l2_norm();
        assert!(err < 1e-12, "{err}");
    }

    #[test]
    fn gaussian_transform_matches_continuum() {
        // f = e^{-x²/2}  ⇒  f̂(ξ) = √(2π) e^{-ξ²/2}
        let g = Grid::new(1, 128, 30.0).unwrap();
        let f: Field<f64> = Field::from_real_fn(g, |x| (-x[0] * x[0] / 2.0).exp());
        let fh = f.to_frequency();
        for (j, v) in fh.values().iter().enumerate() {
            let xi = g.wavenumber(0, j);
            let exact = (2.0 * PI).sqrt() * (-xi * xi / 2.0).exp();
            assert!((v.re - exact).abs() < 1e-12 && v.im.abs() < 1e-12, "{j}");
        }
    }

    #[test]
    fn plancherel() {
        let g = Grid::new(3, 16, 5.0).unwrap();
        let f: Field<f64> = Field::from_fn(g, |x| {
            Complex::new((x[0] + 2.0 * x[1]).cos() * (-(x[2] * x[2])).exp(), x[1] * 0.1)
        });
        let a = f.l2_norm();
        let b = f.to_frequency().l2_norm();
        assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn inner_product_is_conjugate_linear_in_first_slot() {
        let g = Grid::new(1, 16, 4.0).unwrap();
        let f: Field<f64> = Field::from_real_fn(g, |x| x[0].cos());
        let i = Complex::new(0.0, 1.0);
        let a = f.scaled_complex(i).inner(&f).unwrap();
        let b = f.inner(&f).unwrap();
        assert!((a - b * Complex::new(0.0, -1.0)).norm() < 1e-14);
    }
}
