//! The two interpolation quotients and the gradients of their logarithms.
//!
//! Gradients follow the conjugate-variation convention: for a direction `h`,
//! `d/dε log Q(f + εh)|₀ = Re⟨h, G⟩` with `⟨a, b⟩ = h^d Σ conj(a_i) b_i`.

use super::norms::{lp_of_samples, sobolev_sq_of_spectrum};
use super::riesz::{density, RieszKernel};
use crate::error::{Error, Result};
use crate::regimes::{GnParams, RieszParams};
use crate::scalar::{Complex, Real};
use crate::spectral::{forward_in_place, inverse_in_place, Field, Grid, Space};

/// A scale-invariant quotient that the optimizer can ascend.
pub trait Objective<T: Real>: Sync {
    fn grid(&self) -> &Grid;

    /// The Sobolev order `s` of the `Ḣ^s` term, used for the gauge and the preconditioner.
    fn sobolev_order(&self) -> f64;

    fn value(&self, f: &Field<T>) -> Result<T>;

    /// The quotient and the gradient of its logarithm, in physical space.
    fn value_and_gradient(&self, f: &Field<T>) -> Result<(T, Field<T>)>;

    /// `‖f‖_p` for GN, the Riesz energy for the Riesz quotient; recorded as a second gauge residual.
    fn secondary_norm(&self, f: &Field<T>) -> Result<T>;
}

fn check_grid(grid: &Grid, f: &Field<impl Real>, d: usize) -> Result<()> {
    if grid.dim() != d {
        return Err(Error::InvalidParameter(format!(
            "parameters are for d = {d}, grid has d = {}",
            grid.dim()
        )));
    }
    if f.grid() != grid {
        return Err(Error::GridMismatch);
    }
    Ok(())
}

/// `x·|x|^{e}`, with `0` at `x = 0`.
#[inline]
fn scaled_power<T: Real>(v: Complex<T>, e: T) -> Complex<T> {
    let a = v.norm();
    if a == T::zero() {
        Complex::default()
    } else {
        v * a.powf(e)
    }
}

fn symbol_table<T: Real>(abs_xi: &[f64], order: f64) -> Vec<T> {
    abs_xi
        .iter()
        .map(|&k| {
            if order == 0.0 {
                T::one()
            } else if k == 0.0 {
                T::zero()
            } else {
                T::lit(k.powf(order))
            }
        })
        .collect()
}

fn multiply<T: Real>(values: &mut [Complex<T>], symbol: &[T]) {
    values.iter_mut().zip(symbol).for_each(|(v, s)| *v = *v * *s);
}

/// Norms that make up the Gagliardo–Nirenberg quotient.
#[derive(Clone, Copy, Debug)]
pub struct GnTerms<T> {
    /// `‖D^r f‖_q`
    pub derivative: T,
    /// `‖f‖_p`
    pub lebesgue: T,
    /// `‖D^s f‖₂`
    pub sobolev: T,
    pub quotient: T,
}

/// `‖D^r φ‖_q / (‖φ‖_p^{1−θ} ‖D^s φ‖₂^θ)` on a fixed grid.
pub struct GnObjective<T: Real> {
    grid: Grid,
    params: GnParams,
    abs_xi: Vec<f64>,
    sym_r: Vec<T>,
    sym_2s: Vec<T>,
}

impl<T: Real> GnObjective<T> {
    /// Fails for tuples the regime algebra classifies as invalid.
    pub fn new(grid: &Grid, params: GnParams) -> Result<Self> {
        let class = params.classify();
        if class.is_invalid() {
            return Err(Error::InvalidParameter(class.reason().unwrap_or("invalid").to_string()));
        }
        if grid.dim() != params.d {
            return Err(Error::InvalidParameter(format!(
                "parameters are for d = {}, grid has d = {}",
                params.d,
                grid.dim()
            )));
        }
        let abs_xi = grid.abs_wavenumbers();
        Ok(Self {
            grid: *grid,
            params,
            sym_r: symbol_table(&abs_xi, params.r),
            sym_2s: symbol_table(&abs_xi, 2.0 * params.s),
            abs_xi,
        })
    }

    pub fn params(&self) -> &GnParams {
        &self.params
    }

    /// Returns `(physical f, f̂, D^r f)`.
    fn prepare(&self, f: &Field<T>) -> Result<(Vec<Complex<T>>, Vec<Complex<T>>, Vec<Complex<T>>)> {
        check_grid(&self.grid, f, self.params.d)?;
        let phys = f.to_physical().into_values();
        if phys.iter().all(|v| v.norm_sqr() == T::zero()) {
            return Err(Error::ZeroField);
        }
        let mut hat = phys.clone();
        forward_in_place(&self.grid, &mut hat);
        let dr = if self.params.r == 0.0 {
            phys.clone()
        } else {
            let mut g = hat.clone();
            multiply(&mut g, &self.sym_r);
            inverse_in_place(&self.grid, &mut g);
            g
        };
        Ok((phys, hat, dr))
    }

    fn terms_from(&self, phys: &[Complex<T>], hat: &[Complex<T>], dr: &[Complex<T>]) -> Result<GnTerms<T>> {
        let p = &self.params;
        let derivative = lp_of_samples(&self.grid, dr, p.q);
        let lebesgue = lp_of_samples(&self.grid, phys, p.p);
        let sobolev = sobolev_sq_of_spectrum(&self.abs_xi, hat, p.s, self.grid.box_volume()).sqrt();
        if derivative == T::zero() {
            return Err(Error::VanishingNorm("‖D^r f‖_q"));
        }
        if lebesgue == T::zero() {
            return Err(Error::VanishingNorm("‖f‖_p"));
        }
        if sobolev == T::zero() {
            return Err(Error::VanishingNorm("‖D^s f‖_2"));
        }
        let th = T::lit(p.theta);
        let quotient = derivative / (lebesgue.powf(T::one() - th) * sobolev.powf(th));
        Ok(GnTerms {
            derivative,
            lebesgue,
            sobolev,
            quotient,
        })
    }

    pub fn terms(&self, f: &Field<T>) -> Result<GnTerms<T>> {
        let (phys, hat, dr) = self.prepare(f)?;
        self.terms_from(&phys, &hat, &dr)
    }
}

impl<T: Real> Objective<T> for GnObjective<T> {
    fn grid(&self) -> &Grid {
        &self.grid
    }

    fn sobolev_order(&self) -> f64 {
        self.params.s
    }

    fn value(&self, f: &Field<T>) -> Result<T> {
        Ok(self.terms(f)?.quotient)
    }

    fn value_and_gradient(&self, f: &Field<T>) -> Result<(T, Field<T>)> {
        let (phys, hat, dr) = self.prepare(f)?;
        let t = self.terms_from(&phys, &hat, &dr)?;
        let p = &self.params;
        let th = T::lit(p.theta);

        // A = D^r(|D^r f|^{q−2} D^r f)
        let mut a: Vec<Complex<T>> = dr.iter().map(|v| scaled_power(*v, T::lit(p.q - 2.0))).collect();
        if p.r != 0.0 {
            forward_in_place(&self.grid, &mut a);
            multiply(&mut a, &self.sym_r);
            inverse_in_place(&self.grid, &mut a);
        }
        // C = D^{2s} f
        let mut c = hat;
        multiply(&mut c, &self.sym_2s);
        inverse_in_place(&self.grid, &mut c);

        let wa = T::one() / t.derivative.powf(T::lit(p.q));
        let wb = (T::one() - th) / t.lebesgue.powf(T::lit(p.p));
        let wc = th / (t.sobolev * t.sobolev);
        let pe = T::lit(p.p - 2.0);
        let g: Vec<Complex<T>> = a
            .iter()
            .zip(&phys)
            .zip(&c)
            .map(|((a, f), c)| *a * wa - scaled_power(*f, pe) * wb - *c * wc)
            .collect();
        Ok((t.quotient, Field::new(self.grid, g, Space::Physical)?))
    }

    fn secondary_norm(&self, f: &Field<T>) -> Result<T> {
        Ok(self.terms(f)?.lebesgue)
    }
}

/// Norms that make up the Riesz-energy quotient.
#[derive(Clone, Copy, Debug)]
pub struct RieszTerms<T> {
    /// `‖f‖_{2p}`
    pub lebesgue: T,
    /// `‖f‖_{Ḣ^s}`
    pub sobolev: T,
    /// `∬ |f(x)|²|f(y)|² |x − y|^{−λ}`
    pub energy: T,
    pub quotient: T,
}

/// `‖φ‖_{2p} / (‖φ‖_{Ḣ^s}^{θ/(2−θ)} E_λ(φ)^{(1−θ)/(4−2θ)})` on a fixed grid.
pub struct RieszObjective<T: Real> {
    grid: Grid,
    params: RieszParams,
    theta: f64,
    abs_xi: Vec<f64>,
    sym_2s: Vec<T>,
    kernel: RieszKernel<T>,
}

impl<T: Real> RieszObjective<T> {
    /// Fails for invalid tuples and for the degenerate algebra where `θ` is undefined.
    pub fn new(grid: &Grid, params: RieszParams) -> Result<Self> {
        let class = params.classify();
        if class.is_invalid() {
            return Err(Error::InvalidParameter(class.reason().unwrap_or("invalid").to_string()));
        }
        if !params.p.is_finite() {
            return Err(Error::InvalidParameter("p = ∞ has no finite L^{2p} norm to evaluate".into()));
        }
        let theta = params.theta_value()?;
        if grid.dim() != params.d {
            return Err(Error::InvalidParameter(format!(
                "parameters are for d = {}, grid has d = {}",
                params.d,
                grid.dim()
            )));
        }
        let abs_xi = grid.abs_wavenumbers();
        Ok(Self {
            grid: *grid,
            params,
            theta,
            sym_2s: symbol_table(&abs_xi, 2.0 * params.s),
            abs_xi,
            kernel: RieszKernel::new(grid, params.lambda)?,
        })
    }

    pub fn params(&self) -> &RieszParams {
        &self.params
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn kernel(&self) -> &RieszKernel<T> {
        &self.kernel
    }

    /// Exponents `(θ/(2−θ), (1−θ)/(4−2θ))`.
    pub fn exponents(&self) -> (f64, f64) {
        let th = self.theta;
        (th / (2.0 - th), (1.0 - th) / (4.0 - 2.0 * th))
    }

    #[allow(clippy::type_complexity)]
    fn evaluate(&self, f: &Field<T>) -> Result<(RieszTerms<T>, Vec<Complex<T>>, Vec<Complex<T>>, Vec<Complex<T>>)> {
        check_grid(&self.grid, f, self.params.d)?;
        let phys = f.to_physical().into_values();
        if phys.iter().all(|v| v.norm_sqr() == T::zero()) {
            return Err(Error::ZeroField);
        }
        let mut hat = phys.clone();
        forward_in_place(&self.grid, &mut hat);
        let lebesgue = lp_of_samples(&self.grid, &phys, 2.0 * self.params.p);
        let sobolev = sobolev_sq_of_spectrum(&self.abs_xi, &hat, self.params.s, self.grid.box_volume()).sqrt();
        let (energy, potential) = self.kernel.energy_of_density(&density(&phys));
        if sobolev == T::zero() {
            return Err(Error::VanishingNorm("‖f‖_{Ḣ^s}"));
        }
        if !(energy > T::zero()) {
            return Err(Error::VanishingNorm("Riesz energy"));
        }
        let (ea, eb) = self.exponents();
        let quotient = lebesgue / (sobolev.powf(T::lit(ea)) * energy.powf(T::lit(eb)));
        Ok((
            RieszTerms {
                lebesgue,
                sobolev,
                energy,
                quotient,
            },
            phys,
            hat,
            potential,
        ))
    }

    pub fn terms(&self, f: &Field<T>) -> Result<RieszTerms<T>> {
        Ok(self.evaluate(f)?.0)
    }
}

impl<T: Real> Objective<T> for RieszObjective<T> {
    fn grid(&self) -> &Grid {
        &self.grid
    }

    fn sobolev_order(&self) -> f64 {
        self.params.s
    }

    fn value(&self, f: &Field<T>) -> Result<T> {
        Ok(self.terms(f)?.quotient)
    }

    fn value_and_gradient(&self, f: &Field<T>) -> Result<(T, Field<T>)> {
        let (t, phys, hat, potential) = self.evaluate(f)?;
        let (ea, eb) = self.exponents();
        let two_p = 2.0 * self.params.p;
        let mut c = hat;
        multiply(&mut c, &self.sym_2s);
        inverse_in_place(&self.grid, &mut c);
        let wa = T::one() / t.lebesgue.powf(T::lit(two_p));
        let wc = T::lit(ea) / (t.sobolev * t.sobolev);
        let we = T::lit(4.0 * eb) / t.energy;
        let pe = T::lit(two_p - 2.0);
        let g: Vec<Complex<T>> = phys
            .iter()
            .zip(&c)
            .zip(&potential)
            .map(|((f, c), v)| scaled_power(*f, pe) * wa - *c * wc - *f * v.re * we)
            .collect();
        Ok((t.quotient, Field::new(self.grid, g, Space::Physical)?))
    }

    fn secondary_norm(&self, f: &Field<T>) -> Result<T> {
        Ok(self.terms(f)?.energy)
    }
}

/// The Gagliardo–Nirenberg quotient of `f`.
pub fn gn_quotient<T: Real>(f: &Field<T>, params: &GnParams) -> Result<T> {
    GnObjective::new(f.grid(), *params)?.value(f)
}

/// The Riesz-energy quotient of `f`, with the energy evaluated by FFT.
pub fn riesz_quotient<T: Real>(f: &Field<T>, params: &RieszParams) -> Result<T> {
    RieszObjective::new(f.grid(), *params)?.value(f)
}

/// Gradient of `log gn_quotient` with respect to `conj(f)`.
pub fn gn_gradient<T: Real>(f: &Field<T>, params: &GnParams) -> Result<Field<T>> {
    Ok(GnObjective::new(f.grid(), *params)?.value_and_gradient(f)?.1)
}

/// Gradient of `log riesz_quotient` with respect to `conj(f)`.
pub fn riesz_gradient<T: Real>(f: &Field<T>, params: &RieszParams) -> Result<Field<T>> {
    Ok(RieszObjective::new(f.grid(), *params)?.value_and_gradient(f)?.1)
}

/// Variation of the Riesz energy alone: `4 (K ⋆ |f|²) f`.
pub fn riesz_energy_gradient<T: Real>(f: &Field<T>, kernel: &RieszKernel<T>) -> Result<Field<T>> {
    if f.grid() != kernel.grid() {
        return Err(Error::GridMismatch);
    }
    let phys = f.to_physical().into_values();
    let v = kernel.potential(&density(&phys));
    let four = T::lit(4.0);
    let g = phys.iter().zip(&v).map(|(f, v)| *f * v.re * four).collect();
    Field::new(*f.grid(), g, Space::Physical)
}
