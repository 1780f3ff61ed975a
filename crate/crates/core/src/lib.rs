//! Spectral optimization of interpolation-inequality quotients.
//!
//! The crate discretizes ℝ^d (d ≤ 3) by a periodic box and provides
//!
//! * [`spectral`]: grids, complex fields, Fourier transforms and `|ξ|^σ` multipliers;
//! * [`functionals`]: `L^p` norms, homogeneous Sobolev seminorms, the Riesz double
//!   integral, the Gagliardo–Nirenberg and Riesz-energy quotients and their gradients;
//! * [`regimes`]: the exponent algebra that fixes `θ` and classifies parameter tuples;
//! * [`solver`]: gauge-fixed gradient ascent for extremizers, translation recentering
//!   and the closed-form endpoint family;
//! * [`lemmas`]: numerical checks of the supporting lemmas (pqr superlevel bound,
//!   non-local Brézis–Lieb splitting, kernel Cauchy–Schwarz, refined Sobolev ratio).
//!
//! All field math is generic over [`Real`] (`f32` or `f64`). The `*64` aliases below
//! are what the command-line front end uses.

pub mod error;
pub mod functionals;
pub mod lemmas;
pub mod regimes;
pub mod scalar;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};
pub use regimes::{GnParams, RegimeClass, RieszParams};
pub use scalar::{Complex, Real};
pub use spectral::{Grid, Space};

pub type Field64 = spectral::Field<f64>;
pub type Field32 = spectral::Field<f32>;
pub type OptimizationReport64 = solver::OptimizationReport<f64>;
pub type RieszKernel64 = functionals::RieszKernel<f64>;
