//! Norms, the Riesz energy, and the two interpolation quotients.

mod norms;
mod quadrature;
mod quotient;
mod riesz;

pub use norms::{lp_norm, sobolev_seminorm};
pub use quadrature::{gauss_legendre_unit, unit_cell_average};
pub use quotient::{
    gn_gradient, gn_quotient, riesz_energy_gradient, riesz_gradient, riesz_quotient, GnObjective, GnTerms,
    Objective, RieszObjective, RieszTerms,
};
pub use riesz::{riesz_energy, RieszKernel, RieszMethod, DIRECT_MAX_CELLS};
