//! Grids, fields, Fourier transforms and Fourier multipliers.

mod cutoff;
mod fft;
mod field;
mod grid;
pub mod io;
mod multiplier;
mod profile;

pub use cutoff::{chi0, chi1};
pub use fft::CubeFft;
pub use field::{Field, Space};
pub(crate) use field::{forward_in_place, inverse_in_place};
pub use grid::{make_grid, Grid};
pub(crate) use multiplier::apply_radial_symbol;
pub use multiplier::{apply_multiplier, translate, MultiplierSpec, ZeroModePolicy};
pub use profile::{make_profile, random_field, ProfileKind};
