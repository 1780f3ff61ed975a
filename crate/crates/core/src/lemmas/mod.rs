//! Numerical checks of the supporting lemmas.

mod besov;
mod bl;
mod cauchy_schwarz;
mod corpus;
mod pqr;
mod refined;

pub use besov::{besov_scan, besov_sup, BesovScan};
pub use bl::{bl_nonlocal_verify, log_log_slope, BLReport, CrossTerms};
pub use cauchy_schwarz::{cauchy_schwarz_sweep, riesz_cauchy_schwarz, CsSweep, CS_SLACK};
pub use corpus::{standard_corpus, CORPUS_SIZE};
pub use pqr::{feasible_case, pqr_constants, pqr_sweep, superlevel_measure, PqrCase, PqrConstants, PqrSweep};
pub use refined::{
    interm_gn_ratio, interm_gn_ratios, refined_sobolev_ratio, refined_sobolev_ratios, refined_sobolev_single,
};

pub(crate) use besov::{arg_max, scan_unchecked};
