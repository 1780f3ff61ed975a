use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::gn_quotient;
use crate::regimes::GnParams;
use crate::spectral::{make_profile, Field, Grid, ProfileKind};

/// One row of the endpoint table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EndpointRow {
    pub delta: f64,
    /// `((1 + δ²/3) / √(1 + 2δ² + δ⁴/5))^{1/2}`
    pub closed_form: f64,
    /// The quotient of the sampled bump on the grid.
    pub grid_value: f64,
}

/// Grid used by [`endpoint_demo`]: `n = 65536`, `L = 16384π`, so `Δξ = 1/8192`
/// and `|ξ| ≤ 4`.
pub fn endpoint_grid() -> Grid {
    Grid::new(1, 1 << 16, 16384.0 * PI).expect("valid grid")
}

/// Exponents `(d, r, s, p, q) = (1, 1, 2, 2, 2)`, where `θ = r/s = 1/2`.
pub fn endpoint_params() -> GnParams {
    GnParams::new(1, 1.0, 2.0, 2.0, 2.0).expect("valid exponents")
}

/// `‖u′‖₂ / (‖u‖₂^{1/2} ‖u″‖₂^{1/2})` for `û = χ_{(1−δ, 1+δ)}`.
pub fn endpoint_closed_form(delta: f64) -> f64 {
    let d2 = delta * delta;
    ((1.0 + d2 / 3.0) / (1.0 + 2.0 * d2 + d2 * d2 / 5.0).sqrt()).sqrt()
}

/// Evaluates the bump family on [`endpoint_grid`].
pub fn endpoint_demo(deltas: &[f64]) -> Result<Vec<EndpointRow>> {
    endpoint_demo_on(&endpoint_grid(), deltas)
}

pub fn endpoint_demo_on(grid: &Grid, deltas: &[f64]) -> Result<Vec<EndpointRow>> {
    let params = endpoint_params();
    deltas
        .iter()
        .map(|&delta| {
            if !(delta > 0.0 && delta < 1.0) {
                return Err(Error::InvalidParameter(format!("δ = {delta} not in (0, 1)")));
            }
            let f: Field<f64> = make_profile(grid, ProfileKind::FourierBump { delta })?;
            Ok(EndpointRow {
                delta,
                closed_form: endpoint_closed_form(delta),
                grid_value: gn_quotient(&f, &params)?,
            })
        })
        .collect()
}

/// Both columns stay below 1 and increase strictly as `δ` decreases.
pub fn endpoint_table_is_monotone(rows: &[EndpointRow]) -> bool {
    let mut sorted: Vec<&EndpointRow> = rows.iter().collect();
    sorted.sort_by(|a, b| b.delta.total_cmp(&a.delta));
    sorted.iter().all(|r| r.closed_form < 1.0 && r.grid_value < 1.0)
        && sorted
            .windows(2)
            .all(|w| w[1].closed_form > w[0].closed_form && w[1].grid_value > w[0].grid_value)
}
