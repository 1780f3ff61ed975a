//! Extremizer search, recentering and the endpoint family.

mod endpoint;
mod optimize;
mod recenter;

pub use endpoint::{
    endpoint_closed_form, endpoint_demo, endpoint_demo_on, endpoint_grid, endpoint_params, endpoint_table_is_monotone,
    EndpointRow,
};
pub use optimize::{
    ascend, optimize_gn, optimize_riesz, AppliedShift, Init, OptimizationReport, OptimizerConfig, MAX_HALVINGS,
    PLATEAU_ITERATIONS,
};
pub use recenter::{recenter, RecenterCase, Recentered, LOW_FREQUENCY_THRESHOLD};
