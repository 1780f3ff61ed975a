use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("field is identically zero")]
    ZeroField,
    #[error("grid mismatch between fields")]
    GridMismatch,
    #[error("negative-order multiplier applied to a field with nonzero mean ({mean:e})")]
    NonzeroMean { mean: f64 },
    #[error("direct Riesz summation limited to 32768 cells, grid has {cells}")]
    GridTooLarge { cells: usize },
    #[error("regime not attained: {0}")]
    NotAttained(String),
    #[error("degenerate exponent algebra: {0}")]
    Degenerate(String),
    #[error("line search exhausted {halvings} halvings at iteration {iteration}")]
    StepUnderflow { iteration: usize, halvings: usize },
    #[error("vanishing norm in quotient: {0}")]
    VanishingNorm(&'static str),
    #[error("separation {separation} exceeds the wrap-free range")]
    UnsafeSeparation { separation: f64 },
    #[error("malformed field file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
