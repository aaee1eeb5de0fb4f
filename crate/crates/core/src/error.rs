use thiserror::Error;

/// Failures of the crossover root search.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    /// The satellite path is slower than fiber for every angle up to a full circle.
    #[error(
        "no crossover within 360 degrees (crossover ratio at 360 degrees is {ratio_at_max:.6})"
    )]
    NoCrossoverInDomain { ratio_at_max: f64 },
    /// The bisection bracket did not reach the requested width.
    #[error("bracket still {bracket_width_deg:e} degrees wide after {iterations} iterations")]
    IterationLimitExceeded {
        iterations: u32,
        bracket_width_deg: f64,
    },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("unsupported output format `{0}` (expected csv or json)")]
    UnsupportedFormat(String),
    #[error("malformed fixture: {0}")]
    Fixture(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
