use thiserror::Error;

/// Everything that can go wrong across the crate: angle domains, state and
/// distribution validation, and search limits.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside [{min}, {max}]")]
    AngleOutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("bell state selector must be 0 or 1, got {0}")]
    BadBellIndex(u8),

    #[error("state norm is {norm}, expected 1 within {tolerance}")]
    StateNotNormalized { norm: f64, tolerance: f64 },

    #[error("invalid distribution {xi:?}: {reason}")]
    InvalidDistribution { xi: [f64; 4], reason: String },

    #[error("theta = {0} is outside [0, 0.5]")]
    ThetaOutOfRange(f64),

    #[error("sample count must be at least 1")]
    EmptySample,

    #[error("ensemble needs at least 2 angles, got {0}")]
    EnsembleTooSmall(usize),

    #[error("grid step {0} is not a positive divisor of pi")]
    BadGridStep(f64),

    #[error(
        "search size n * (pi/grid_step)^n = {size:.3e} exceeds the budget {budget:.0e} \
         (n = {n}, {points} grid points per axis); use a coarser grid or a smaller n"
    )]
    SearchTooLarge {
        n: usize,
        points: usize,
        size: f64,
        budget: f64,
    },

    #[error("steps must be at least 2, got {0}")]
    TooFewSteps(usize),
}
