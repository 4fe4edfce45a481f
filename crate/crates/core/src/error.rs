use thiserror::Error;

/// Errors produced while building problems or running solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("problem dimension must be at least 2, got {0}")]
    TooSmall(usize),

    #[error("constraint coefficient a[{0}] is zero")]
    ZeroCoefficient(usize),

    #[error("constraint coefficient a[{0}] is negative; normalize signs first")]
    NegativeCoefficient(usize),

    #[error("invalid box at coordinate {index}: [{lower}, {upper}]")]
    InvalidBounds { index: usize, lower: f64, upper: f64 },

    #[error("infeasible: beta = {beta} lies outside [{min}, {max}]")]
    Infeasible { beta: f64, min: f64, max: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("point is not feasible: balance residual {balance_residual:e}, box violation {box_violation:e}")]
    InfeasiblePoint {
        balance_residual: f64,
        box_violation: f64,
    },

    #[error("linesearch failed after {backtracks} backtracks (directional derivative {mu:e})")]
    LinesearchFailure { backtracks: usize, mu: f64 },

    #[error("invalid dataset: {0}")]
    InvalidData(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}
