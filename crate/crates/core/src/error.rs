use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: String,
    },

    #[error("correlation rho = {rho} infeasible for M = {m}; valid range is [{lo}, {hi}]")]
    InfeasibleCorrelation { m: usize, rho: f64, lo: f64, hi: f64 },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e}, max {max_eigenvalue:e})")]
    NotPsd {
        min_eigenvalue: f64,
        max_eigenvalue: f64,
    },

    #[error("singular parameter: {0}")]
    Singular(String),

    #[error("state {index} has zero variance (degenerate state)")]
    DegenerateState { index: usize },

    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },

    #[error("strong-fading condition violated: {0}")]
    StrongFading(String),

    #[error("grid file line {line}: {message}")]
    GridSyntax { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn invalid(name: &'static str, value: f64, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        value,
        reason: reason.into(),
    }
}

/// Rejects NaN, infinities and negative values.
pub(crate) fn require_nonneg(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() || value < 0.0 {
        return Err(invalid(name, value, "must be finite and non-negative"));
    }
    Ok(value)
}

pub(crate) fn require_unit(name: &'static str, value: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&value) {
        return Err(invalid(name, value, "must lie in [0, 1]"));
    }
    Ok(value)
}
