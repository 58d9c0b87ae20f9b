use thiserror::Error;

/// Errors raised by the exact and numeric routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid parameter for {op}: {reason}")]
    InvalidParameter { op: &'static str, reason: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not lower triangular: nonzero entry at ({row}, {col})")]
    NotLowerTriangular { row: usize, col: usize },

    #[error("singular triangular matrix: zero diagonal entry at index {0}")]
    SingularMatrix(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("Re(s) = {re} is outside the convergence margin Re(s) > {margin}")]
    ConvergenceMargin { re: f64, margin: f64 },

    #[error("tolerance {tol:e} is below the achievable truncation bound {bound:e}")]
    ToleranceTooSmall { tol: f64, bound: f64 },

    #[error("verification failure: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(op: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        op,
        reason: reason.into(),
    }
}
