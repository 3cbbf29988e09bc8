use alloc::string::String;

/// Errors raised by the numerical pipeline.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Adaptive quadrature ran out of subdivisions. Carries the partial value
    /// (real part for complex integrands) and the residual error estimate.
    #[error("quadrature did not converge: partial value {value:e}, residual {residual:e}")]
    Quadrature { value: f64, residual: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("divergent integral: {0}")]
    Divergent(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("rejected: {0}")]
    Rejected(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::error::Error::InvalidParameter(alloc::format!($($arg)*))
    };
}
pub(crate) use invalid;
