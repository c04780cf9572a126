use thiserror::Error;

/// Errors raised by the exact kernels and the system analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("discriminant mismatch: sqrt({left}) vs sqrt({right})")]
    DiscriminantMismatch { left: u32, right: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("value out of floating-point range")]
    Range,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed system: {0}")]
    MalformedSystem(String),

    #[error("invalid region of convergence: {0}")]
    InvalidRoc(String),

    #[error("singular coefficient system while expanding partial fractions")]
    Singular,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
