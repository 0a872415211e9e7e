use alloc::string::String;

/// Errors raised by the core algorithms.
///
/// Verification outcomes are never errors: a rejected basis is reported
/// through a [`Verdict`](crate::Verdict). Errors mean the inputs violate a
/// precondition and no verdict can be formed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is outside the supported range 2 < p < 2^62")]
    ModulusOutOfRange(u64),
    #[error("inversion of zero")]
    ZeroInversion,
    #[error("dimension mismatch in {op}: {detail}")]
    DimensionMismatch { op: &'static str, detail: String },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("degree too large in {op}: {detail}")]
    DegreeTooLarge { op: &'static str, detail: String },
    #[error("evaluation point must be nonzero")]
    ZeroAlpha,
    #[error("order entries must be positive")]
    InvalidOrder,
    #[error("arithmetic on the degree of a zero row or column")]
    UndefinedDegree,
    #[error("sampling set of size {available} is too small: need at least {required}")]
    FieldTooSmall { required: u64, available: u64 },
    #[error("shifted determinant degree is negative ({0})")]
    NegativeDelta(i64),
    #[error("no valid tamper location: {0}")]
    NoValidLocation(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn dim_err(op: &'static str, detail: String) -> Error {
    Error::DimensionMismatch { op, detail }
}
