use std::io;
use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("line {line}, column {col}: residue {value} is not reduced modulo {p}")]
    NonCanonicalResidue { line: usize, col: usize, value: u64, p: u64 },
    #[error("modulus mismatch: {context} is over 𝔽_{found}, expected 𝔽_{expected}")]
    ModulusMismatch { expected: u64, found: u64, context: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] appbascert_core::Error),
}

impl Error {
    /// Process exit status: 3 for a field too small for the requested
    /// soundness, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Core(appbascert_core::Error::FieldTooSmall { .. }) => 3,
            _ => 2,
        }
    }
}
