use thiserror::Error;

/// Errors surfaced by samplers, spectral routines, statistics and the harness.
#[derive(Debug, Error)]
pub enum SignetError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate centering: {0}")]
    DegenerateCentering(String),

    #[error("regime too sparse: {0}")]
    RegimeTooSparse(String),

    #[error("complexity guard exceeded: {0}")]
    ComplexityGuard(String),

    #[error("correction mode mismatch: {0}")]
    ModeMismatch(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, SignetError>;

impl SignetError {
    /// Process exit code for the CLI: 2 config/parameter, 3 numerical, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            SignetError::InvalidParameter(_)
            | SignetError::DegenerateCentering(_)
            | SignetError::RegimeTooSparse(_)
            | SignetError::ComplexityGuard(_)
            | SignetError::ModeMismatch(_)
            | SignetError::Config(_) => 2,
            SignetError::Numerical(_) => 3,
            SignetError::Io(_) => 1,
        }
    }
}
