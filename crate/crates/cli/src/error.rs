use grassmann_core::Error as CoreError;
use thiserror::Error;

/// Exit codes. `0`, `1` and `2` are the stable contract; dimension
/// mismatches and degenerate bases are input errors with their own codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const VERIFICATION: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const DIMENSION: u8 = 3;
    pub const DEGENERATE: u8 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("unknown subspace name {0:?}")]
    UnknownName(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degenerate basis: {0}")]
    Degenerate(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => exit::VERIFICATION,
            CliError::Input(_) | CliError::UnknownName(_) | CliError::Io(_) | CliError::Json(_) => {
                exit::INPUT
            }
            CliError::Dimension(_) => exit::DIMENSION,
            CliError::Degenerate(_) => exit::DEGENERATE,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Dimension(m) => CliError::Dimension(m),
            CoreError::DegenerateBasis(m) => CliError::Degenerate(m),
            CoreError::Singular | CoreError::SingularPivot => CliError::Degenerate(e.to_string()),
            CoreError::Consistency(m) => CliError::Verification(m),
            CoreError::Domain(m)
            | CoreError::Index(m)
            | CoreError::Tolerance(m)
            | CoreError::Infeasible(m) => CliError::Input(m),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
