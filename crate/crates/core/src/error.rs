use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid multi-index: {0}")]
    Index(String),
    #[error("pivot block is singular")]
    SingularPivot,
    #[error("matrix is singular")]
    Singular,
    #[error("degenerate basis: {0}")]
    DegenerateBasis(String),
    #[error("numerical consistency violated: {0}")]
    Consistency(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid tolerance: {0}")]
    Tolerance(String),
    #[error("infeasible dimensions: {0}")]
    Infeasible(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
