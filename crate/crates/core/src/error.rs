use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degenerate form: {0}")]
    Degenerate(String),
    #[error("incompatible form data: {0}")]
    Incompatible(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("not contained in ambient: {0}")]
    NotContained(String),
    #[error("not a module: {0}")]
    NotInvariant(String),
    #[error("not irreducible: {0}")]
    NotIrreducible(String),
    #[error("decomposition incomplete: {0}")]
    Incomplete(String),
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
    #[error("resource guard exceeded: {0}")]
    Resource(String),
    #[error("truncation too small: {0}")]
    Truncation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
