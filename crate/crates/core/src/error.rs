use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("parameter {0} is already in use")]
    ParamCollision(String),

    #[error("unknown parameter {0}")]
    UnknownParam(String),

    #[error("indeterminate {0} is not allowed here")]
    ForeignVar(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("not bijective over the coefficient ring: {0}")]
    NotBijective(String),

    #[error("not of mock-GD form: {0}")]
    NotQuadratic(String),

    #[error("not a subalgebra: product of basis vectors {0} and {1} leaves the span")]
    NotSubalgebra(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
