use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("unknown variable: {0}")]
    BadVariable(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("malformed rational: {0}")]
    MalformedRational(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("interpolation nodes collide in characteristic {0}")]
    NodeCollision(u64),
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("system component has degree zero: {0}")]
    DegenerateDegree(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("oracle failure: {0}")]
    OracleFailure(String),
    #[error("index out of range: {0}")]
    BadIndex(String),
    #[error("power series lift failed: {0}")]
    LiftFailure(String),
    #[error("trials reached no consensus: {0}")]
    NoConsensus(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("evaluation error at gate {gate}: {reason}")]
    EvalError { gate: String, reason: String },
    #[error("engine/oracle mismatch: {0}")]
    EngineMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
