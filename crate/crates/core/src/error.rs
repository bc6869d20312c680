use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inexact division: ({num}) / ({den})")]
    InexactDivision { num: String, den: String },

    #[error("division by zero polynomial")]
    DivisionByZero,

    #[error("strand count mismatch: {0} vs {1}")]
    KappaMismatch(usize, usize),

    #[error("{what} index {index} out of range 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: i64,
        max: i64,
    },

    #[error("invalid permutation {0:?}")]
    InvalidPerm(Vec<usize>),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("syntax error at byte {offset}: {msg}")]
    Syntax { offset: usize, msg: String },

    #[error("illegal inverse at byte {offset}: only T generators are invertible")]
    IllegalInverse { offset: usize },

    #[error("element is not homogeneous")]
    Inhomogeneous,

    #[error("invalid geodesic parameters: {0}")]
    InvalidParams(String),

    #[error("floor argument {0} is an exact integer; perturb epsilon")]
    BoundaryHit(String),

    #[error("empty degree window")]
    EmptyWindow,

    #[error("matrix too large: {0} columns (limit {1})")]
    TooLarge(usize, usize),

    #[error("identity check failed: {0}")]
    CheckFailed(String),
}
