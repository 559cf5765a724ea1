use std::fmt;

/// Errors surfaced by the algebra layers. Validation failures that carry a
/// structured witness use `ActionCheck`; everything else is a plain variant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    ZeroConductor,
    DivisionByZero,
    ZeroArgument,
    GroupMismatch,
    /// ord(chi_i(g_i)) = 1 at the named (1-based) index.
    OrderOne { index: usize },
    InvalidDatum(String),
    InvalidPMatrix(String),
    ActionCheck { check: String, witness: String },
    SizeLimit { dim: usize, limit: usize },
    Unsupported(String),
    Config(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroConductor => write!(f, "conductor must be positive"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ZeroArgument => write!(f, "argument must be nonzero"),
            Error::GroupMismatch => write!(f, "elements belong to different groups"),
            Error::OrderOne { index } => {
                write!(f, "order_one: chi_{i}(g_{i}) has order 1", i = index)
            }
            Error::InvalidDatum(msg) => write!(f, "invalid datum: {msg}"),
            Error::InvalidPMatrix(msg) => write!(f, "invalid p-matrix: {msg}"),
            Error::ActionCheck { check, witness } => {
                write!(f, "action check {check} failed at {witness}")
            }
            Error::SizeLimit { dim, limit } => {
                write!(f, "dimension {dim} exceeds size limit {limit}")
            }
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::Config(msg) => write!(f, "config error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
