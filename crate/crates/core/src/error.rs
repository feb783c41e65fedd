use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("period r = {0} is not supported (r >= 3 is required)")]
    PeriodTooSmall(usize),
    #[error("generator index {index} out of range 1..={r}")]
    IndexOutOfRange { index: usize, r: usize },
    #[error("period mismatch: {0} vs {1}")]
    PeriodMismatch(usize, usize),
    #[error("invalid window {window:?}: {reason}")]
    InvalidWindow { window: Vec<i64>, reason: String },
    #[error("parabolic subset must be a proper subset of the {0} generators")]
    ImproperParabolic(usize),
    #[error("invalid weight {parts:?}: {reason}")]
    InvalidWeight { parts: Vec<usize>, reason: String },
    #[error("the weight omega needs n >= r (got n = {n}, r = {r})")]
    NTooSmall { n: usize, r: usize },
    #[error("{0} is not a distinguished double coset representative")]
    NotDistinguished(String),
    #[error("incompatible operands: {0}")]
    Incompatible(String),
    #[error("re-expansion failed: {0}")]
    Expansion(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
}

pub type Result<T> = std::result::Result<T, Error>;
