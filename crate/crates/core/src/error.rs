use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An index past the end of a finite sequence was requested.
    #[error("index {index} is beyond the end of a finite sequence of length {len}")]
    OutOfRange { index: usize, len: usize },

    #[error("sequence entry {value} at position {position} must be at least 2")]
    InvalidEntry { position: usize, value: u64 },

    #[error("series with constant term {0} is not invertible over the integers")]
    NotInvertible(BigInt),

    /// The working order needed for a U-operator chain exceeds the configured budget.
    #[error("series order budget exceeded: need base order {required}, budget is {budget}")]
    OrderBudget { required: u128, budget: usize },

    #[error("brute-force enumeration refused for n = {n} (cap is {cap})")]
    BruteForceCap { n: u64, cap: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A sequence-spec parse failure, pointing at the offending token.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {position} (token `{token}`)")]
pub struct ParseError {
    pub message: String,
    pub token: String,
    /// Byte offset of `token` in the input.
    pub position: usize,
}
