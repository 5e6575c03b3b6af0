use thiserror::Error;

/// Errors raised by the card model, the shuffle engine, the protocol engine and the auditor.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{name} = {value} is out of range ({expected})")]
    Domain {
        name: &'static str,
        value: i64,
        expected: String,
    },

    #[error("malformed sequence: expected exactly one club, found {clubs}")]
    MalformedSequence { clubs: usize },

    #[error("invalid permutation {0:?}: not a bijection on 1..=len")]
    NotAPermutation(Vec<usize>),

    #[error("permutation has {got} entries but the matrix has {expected} columns")]
    WidthMismatch { expected: usize, got: usize },

    #[error("randomness tape exhausted after {consumed} decisions")]
    TapeUnderrun { consumed: usize },

    #[error("tape decision {index} is a {found} but the protocol requested a {requested}")]
    TapeKindMismatch {
        index: usize,
        requested: &'static str,
        found: &'static str,
    },

    #[error("protocol state violated: {0}")]
    ProtocolState(String),

    #[error("work of {} protocol runs exceeds the budget of {budget}; use sampling mode", .required.map_or("more than 2^128".to_string(), |r| r.to_string()))]
    BudgetExceeded {
        /// `None` when the count does not fit in 128 bits.
        required: Option<u128>,
        budget: u128,
    },

    #[error("tape is not valid JSON: {0}")]
    TapeFormat(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
