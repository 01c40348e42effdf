use thiserror::Error;

use crate::params::CaseKind;

/// Errors from parameter validation, parsing, the gain search, and the
/// simulator.
///
/// PDA axiom violations are not errors: [`crate::pda::verify`] reports those
/// as data so that callers can inspect the witnesses.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be positive, got {0}")]
    InvalidModulus(i64),

    #[error("invalid cyclic range [{start}:{end}]: end precedes start - 1")]
    InvalidRange { start: i64, end: i64 },

    #[error("parameter out of domain: {0}")]
    ParamDomain(String),

    #[error("{construction} does not cover case {case:?}")]
    WrongCase {
        construction: &'static str,
        case: CaseKind,
    },

    #[error("array shape: {0}")]
    Shape(String),

    #[error("grid parse error at line {line}, cell {column}: {message}")]
    GridParse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("record parse error: {0}")]
    RecordParse(#[from] serde_json::Error),

    #[error("gain search is limited to K <= {limit}; K = {users} needs an explicit override")]
    SearchLimitExceeded { users: usize, limit: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("demand of user {user} is file {file}, but the library has {files} files")]
    DemandOutOfRange {
        user: usize,
        file: usize,
        files: usize,
    },

    #[error("user {user} cannot decode row {row} via message {symbol}: {detail}")]
    DecodeFailure {
        user: usize,
        row: usize,
        symbol: usize,
        detail: String,
    },
}
