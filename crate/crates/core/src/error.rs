use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arithmetic overflow while computing {context}")]
    Overflow { context: &'static str },

    #[error("n = {n} exceeds the brute-force oracle bound {limit}")]
    BoundExceeded { n: u64, limit: u32 },

    #[error("gap {gap} has no residue rule (expected 5..=8)")]
    GapOutOfDomain { gap: i64 },

    #[error("cell (k={k}, n={n}) lies outside the window k <= {k_max}, n <= {n_max}")]
    OutOfWindow {
        k: i64,
        n: i64,
        k_max: usize,
        n_max: usize,
    },

    #[error("truncation bounds differ: ({lhs_k}, {lhs_n}) vs ({rhs_k}, {rhs_n})")]
    BoundMismatch {
        lhs_k: usize,
        lhs_n: usize,
        rhs_k: usize,
        rhs_n: usize,
    },

    #[error("index {index} is not available (largest computed bound is {max})")]
    IndexUnavailable { index: i64, max: i64 },

    #[error("invalid argument: {0}")]
    Domain(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub(crate) fn overflow(context: &'static str) -> Error {
    Error::Overflow { context }
}
