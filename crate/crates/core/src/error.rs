use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value {value} at index {index} is out of range for a permutation of length {len}")]
    ValueOutOfRange {
        index: usize,
        value: i64,
        len: usize,
    },

    #[error("value {value} at index {index} repeats the value at index {first}")]
    DuplicateValue {
        index: usize,
        value: usize,
        first: usize,
    },

    #[error("table entry {value} at index {index} must lie in 0..={index}")]
    TableEntryOutOfRange { index: usize, value: i64 },

    #[error("maj delta {delta} is out of range 0..={len} for a word of length {len}")]
    DeltaOutOfRange { delta: usize, len: usize },

    #[error("cannot parse token {token:?} at index {index} as a nonnegative integer")]
    BadToken { index: usize, token: String },

    #[error(
        "compact form takes single digits and at most 10 of them; use commas for {len} values"
    )]
    CompactTooLong { len: usize },

    #[error("n = {n} exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
}
