use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty string collection")]
    EmptyStore,
    #[error("all byte values are in use; no sentinel available")]
    NoSentinel,
    #[error("fragment [{start}..{end}) out of range for string of length {len}")]
    FragmentOutOfRange { start: usize, end: usize, len: usize },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("unknown string id {0}")]
    UnknownString(usize),
    #[error("haystack of length {haystack} exceeds twice the needle length {needle}")]
    IpmTooLong { needle: usize, haystack: usize },
    #[error("interval chain difference {found} does not match grid height {expected}")]
    MismatchedDifference { expected: usize, found: usize },
    #[error("empty instance")]
    EmptyInstance,
    #[error("empty column range")]
    EmptyRange,
    #[error("only the newest version can be updated")]
    StaleVersion,
    #[error("input is not a binary string")]
    NonBinary,
    #[error("input contains reserved sentinel byte {0:#04x}")]
    SentinelCollision(u8),
    #[error("budget k must be at least {min}")]
    BudgetTooSmall { min: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
