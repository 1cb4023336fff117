use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid scroll: {0}")]
    InvalidScroll(String),
    #[error("negative symmetric power {0}")]
    NegativePower(i64),
    #[error("row {row} is not one of the cohomological rows {{0, m, n, n+m}}")]
    InvalidRow { row: usize },
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: i64, max: i64 },
    #[error("unsupported multiplication direction {0}")]
    UnsupportedDirection(String),
    #[error("scroll is not {required}: a_0 = {a0}")]
    Positivity { required: &'static str, a0: i64 },
    #[error("unsupported dimensions: {0}")]
    Dimensions(String),
    #[error("window is unbounded; supply an explicit scan range")]
    UnboundedWindow,
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("operation requires a split bundle")]
    NotSplit,
    #[error("empty split bundle")]
    EmptyBundle,
    #[error("regularity precondition failed: Reg = {0}")]
    RegularityPrecondition(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}
