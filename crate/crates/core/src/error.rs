use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("enumeration size {size} exceeds cap {cap}")]
    CapExceeded { size: u128, cap: u128 },

    #[error("adding a box at row {row} breaks monotonicity of {weight:?}")]
    InvalidBox { row: usize, weight: Vec<i64> },

    #[error("invalid Gelfand-Tsetlin pattern: {0}")]
    InvalidPattern(String),

    #[error("alphabet symbol {symbol} out of range for d = {d}")]
    AlphabetOutOfRange { symbol: u32, d: u32 },

    #[error("inconsistent preprocessing inputs: {0}")]
    InconsistentInputs(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("state not in the image of the row-insertion step: {0}")]
    IrreversibleState(String),

    #[error("multiplicity anomaly: block {block} expected multiplicity {expected}, kernel gave {found}")]
    MultiplicityAnomaly {
        block: String,
        expected: usize,
        found: usize,
    },

    #[error("tensor factor {0} not supported by this engine")]
    UnsupportedFactor(String),

    #[error("block {0} missing from the decomposition")]
    BlockMissing(String),

    #[error("unknown group: {0}")]
    UnknownGroup(String),

    #[error("query type {0} not supported by this backend")]
    UnsupportedQueryType(String),

    #[error("box removal from an empty or too-short diagram")]
    ShapeUnderflow,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("query count n = {0} above the configured cap")]
    UnsupportedN(usize),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("Weingarten Gram system is singular for d = {d} < t = {t}")]
    SingularGram { d: u32, t: usize },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("codec error: {0}")]
    Codec(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
