use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("horizon exhausted: requested {requested} symbols, cap is {cap}")]
    HorizonExhausted { requested: usize, cap: usize },

    #[error("horizon {horizon} too small, need at least {need}")]
    HorizonTooSmall { horizon: usize, need: usize },

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("seed is not prolongable: {0}")]
    NonProlongable(String),

    #[error("image collapse: the iterated image is a finite word")]
    ImageCollapse,

    #[error("precision exhausted while resolving index {index}")]
    PrecisionExhausted { index: usize },

    #[error("generation stuck at level {level}")]
    GenerationStuck { level: usize },

    #[error("machine fault: {0}")]
    MachineFault(String),

    #[error("no certified regulator bound: {0}")]
    MissingBound(String),

    #[error("certified bound defect at n = {n}: bound {bound}, observed {observed}")]
    BoundDefect { n: usize, bound: u64, observed: u64 },

    #[error("bound value overflowed")]
    BoundOverflow,

    #[error("refused: {required} exceeds the horizon cap {cap}")]
    CostRefused { required: String, cap: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, SeqError>;
