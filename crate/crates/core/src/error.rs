use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u32),
    #[error("unsupported field size {0} (supported: prime powers 2..=16)")]
    Unsupported(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {0} out of range for GF({1})")]
    ElementOutOfRange(u32, u32),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero vector has no projective point")]
    ZeroVector,
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("column {0} is zero")]
    ZeroColumn(usize),
    #[error("row {0} is not a codeword")]
    NotACodeword(usize),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("complement point set does not span the ambient space")]
    DegenerateComplement,
    #[error("guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    /// Short stable tag used in machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotAPrimePower(_) => "not-a-prime-power",
            Error::Unsupported(_) => "unsupported",
            Error::DivisionByZero => "division-by-zero",
            Error::ElementOutOfRange(..) => "element-out-of-range",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::ZeroVector => "zero-vector",
            Error::Overflow(_) => "overflow",
            Error::RankDeficient { .. } => "rank-deficient",
            Error::ZeroColumn(_) => "zero-column",
            Error::NotACodeword(_) => "not-a-codeword",
            Error::TooLarge(_) => "too-large",
            Error::OutOfRange(_) => "out-of-range",
            Error::DegenerateComplement => "degenerate-complement",
            Error::GuardExceeded(_) => "guard-exceeded",
            Error::Parse { .. } => "parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
