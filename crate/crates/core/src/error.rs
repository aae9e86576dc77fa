use thiserror::Error;

/// Why a `.bmcp` file was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("count mismatch: expected {expected} values, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("index out of range: {index} not in 1..={max}")]
    IndexOutOfRange { index: u64, max: usize },
    #[error("element indices must be strictly ascending")]
    NotAscending,
    #[error("nonpositive value: {0}")]
    Nonpositive(String),
    #[error("invalid integer token `{0}`")]
    InvalidNumber(String),
    #[error("unexpected end of input")]
    UnexpectedEof,
    #[error("unexpected trailing content")]
    TrailingContent,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    #[error("infeasible selection: weight {weight} exceeds capacity {capacity}")]
    Infeasible { weight: u64, capacity: u64 },

    #[error("invalid move: {0}")]
    InvalidMove(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, kind: ParseErrorKind) -> Self {
        Error::Parse { line, kind }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
