use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("alphabet too large: {0}")]
    AlphabetTooLarge(String),
    #[error("symbol index {0} out of range for alphabet of size {1}")]
    SymbolOutOfRange(u32, u32),
    #[error("invalid convolution: {0}")]
    InvalidConvolution(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("track {0} out of range for arity {1}")]
    TrackOutOfRange(usize, usize),
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("encoding error: {0}")]
    Encoding(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("variable order does not match free variables: {0}")]
    VariableOrder(String),
    #[error("free variables present in sentence: {0:?}")]
    FreeVariables(Vec<String>),
    #[error("name collision: `{0}` already defined")]
    NameCollision(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("relation has no value for the given inputs")]
    NoOutput,
    #[error("relation is not functional: {0}")]
    NotFunctional(String),
    #[error("presentation has no left edge relations")]
    NotBiautomatic,
    #[error("closure violated: {0}")]
    ClosureViolated(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("automaton exceeded {0} states")]
    TooManyStates(usize),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("malformed file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
