use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid derivation: {0}")]
    InvalidDerivation(String),
    #[error("level violation: {0}")]
    LevelViolation(String),
    #[error("derivation is not cut-free")]
    NotCutFree,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("no premise derivation for context {{{0}}}")]
    MissingPremise(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("size bound exceeded: {size} > {bound}")]
    SizeBound { size: usize, bound: usize },
    #[error("not a Heyting frame: {0} fails")]
    NotAHeytingFrame(String),
    #[error("not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("not a Heyting algebra: {0}")]
    NotHeyting(String),
    #[error("uncovered variable {0}")]
    UncoveredVariable(String),
    #[error("{0} does not occur only positively")]
    NotPositive(String),
    #[error("unknown function symbol {0}")]
    UnknownFunctionSymbol(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
