use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero ring rejected (modulus {0})")]
    ZeroRing(u64),
    #[error("polynomial must be monic of degree >= 1")]
    NotMonic,
    #[error("{what} has {size} entries, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: usize,
    },
    #[error("ring law violated: {0}")]
    RingLaw(String),
    #[error("module action law violated: {0}")]
    ActionLaw(String),
    #[error("zero module rejected")]
    ZeroModule,
    #[error("zero quotient rejected")]
    ZeroQuotient,
    #[error("ideal is the whole ring")]
    ImproperIdeal,
    #[error("submodule is the whole module")]
    ImproperSubmodule,
    #[error("ideal {0} is not maximal")]
    NotMaximal(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("scalar {0} is a unit")]
    UnitScalar(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("set is not a submodule")]
    NotClosed,
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error("unknown converse claim `{0}`")]
    UnknownClaim(String),
    #[error("{0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
