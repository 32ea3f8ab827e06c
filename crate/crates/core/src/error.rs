use thiserror::Error;

/// Errors raised by group construction, linear algebra and the verification layer.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed spec: {0}")]
    MalformedSpec(String),
    #[error("presentation too large: coset enumeration exceeded {limit} cosets")]
    PresentationTooLarge { limit: usize },
    #[error("oracle out of range: {0}")]
    OracleOutOfRange(String),
    #[error("{what} cap exceeded (limit {limit}, got {got})")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("generator search cap exceeded (k <= {0})")]
    GeneratorSearchCap(usize),
    #[error("not a submodule")]
    NotASubmodule,
    #[error("not a cocycle: identity fails at ({0}, {1}, {2})")]
    NotACocycle(usize, usize, usize),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("subgroup rejected: {0}")]
    SubgroupRejected(String),
    #[error("cover search exhausted: {0}")]
    CoverSearchExhausted(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::MalformedSpec(e.to_string())
    }
}
