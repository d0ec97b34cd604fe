use thiserror::Error;

/// Errors raised by the library. Every variant carries enough text to be
/// printed directly by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not an F4 root: {0}")]
    NotARoot(String),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("simple index {0} out of range 1..=4")]
    SimpleIndex(usize),
    #[error("torus parameter t{0} is zero")]
    ZeroParameter(usize),
    #[error("commutator of a root with itself or its negative: {0}")]
    OppositeRoots(String),
    #[error("element is not in the positive unipotent group: {0}")]
    NotUnipotent(String),
    #[error("unknown orbit label {0:?}")]
    UnknownOrbit(String),
    #[error("invalid symplectic partition {0:?}")]
    InvalidPartition(Vec<u32>),
    #[error("inconsistent torus data for {label}: {detail}")]
    TorusInconsistent { label: String, detail: String },
    #[error("unknown {kind} {name:?}")]
    Unknown { kind: &'static str, name: String },
    #[error("invalid exchange datum: {0}")]
    InvalidDatum(String),
    #[error("exchange rejected: {0}")]
    ExchangeRejected(String),
}

pub type Result<T> = std::result::Result<T, Error>;
