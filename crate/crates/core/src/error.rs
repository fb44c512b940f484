use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable `{0}` is not in the target registry")]
    VariableMismatch(String),

    #[error("registries differ: {0}")]
    RegistryMismatch(String),

    #[error("canonical pairing mismatch: {0}")]
    PairingMismatch(String),

    #[error("exponential series does not terminate: operator contains multiplication monomials")]
    NonTerminatingSeries,

    #[error("equal frequencies make the `{0}` construction singular")]
    EqualFrequency(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("value has no exact square root in rational arithmetic: {0}")]
    Inexact(String),

    #[error("map is not invertible")]
    Singular,

    #[error("trajectory error: {0}")]
    Trajectory(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
