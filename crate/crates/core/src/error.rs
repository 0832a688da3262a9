use thiserror::Error;

/// Errors raised by the library.
///
/// Variants are grouped so that front ends can classify them: precondition
/// violations, insufficient series precision, and exhausted resources.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("value of zero undefined")]
    ValueOfZero,

    #[error("element is not a unit of the valuation ring (value {0})")]
    NotAUnit(String),

    #[error("element is not in the valuation ring (value {0})")]
    NotInValuationRing(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("insufficient precision: {message} (reached {reached})")]
    InsufficientPrecision { message: String, reached: i64 },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    /// An error raised inside one layer of a composed construction.
    #[error("{layer} layer: {source}")]
    Layer {
        layer: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn insufficient(msg: impl Into<String>, reached: i64) -> Self {
        Error::InsufficientPrecision {
            message: msg.into(),
            reached,
        }
    }

    pub fn in_layer(self, layer: impl Into<String>) -> Self {
        Error::Layer {
            layer: layer.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, looking through layer attributions.
    pub fn root(&self) -> &Error {
        match self {
            Error::Layer { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
