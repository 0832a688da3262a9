use uniformizer_core::Error as CoreError;

pub const EXIT_OK: i32 = 0;
/// Resource limits, I/O failures, and emitted systems that fail verification.
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_PARSE: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed input; `path` is a JSON pointer into the input document.
    #[error("{}: {message}", if path.is_empty() { "/" } else { path.as_str() })]
    Schema { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Io(String),
    #[error("emitted system failed verification: {0}")]
    Unverified(String),
}

impl CliError {
    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Schema {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema { .. } | CliError::Usage(_) => EXIT_PARSE,
            CliError::Io(_) | CliError::Unverified(_) => EXIT_FAILURE,
            CliError::Core(e) => match e.root() {
                CoreError::InsufficientPrecision { .. } => EXIT_PRECISION,
                CoreError::Resource(_) => EXIT_FAILURE,
                _ => EXIT_PRECONDITION,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
