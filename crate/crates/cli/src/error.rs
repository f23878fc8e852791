use thiserror::Error;

/// Process exit status for successful runs.
pub const EXIT_OK: i32 = 0;
/// Bad input: unreadable files, unknown variables, malformed distributions.
pub const EXIT_INPUT: i32 = 2;
/// A computed quantity broke an internal guarantee.
pub const EXIT_INTERNAL: i32 = 3;
/// `reproduce` found values outside the reference tolerance.
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Analysis(#[from] pidtensor::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{origin}: invalid JSON: {source}")]
    Json {
        origin: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("{origin}: invalid CSV: {source}")]
    Csv {
        origin: String,
        #[source]
        source: csv::Error,
    },

    #[error("{0}")]
    Usage(String),

    #[error("{0} reproduced value(s) differ from the reference")]
    Mismatch(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Analysis(e) if e.is_internal() => EXIT_INTERNAL,
            CliError::Mismatch(_) => EXIT_MISMATCH,
            _ => EXIT_INPUT,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
