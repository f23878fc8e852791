use thiserror::Error;

/// Errors raised by the probability, channel, structure and decomposition layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    Name(String),

    #[error("variable sets overlap on `{0}`")]
    Overlap(String),

    #[error("conditioning event has zero probability: {0}")]
    UnsupportedCondition(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("symbol `{symbol}` is not in the alphabet of `{variable}`")]
    Alphabet { variable: String, symbol: String },

    #[error("invalid distribution: {0}")]
    Distribution(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("inconsistent tensor: {0}")]
    Inconsistent(String),

    #[error("series too short: {length} steps, need more than {required}")]
    Length { length: usize, required: usize },

    #[error("invalid sub-channel weights: {0}")]
    Weight(String),

    #[error("not supported: {0}")]
    NotSupported(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that signal a broken internal guarantee rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_) | Error::Internal(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
