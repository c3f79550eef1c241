//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Fewer than two maxima or two minima were found. During sifting this
    /// signals termination rather than failure.
    #[error("not enough extrema: {0}")]
    NotEnoughExtrema(String),

    #[error("undefined ratio: {0}")]
    UndefinedRatio(String),

    #[error("undefined phase: {0}")]
    UndefinedPhase(String),

    #[error("decomposition produced no IMFs")]
    EmptyDecomposition,

    #[error("degenerate removal: {0}")]
    DegenerateRemoval(String),

    #[error("ill-conditioned regression: {0}")]
    IllConditioned(String),

    #[error("trajectory diverged: {0}")]
    Divergence(String),

    #[error("csv parse error at line {line}: {message}")]
    CsvParse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
