use thiserror::Error;

use crate::matrix::ScalingError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A value supplied by the caller is outside its domain (non-finite, out of [0, 1], empty).
    #[error("invalid input: {0}")]
    Input(String),

    /// Shapes or indices do not agree with the objects they are used with.
    #[error("structural error: {0}")]
    Structure(String),

    /// A probability assessment is not non-increasing across nested severity categories.
    #[error(
        "incoherent probability assessment: P(S_{}) = {} < P(S_{}) = {}",
        .index,
        .lower,
        .index + 1,
        .upper
    )]
    Coherence { index: usize, lower: f64, upper: f64 },

    /// A forecast tuple increases somewhere and strict mode was requested.
    #[error("forecast is not internally consistent: category {lower} for S_{index} is below category {upper} for S_{}", .index + 1)]
    InconsistentForecast {
        index: usize,
        lower: usize,
        upper: usize,
    },

    #[error(transparent)]
    Scaling(#[from] ScalingError),

    /// Configuration problem, with a dotted path to the offending field.
    #[error("{path}: {message}")]
    Config { path: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// Row-level CSV problems, collected across the whole file.
    #[error("{}", format_rows(.0))]
    Rows(Vec<RowError>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowError {
    /// 1-based line number in the file, counting the header as line 1.
    pub line: u64,
    pub message: String,
}

fn format_rows(rows: &[RowError]) -> String {
    rows.iter()
        .map(|r| format!("line {}: {}", r.line, r.message))
        .collect::<Vec<_>>()
        .join("\n")
}

impl Error {
    pub(crate) fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            message: message.into(),
        }
    }
}
