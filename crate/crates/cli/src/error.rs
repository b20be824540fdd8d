use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// Malformed input, positioned at a 1-based line and column.
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Lib(#[from] latcanon::Error),
}

impl CliError {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> CliError {
        CliError::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
