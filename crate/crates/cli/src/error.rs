use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed report: {0}")]
    Report(String),
}

impl CliError {
    pub fn position(&self) -> Option<(usize, usize)> {
        match self {
            CliError::Parse { line, column, .. } => Some((*line, *column)),
            _ => None,
        }
    }
}
