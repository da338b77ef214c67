use std::path::PathBuf;

/// Everything that can stop a command before it produces output. All of
/// these map to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write `{path}`: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed CSV in `{path}`: {source}")]
    Csv { path: PathBuf, source: csv::Error },
    #[error("malformed JSON in `{path}`: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("schema error in `{path}`: {message}")]
    Schema { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] depmeter_core::Error),
}

pub type CliResult<T> = Result<T, CliError>;
