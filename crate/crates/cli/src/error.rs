use std::path::PathBuf;

use stabgraph::{CodeError, DetectionError, IoError, OracleError, PipelineError};
use thiserror::Error;

/// Everything that makes the CLI exit with status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Code { path: String, source: CodeError },
    #[error("{path}: {source}")]
    Input { path: String, source: IoError },
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error("{0} (pass --oracle-cap to raise it)")]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Detection(#[from] DetectionError),
    #[error("--threads: {0}")]
    Threads(String),
}
