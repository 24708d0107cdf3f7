use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AppError {
    #[error("config: {0}")]
    Config(String),
    #[error("computation: {0}")]
    Compute(#[from] soliton_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("mesh: {0}")]
    Mesh(String),
}

impl AppError {
    /// Process exit code: 2 config, 3 computation, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Config(_) => 2,
            AppError::Compute(_) | AppError::Mesh(_) => 3,
            AppError::Io { .. } => 4,
        }
    }
}

pub type AppResult<T> = Result<T, AppError>;

pub fn config(msg: impl Into<String>) -> AppError {
    AppError::Config(msg.into())
}
