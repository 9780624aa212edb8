use std::path::PathBuf;

use adhm_core::Error as CoreError;

/// Everything the front end can fail with, each mapped to one exit code.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("clustering ambiguity: points at distance {distance:e} are neither clearly merged nor clearly separated at tolerance {tolerance:e}")]
    ClusteringAmbiguity { distance: f64, tolerance: f64 },
}

impl AppError {
    /// 1 input/parse, 2 domain precondition, 3 commutation, 4 stability, 5 clustering ambiguity.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Io { .. } | AppError::Parse(_) | AppError::Usage(_) => 1,
            AppError::Core(CoreError::Parse { .. }) => 1,
            AppError::Core(CoreError::NonCommuting(..)) => 3,
            AppError::Core(CoreError::Unstable { .. }) => 4,
            AppError::Core(_) => 2,
            AppError::ClusteringAmbiguity { .. } => 5,
        }
    }
}

pub type AppResult<T> = Result<T, AppError>;
