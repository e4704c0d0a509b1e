use std::io;
use std::path::PathBuf;

use folkman_core::{ArrowError, ExtendError, Graph6Error};
use thiserror::Error;

/// Claim established (emptiness proved, witness found, command finished).
pub const EXIT_OK: u8 = 0;
/// Bad arguments or a config that cannot justify its claim.
pub const EXIT_USAGE: u8 = 2;
/// Unreadable or inconsistent data: parse failures, hash mismatches, IO.
pub const EXIT_DATA: u8 = 3;
/// Run completed but the expected outcome did not hold.
pub const EXIT_REFUTED: u8 = 10;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}:{line}: {msg}")]
    Config { path: String, line: usize, msg: String },

    #[error("{path}:{line}: {source}")]
    Parse {
        path: String,
        line: usize,
        source: Graph6Error,
    },

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },

    #[error("hash mismatch for {what}: expected {expected}, found {found}")]
    HashMismatch {
        what: String,
        expected: String,
        found: String,
    },

    #[error("stage {stage}: expected {metric} = {expected}, got {found}")]
    CountMismatch {
        stage: String,
        metric: String,
        expected: usize,
        found: usize,
    },

    #[error("{0}")]
    Data(String),

    #[error(transparent)]
    Extend(#[from] ExtendError),

    #[error(transparent)]
    Arrow(#[from] ArrowError),
}

impl PipelineError {
    pub fn exit_code(&self) -> u8 {
        match self {
            PipelineError::Usage(_) | PipelineError::Config { .. } | PipelineError::Arrow(_) => EXIT_USAGE,
            PipelineError::CountMismatch { .. } => EXIT_REFUTED,
            PipelineError::Parse { .. }
            | PipelineError::Io { .. }
            | PipelineError::HashMismatch { .. }
            | PipelineError::Data(_)
            | PipelineError::Extend(_) => EXIT_DATA,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        PipelineError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = PipelineError> = std::result::Result<T, E>;
