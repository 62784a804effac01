use std::path::PathBuf;

use thiserror::Error;

use crate::symmetry::OrderingLabel;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate degree: {0}")]
    Degree(String),

    #[error("{line}:{column}: parse error: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{line}:{column}: unsupported construct: {message}")]
    Unsupported {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("expected exactly 3 real variables, found {found}: {names:?}")]
    VariableCount { found: usize, names: Vec<String> },

    #[error("atom at {line}:{column} reduces to a numeric constant")]
    ConstantAtom { line: usize, column: usize },

    #[error("schema mismatch: expected {expected} features, got {got}")]
    SchemaMismatch { expected: usize, got: usize },

    #[error("empty matrix: {0}")]
    EmptyMatrix(String),

    #[error("timing record `{id}` is missing ordering {ordering}")]
    MissingOrdering { id: String, ordering: OrderingLabel },

    #[error("projection budget exceeded: {0}")]
    Budget(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid data: {0}")]
    Data(String),

    #[error("degenerate dataset: {0}")]
    DegenerateDataset(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Coarse failure class, used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Config,
    Data,
    Internal,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::Config => 1,
            ErrorClass::Data => 2,
            ErrorClass::Internal => 3,
        }
    }
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Config(_) => ErrorClass::Config,
            Error::Stage { source, .. } | Error::File { source, .. } => source.class(),
            Error::Io(e) if matches!(e.kind(), std::io::ErrorKind::NotFound | std::io::ErrorKind::PermissionDenied) => {
                ErrorClass::Config
            }
            Error::Io(_) | Error::Degree(_) => ErrorClass::Internal,
            _ => ErrorClass::Data,
        }
    }

    pub fn in_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    pub fn in_file(self, path: impl Into<PathBuf>) -> Error {
        Error::File {
            path: path.into(),
            source: Box::new(self),
        }
    }
}
