use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed delimited input: {0}")]
    Csv(#[from] csv::Error),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("label cardinality error: expected exactly 2 distinct labels, found {found:?}")]
    LabelCardinality { found: Vec<String> },
    #[error("degenerate corpus: {0}")]
    DegenerateCorpus(String),
    #[error("vocabulary mismatch: term {0:?} is not in the vocabulary")]
    VocabularyMismatch(String),
    #[error("empty cluster: {0}")]
    EmptyCluster(String),
    #[error("shape error: expected {expected} dimensions, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Short class name used in single-line diagnostics.
    pub fn class(&self) -> &'static str {
        match self {
            Error::Io { .. } | Error::Csv(_) => "io",
            Error::Config(_) => "config",
            Error::LabelCardinality { .. } => "label-cardinality",
            Error::DegenerateCorpus(_) | Error::EmptyCluster(_) => "degenerate-corpus",
            Error::VocabularyMismatch(_) | Error::Shape { .. } | Error::Internal(_) => "internal",
            Error::Json(_) => "io",
        }
    }

    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self.class() {
            "io" => 2,
            "config" => 3,
            "label-cardinality" => 4,
            "degenerate-corpus" => 5,
            _ => 70,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
