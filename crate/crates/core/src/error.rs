//! Crate-wide error type.

use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{file}: missing required column `{column}`")]
    MissingColumn { file: String, column: String },

    #[error("{file}: line {line}, column `{column}`: {message}")]
    InvalidRow {
        file: String,
        line: u64,
        column: String,
        message: String,
    },

    #[error("{file}: {message}")]
    Schema { file: String, message: String },

    #[error("cannot build an index over an empty document collection")]
    EmptyCorpus,

    #[error("document frequency {df} out of range for collection of {n_docs} documents")]
    DfOutOfRange { df: u32, n_docs: usize },

    #[error("grant year {grant_year} outside corpus window {window_start}-{window_end}")]
    GrantYearOutsideWindow {
        grant_year: i32,
        window_start: i32,
        window_end: i32,
    },

    #[error("project `{project_id}`: summary is empty after preprocessing")]
    EmptyProposal { project_id: String },

    #[error("unknown project id `{id}`; known ids: {known:?}")]
    UnknownProject { id: String, known: Vec<String> },

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// Process exit code for the CLI: 2 for schema/validation failures,
    /// 3 for computation precondition failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. }
            | Error::MissingColumn { .. }
            | Error::InvalidRow { .. }
            | Error::Schema { .. } => 2,
            Error::EmptyCorpus
            | Error::DfOutOfRange { .. }
            | Error::GrantYearOutsideWindow { .. }
            | Error::EmptyProposal { .. }
            | Error::UnknownProject { .. } => 3,
            Error::Config(_) => 1,
        }
    }
}
