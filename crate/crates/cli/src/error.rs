use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

/// Failures past argument parsing. Exit codes: 2 for anything wrong with the
/// user's input or files, 3 for internal numerical trouble. Code 1 is owned
/// by the argument parser in main.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {reason}")]
    Parse {
        line: usize,
        column: usize,
        reason: String,
    },
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Domain(#[from] dicke_depth::Error),
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. }
            | CliError::Validation(_)
            | CliError::Domain(_)
            | CliError::Io { .. } => 2,
            CliError::Numerical(_) => 3,
        }
    }

    /// A closed output pipe is the downstream consumer's choice, not a
    /// failure of ours.
    pub fn is_broken_pipe(&self) -> bool {
        matches!(self, CliError::Io { source, .. } if source.kind() == std::io::ErrorKind::BrokenPipe)
    }
}
