use std::io;
use std::path::PathBuf;

use mwdim_core::boxcount::BoxCountError;
use mwdim_core::julia::JuliaError;
use mwdim_core::{GraphError, SpectralError};
use thiserror::Error;

/// A malformed line in one of the text formats.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {error}", path.display())]
    Parse { path: PathBuf, error: ParseError },
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("geometry failure: {0}")]
    Geometry(String),
    #[error("consistency check failed: {0}")]
    Check(String),
}

impl CliError {
    /// 1 io, 2 usage, 3 parse, 4 validation, 5 numeric, 6 geometry,
    /// 7 failed consistency check.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Usage(_) => 2,
            CliError::Parse { .. } => 3,
            CliError::Validation(_) => 4,
            CliError::Numeric(_) => 5,
            CliError::Geometry(_) => 6,
            CliError::Check(_) => 7,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::Graph(g) => g.into(),
            other => CliError::Numeric(other.to_string()),
        }
    }
}

impl From<JuliaError> for CliError {
    fn from(e: JuliaError) -> Self {
        match e {
            JuliaError::Spectral(s) => s.into(),
            JuliaError::Graph(g) => g.into(),
            other => CliError::Geometry(other.to_string()),
        }
    }
}

impl From<BoxCountError> for CliError {
    fn from(e: BoxCountError) -> Self {
        match e {
            BoxCountError::TooFewScales { .. } | BoxCountError::BadRange { .. } | BoxCountError::BadDelta(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Validation(other.to_string()),
        }
    }
}
