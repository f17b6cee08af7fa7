use std::io;
use std::path::{Path, PathBuf};

use mmdd_core::corpus::{Diagnostic, SynthError};
use mmdd_core::eval::EvalError;
use mmdd_core::featurize::FeaturizeError;
use mmdd_core::fusion::FusionError;
use mmdd_core::select::SelectError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[error("{}: {message}", path.display())]
    Parse { path: PathBuf, message: String },
    #[error("invalid corpus:\n{}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"))]
    Corpus(Vec<Diagnostic>),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Featurize(#[from] FeaturizeError),
    #[error(transparent)]
    Select(#[from] SelectError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn read(path: &Path, source: io::Error) -> Self {
        Error::Read { path: path.to_path_buf(), source }
    }

    pub fn write(path: &Path, source: io::Error) -> Self {
        Error::Write { path: path.to_path_buf(), source }
    }

    pub fn parse(path: &Path, message: impl Into<String>) -> Self {
        Error::Parse { path: path.to_path_buf(), message: message.into() }
    }

    /// Process exit code: 1 for invalid input or configuration, 2 for
    /// failures while running.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Read { .. }
            | Error::Parse { .. }
            | Error::Corpus(_)
            | Error::Usage(_)
            | Error::Synth(_)
            | Error::Featurize(_) => 1,
            Error::Eval(e) => match e {
                EvalError::InsufficientSamples
                | EvalError::SingleClass
                | EvalError::TooFewSpeakers { .. }
                | EvalError::NoFeatures(_)
                | EvalError::MissingCell { .. }
                | EvalError::Config(_) => 1,
                _ => 2,
            },
            Error::Select(SelectError::Config(_)) | Error::Fusion(FusionError::Config(_)) => 1,
            Error::Write { .. } | Error::Select(_) | Error::Fusion(_) => 2,
        }
    }
}
