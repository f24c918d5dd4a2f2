use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// A computation failed.
    #[error(transparent)]
    Module(#[from] ranklab_core::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("malformed data file {path}: {message}")]
    DataFile { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Module(_) => 1,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Module(_) => "module",
            _ => "config",
        }
    }

    /// Variant name of the underlying error.
    pub fn variant(&self) -> &'static str {
        use ranklab_core::Error as E;
        match self {
            CliError::Module(e) => match e {
                E::DimensionMismatch { .. } => "DimensionMismatch",
                E::NonInvertibleDenominator { .. } => "NonInvertibleDenominator",
                E::NotPrime(_) => "NotPrime",
                E::InvalidFamily(_) => "InvalidFamily",
                E::DegenerateParams(_) => "DegenerateParams",
                E::NoKnownEquation { .. } => "NoKnownEquation",
                E::SamplingFailed { .. } => "SamplingFailed",
                E::UnknownCase { .. } => "UnknownCase",
                E::NotAHypersurface(_) => "NotAHypersurface",
                E::AllZero => "AllZero",
                E::ExcludedParameter { .. } => "ExcludedParameter",
                E::GuardViolated(_) => "GuardViolated",
                E::ProportionalPoints => "ProportionalPoints",
                E::NoSecondaryIntersection => "NoSecondaryIntersection",
                E::WitnessNotFound { .. } => "WitnessNotFound",
                E::PrecondViolated(_) => "PrecondViolated",
                E::InvalidArgument(_) => "InvalidArgument",
            },
            CliError::Config(_) => "Config",
            CliError::Read { .. } => "Read",
            CliError::Write { .. } => "Write",
            CliError::DataFile { .. } => "DataFile",
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
