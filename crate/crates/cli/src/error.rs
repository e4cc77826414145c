use std::path::PathBuf;

use proofminer::{ConfigError, ExportError, FeatureError, ParseError, PipelineError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Export(#[from] ExportError),
    #[error(transparent)]
    Feature(#[from] FeatureError),
    #[error(transparent)]
    Pipeline(PipelineError),
    #[error("unknown lemma {0:?}")]
    NotFound(String),
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Config(c) => CliError::Config(c),
            PipelineError::Feature(f) => CliError::Feature(f),
            PipelineError::UnknownLemma(name) => CliError::NotFound(name),
            other => CliError::Pipeline(other),
        }
    }
}

impl CliError {
    pub fn parse(path: impl Into<PathBuf>, source: ParseError) -> Self {
        CliError::Parse {
            path: path.into(),
            source,
        }
    }

    /// 1 usage, 2 input or parse, 3 pipeline precondition.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 1,
            CliError::Parse { .. }
            | CliError::Input(_)
            | CliError::Export(_)
            | CliError::Feature(_)
            | CliError::NotFound(_) => 2,
            CliError::Pipeline(PipelineError::OutOfRange { .. }) => 1,
            CliError::Pipeline(PipelineError::InconsistentVectors) => 2,
            CliError::Pipeline(_) => 3,
        }
    }

    /// Stable machine-readable code used in service error bodies.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "bad_request",
            CliError::Config(_) | CliError::Pipeline(PipelineError::OutOfRange { .. }) => {
                "invalid_config"
            }
            CliError::Parse { .. } => "parse_error",
            CliError::Input(_) | CliError::Feature(_) => "bad_input",
            CliError::Export(_) => "corpus_error",
            CliError::NotFound(_) => "not_found",
            CliError::Pipeline(PipelineError::CorpusTooSmall(_)) => "corpus_too_small",
            CliError::Pipeline(PipelineError::InconsistentVectors) => "corpus_error",
            CliError::Pipeline(_) => "pipeline_error",
        }
    }
}
