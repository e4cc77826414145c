use std::path::PathBuf;

use thiserror::Error;

use crate::model::Violation;

/// Line/column in a source document, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("invalid value {value:?} for {key}")]
    Invalid { key: String, value: String },
    #[error("unknown configuration key {0:?}")]
    UnknownKey(String),
    #[error("line {line}: expected key=value")]
    Syntax { line: usize },
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("{pos}: unterminated proof (no Qed. before end of input)")]
    UnterminatedProof { pos: Pos },
    #[error("{pos}: expected {expected}, found {found}")]
    Unexpected {
        pos: Pos,
        expected: String,
        found: String,
    },
    #[error("{pos}: lemma {lemma} has no `: statement`")]
    MissingStatement { pos: Pos, lemma: String },
    #[error("line {line}: {reason}")]
    Format { line: usize, reason: String },
    #[error("duplicate lemma {0:?}")]
    DuplicateLemma(String),
    #[error("lemma {lemma}: {violation}")]
    Invalid { lemma: String, violation: Violation },
    #[error("script is for {script:?} but trace is for {trace:?}")]
    NameMismatch { script: String, trace: String },
    #[error("lemma {lemma}: script has {script} sentences but trace has {trace} steps")]
    StepMismatch {
        lemma: String,
        script: usize,
        trace: usize,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FeatureError {
    #[error("branch count {0} does not fit in one decimal digit")]
    CountOverflow(usize),
    #[error("branching level {0} outside 1..=5")]
    LevelOutOfRange(usize),
    #[error("tables differ in level or shape")]
    DimensionMismatch,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MlError {
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("k = {k} exceeds the number of points ({n})")]
    KTooLarge { k: usize, n: usize },
    #[error("k must be at least 1")]
    ZeroClusters,
    #[error("mixture component {0} collapsed after re-seeding")]
    DegenerateComponent(usize),
    #[error("silhouette needs at least two non-empty clusters")]
    SingleCluster,
    #[error("dataset rows have inconsistent length or non-finite entries")]
    BadData,
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("corpus of {0} lemmas is too small (need at least 6)")]
    CorpusTooSmall(usize),
    #[error("{name} = {value} is out of range")]
    OutOfRange { name: &'static str, value: i64 },
    #[error("unknown lemma {0:?}")]
    UnknownLemma(String),
    #[error("feature vectors differ in level or length")]
    InconsistentVectors,
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Ml(#[from] MlError),
    #[error(transparent)]
    Feature(#[from] FeatureError),
}

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("proof of {0} is not finished")]
    IncompleteProof(String),
    #[error("{path} line {line}: {reason}")]
    Format {
        path: PathBuf,
        line: usize,
        reason: String,
    },
    #[error("cluster XML: {0}")]
    Schema(String),
    #[error("feature vectors differ in level or length")]
    InconsistentVectors,
    #[error("libraries use different tactic universes")]
    UniverseMismatch,
    #[error(transparent)]
    Feature(#[from] FeatureError),
}

impl ExportError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        ExportError::Io {
            path: path.into(),
            source,
        }
    }
}
