//! Proof-trace feature extraction and statistical clustering of lemmas.
//!
//! Proofs are read from scripts and trace files ([`parser`]), summarised as
//! goal-, tactic- or tree-level feature tables ([`features`]), encoded as
//! numeric vectors and clustered repeatedly ([`pipeline`], [`mlcore`]).
//! Libraries and results can be written to disk ([`io`]).

pub mod error;
pub mod features;
pub mod io;
pub mod mlcore;
pub mod model;
pub mod parser;
pub mod pipeline;

pub use error::{ConfigError, ExportError, FeatureError, MlError, ParseError, PipelineError};
pub use model::{
    Algorithm, Arg, ArgKind, ClusterEntry, ClusterReport, EngineConfig, Level, ProofStep,
    ProofTrace, ProofTree, SymbolTables, TacticApp, TreeNode,
};
