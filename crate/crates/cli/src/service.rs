//! Local HTTP service. All bodies are JSON; see `docs/service.md`.

use std::path::PathBuf;
use std::sync::{Arc, RwLock};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use proofminer::io::{render_cluster_xml, Corpus};
use proofminer::parser::write_traces;
use proofminer::{EngineConfig, Level};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::commands;
use crate::error::CliError;

/// Export directories, default engine settings and the loaded corpus. The
/// corpus is never mutated; a reload swaps in a new one.
pub struct Service {
    dirs: Vec<PathBuf>,
    defaults: EngineConfig,
    corpus: RwLock<Arc<Corpus>>,
}

impl Service {
    pub fn load(dirs: Vec<PathBuf>, defaults: EngineConfig) -> Result<Self, CliError> {
        let corpus = commands::load_corpus(&dirs)?;
        Ok(Service {
            dirs,
            defaults,
            corpus: RwLock::new(Arc::new(corpus)),
        })
    }

    fn corpus(&self) -> Arc<Corpus> {
        self.corpus.read().expect("corpus lock").clone()
    }
}

struct ApiError(CliError);

impl From<CliError> for ApiError {
    fn from(e: CliError) -> Self {
        ApiError(e)
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError(CliError::Usage(e.body_text()))
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = match self.0.code() {
            "not_found" => StatusCode::NOT_FOUND,
            "corpus_too_small" | "pipeline_error" => StatusCode::UNPROCESSABLE_ENTITY,
            "corpus_error" => StatusCode::INTERNAL_SERVER_ERROR,
            _ => StatusCode::BAD_REQUEST,
        };
        let body = json!({"error": {"code": self.0.code(), "message": self.0.to_string()}});
        (status, Json(body)).into_response()
    }
}

type ApiResult = Result<Json<Value>, ApiError>;

/// Engine settings a request may override; absent fields keep the service
/// defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(default)]
pub struct Options {
    pub algorithm: Option<String>,
    pub level: Option<String>,
    pub g: Option<u8>,
    pub f: Option<u8>,
    pub seed: Option<u64>,
    pub runs: Option<usize>,
    pub pca: Option<bool>,
}

impl Options {
    fn apply(&self, base: &EngineConfig) -> Result<EngineConfig, CliError> {
        let mut c = base.clone();
        let text = |x: Option<String>, key: &'static str| x.map(|v| (key, v));
        let pairs = [
            text(self.algorithm.clone(), "algorithm"),
            text(self.level.clone(), "level"),
            text(self.g.map(|x| x.to_string()), "granularity"),
            text(self.f.map(|x| x.to_string()), "frequency"),
            text(self.seed.map(|x| x.to_string()), "seed"),
            text(self.runs.map(|x| x.to_string()), "runs"),
            text(self.pca.map(|x| x.to_string()), "pca"),
        ];
        for (k, v) in pairs.into_iter().flatten() {
            c.set(k, &v)?;
        }
        c.validate()?;
        Ok(c)
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(default)]
pub struct SuggestRequest {
    /// Partial proof as a trace document.
    pub trace: Option<String>,
    /// Partial proof as a script, optionally with a sidecar trace.
    pub script: Option<String>,
    pub sidecar: Option<String>,
    #[serde(flatten)]
    pub options: Options,
}

pub fn router(service: Arc<Service>) -> Router {
    Router::new()
        .route("/corpus", get(corpus))
        .route("/cluster", post(cluster))
        .route("/suggest", post(suggest))
        .route("/lemma/{name}", get(lemma))
        .route("/reload", post(reload))
        .fallback(|| async { ApiError(CliError::Usage("no such endpoint".into())) })
        .with_state(service)
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, CliError> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError(CliError::Input(format!("worker failed: {e}"))))?
        .map_err(ApiError)
}

async fn corpus(State(s): State<Arc<Service>>) -> ApiResult {
    let c = s.corpus();
    let lemmas: Vec<Value> = c
        .lemmas
        .iter()
        .map(|l| json!({"name": l.name, "statement": l.statement, "library": l.library}))
        .collect();
    let levels: Vec<&str> = Level::ALL.iter().map(|l| l.as_str()).collect();
    Ok(Json(json!({
        "libraries": c.libraries,
        "universe": c.universe.mode,
        "levels": levels,
        "lemmas": lemmas,
        "defaults": s.defaults,
    })))
}

async fn cluster(State(s): State<Arc<Service>>, body: Result<Json<Options>, JsonRejection>) -> ApiResult {
    let config = body?.0.apply(&s.defaults)?;
    let c = s.corpus();
    let report = blocking(move || commands::cluster(&c, &config)).await?;
    let clusters: Vec<Value> = report
        .entries
        .iter()
        .map(|e| json!({"frequency": e.frequency_pct, "lemmas": e.lemmas}))
        .collect();
    Ok(Json(json!({
        "config": report.config,
        "clusters": clusters,
        "xml": render_cluster_xml(&report),
    })))
}

async fn suggest(State(s): State<Arc<Service>>, body: Result<Json<SuggestRequest>, JsonRejection>) -> ApiResult {
    let req = body?.0;
    let config = req.options.apply(&s.defaults)?;
    let partial = match (&req.trace, &req.script) {
        (Some(t), None) => commands::parse_partial(t, false, None)?,
        (None, Some(src)) => commands::parse_partial(src, true, req.sidecar.as_deref())?,
        _ => return Err(CliError::Usage("give exactly one of `trace` or `script`".into()).into()),
    };
    let c = s.corpus();
    let (corpus, cfg) = (c.clone(), config.clone());
    let found = blocking(move || commands::suggest(&corpus, &partial, &cfg)).await?;
    let suggestion = found.map(|sg| {
        let lemmas: Vec<Value> = sg
            .lemmas
            .iter()
            .map(|n| {
                let statement = c.lemma(n).map(|l| l.statement.clone());
                json!({"name": n, "statement": statement})
            })
            .collect();
        json!({"frequency": sg.frequency_pct, "lemmas": lemmas})
    });
    Ok(Json(json!({"config": config, "suggestion": suggestion})))
}

async fn lemma(State(s): State<Arc<Service>>, Path(name): Path<String>) -> ApiResult {
    let c = s.corpus();
    let l = c.lemma(&name).ok_or_else(|| CliError::NotFound(name.clone()))?;
    Ok(Json(json!({
        "name": l.name,
        "statement": l.statement,
        "library": l.library,
        "script": l.script,
        "trace": write_traces(std::slice::from_ref(&l.trace)),
    })))
}

async fn reload(State(s): State<Arc<Service>>) -> ApiResult {
    let dirs = s.dirs.clone();
    let fresh = blocking(move || commands::load_corpus(&dirs)).await?;
    let summary = json!({"libraries": fresh.libraries, "lemmas": fresh.lemmas.len()});
    *s.corpus.write().expect("corpus lock") = Arc::new(fresh);
    Ok(Json(summary))
}

/// Serve until the process is stopped.
pub async fn serve(listener: tokio::net::TcpListener, service: Arc<Service>) -> std::io::Result<()> {
    axum::serve(listener, router(service)).await
}
