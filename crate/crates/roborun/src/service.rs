//! HTTP API over the engine.
//!
//! Every handler is stateless apart from the level store. Request bodies are
//! decoded by hand so malformed JSON reports `E_JSON` like every other
//! diagnostic instead of axum's plain-text rejection.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use roborun_core::diag::DiagnosticList;
use roborun_core::dsl::json::program_to_doc;
use roborun_core::levels::{LevelStore, StoreError};
use roborun_core::levels::{level_from_value, level_to_document};
use roborun_core::scoring::{ScoreBreakdown, ScoringConfig};
use roborun_core::{parse_program, Code, Diagnostic, ExecLimits, Level, Trace};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use tower_http::services::ServeDir;

use crate::engine::{self, Diags};

#[derive(Debug)]
pub struct ApiError {
    pub status: StatusCode,
    pub diagnostics: Diags,
}

impl ApiError {
    pub fn bad_request(diagnostics: Diags) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            diagnostics,
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::INTERNAL_SERVER_ERROR,
            diagnostics: vec![Diagnostic::new(Code::EIo, message)],
        }
    }
}

impl From<Diags> for ApiError {
    fn from(diagnostics: Diags) -> Self {
        ApiError::bad_request(diagnostics)
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        let status = match e {
            StoreError::Invalid(_) => StatusCode::BAD_REQUEST,
            StoreError::Unsolvable => StatusCode::CONFLICT,
            StoreError::NotFound(_) => StatusCode::NOT_FOUND,
            StoreError::Io(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError {
            status,
            diagnostics: e.diagnostics(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = DiagnosticList {
            diagnostics: self.diagnostics,
        };
        json_response(self.status, engine::to_document(&body))
    }
}

fn json_response(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn ok_json<T: Serialize>(value: &T) -> Response {
    json_response(StatusCode::OK, engine::to_document(value))
}

fn decode<T: DeserializeOwned>(body: &[u8]) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(vec![roborun_core::dsl::json::json_error(e)]))
}

#[derive(Clone)]
pub struct AppState {
    pub store: Arc<LevelStore>,
    pub scoring: ScoringConfig,
}

/// Runs blocking engine or store work off the async workers.
async fn blocking<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::internal(format!("worker failed: {e}")))
}

pub fn router(state: AppState, ui_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/levels", get(list_levels).post(create_level))
        .route("/api/levels/{id}", get(get_level))
        .route("/api/parse", post(parse))
        .route("/api/execute", post(execute))
        .route("/api/score", post(score))
        .route("/api/export", post(export))
        .with_state(state);
    match ui_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

pub async fn serve(addr: SocketAddr, state: AppState, ui_dir: Option<PathBuf>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("roborun listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state, ui_dir))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

async fn list_levels(State(state): State<AppState>) -> Result<Response, ApiError> {
    let summaries = blocking(move || state.store.list()).await??;
    Ok(ok_json(&summaries))
}

async fn get_level(State(state): State<AppState>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let level = blocking(move || state.store.load(&id)).await??;
    Ok(json_response(StatusCode::OK, level_to_document(&level)))
}

#[derive(Serialize)]
struct Created {
    id: String,
}

async fn create_level(State(state): State<AppState>, body: Bytes) -> Result<Response, ApiError> {
    let mut value: Value = decode(&body)?;
    // drafts from the editor have no id yet; the store assigns one anyway
    if let Value::Object(map) = &mut value {
        map.entry("id").or_insert_with(|| Value::from("draft"));
    }
    let level: Level = Level::deserialize(&value)
        .map_err(|e| ApiError::bad_request(vec![roborun_core::dsl::json::json_error(e)]))?;
    let id = blocking(move || state.store.save(&level)).await??;
    Ok(json_response(StatusCode::CREATED, engine::to_document(&Created { id })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ParseRequest {
    text: String,
}

#[derive(Serialize)]
struct ParseResponse {
    program: roborun_core::dsl::ProgramDoc,
}

async fn parse(body: Bytes) -> Result<Response, ApiError> {
    let req: ParseRequest = decode(&body)?;
    let program = parse_program(&req.text)?;
    Ok(ok_json(&ParseResponse {
        program: program_to_doc(&program),
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExecuteRequest {
    level_id: Option<String>,
    level: Option<Value>,
    program: Value,
    limits: Option<ExecLimits>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScoreRequest {
    level_id: Option<String>,
    level: Option<Value>,
    program: Value,
    limits: Option<ExecLimits>,
    elapsed_seconds: f64,
}

#[derive(Serialize)]
struct ScoreResponse {
    trace: Trace,
    score: ScoreBreakdown,
}

async fn resolve_level(state: &AppState, id: Option<String>, inline: Option<Value>) -> Result<Level, ApiError> {
    match (id, inline) {
        (Some(id), None) => {
            let store = state.store.clone();
            Ok(blocking(move || store.load(&id)).await??)
        }
        (None, Some(value)) => Ok(level_from_value(&value)?),
        _ => Err(ApiError::bad_request(vec![Diagnostic::new(
            Code::EJson,
            "give exactly one of \"level_id\" or \"level\"",
        )])),
    }
}

async fn execute(State(state): State<AppState>, body: Bytes) -> Result<Response, ApiError> {
    let req: ExecuteRequest = decode(&body)?;
    let program = engine::program_from_value(&req.program)?;
    let level = resolve_level(&state, req.level_id, req.level).await?;
    let limits = req.limits.unwrap_or_default();
    let trace = blocking(move || engine::run(&program, &level, &limits)).await??;
    Ok(json_response(StatusCode::OK, trace.to_document()))
}

async fn score(State(state): State<AppState>, body: Bytes) -> Result<Response, ApiError> {
    let req: ScoreRequest = decode(&body)?;
    let program = engine::program_from_value(&req.program)?;
    let level = resolve_level(&state, req.level_id, req.level).await?;
    let limits = req.limits.unwrap_or_default();
    let config = state.scoring;
    let (trace, score) =
        blocking(move || engine::run_and_score(&program, &level, &limits, req.elapsed_seconds, &config)).await??;
    Ok(ok_json(&ScoreResponse { trace, score }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExportRequest {
    program: Value,
    target: String,
}

#[derive(Serialize)]
struct ExportResponse {
    text: String,
}

async fn export(body: Bytes) -> Result<Response, ApiError> {
    let req: ExportRequest = decode(&body)?;
    let program = engine::program_from_value(&req.program)?;
    let text = engine::export(&program, &req.target)?;
    Ok(ok_json(&ExportResponse { text }))
}
