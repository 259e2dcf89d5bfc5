//! HTTP session API for the mutation explorer.
//!
//! Each session holds a preset, a linear mutation history and a cursor into
//! it. Requests on one session are serialized by its own lock; the seed at
//! every step is cached so undo and jumps never recompute.

use std::collections::HashMap;
use std::sync::Arc;

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};
use uuid::Uuid;

use cluster_core::arith::LaurentPolynomial;
use cluster_core::presets::{self, Preset, PresetInfo};
use cluster_core::seed::Seed;

use crate::payload::SeedPayload;
use crate::CliError;

pub struct Session {
    preset: Preset,
    /// 0-based directions; only the first `cursor` are applied.
    history: Vec<usize>,
    cursor: usize,
    /// `seeds[i]` is the seed after `history[..i]`.
    seeds: Vec<Seed<LaurentPolynomial>>,
}

impl Session {
    pub fn new(name: &str) -> Result<Self, CliError> {
        let preset = presets::preset(name)?;
        let seed = preset.seed()?;
        Ok(Session { preset, history: Vec::new(), cursor: 0, seeds: vec![seed] })
    }

    pub fn current(&self) -> &Seed<LaurentPolynomial> {
        &self.seeds[self.cursor]
    }

    pub fn payload(&self) -> SeedPayload {
        SeedPayload::from_seed(self.current(), Some(&self.preset), &self.history[..self.cursor])
    }

    /// Mutates at `k` (0-based). Steps after the cursor are dropped first.
    pub fn mutate(&mut self, k: usize) -> Result<(), CliError> {
        let n = self.current().rank();
        if k >= n {
            return Err(CliError::Usage(format!("vertex {} is not mutable (mutable vertices are 1..={n})", k + 1)));
        }
        let next = self.current().mutate(k)?;
        self.history.truncate(self.cursor);
        self.seeds.truncate(self.cursor + 1);
        self.history.push(k);
        self.seeds.push(next);
        self.cursor += 1;
        Ok(())
    }

    pub fn undo(&mut self) -> Result<(), CliError> {
        if self.cursor == 0 {
            return Err(CliError::Usage("nothing to undo".into()));
        }
        self.cursor -= 1;
        self.history.truncate(self.cursor);
        self.seeds.truncate(self.cursor + 1);
        Ok(())
    }

    /// Moves the cursor to `step` without discarding later steps.
    pub fn jump(&mut self, step: usize) -> Result<(), CliError> {
        if step > self.history.len() {
            return Err(CliError::Usage(format!("step {step} is beyond the history length {}", self.history.len())));
        }
        self.cursor = step;
        Ok(())
    }

    pub fn history(&self) -> HistoryPayload {
        HistoryPayload {
            preset: self.preset.name.clone(),
            history: self.history.iter().map(|k| k + 1).collect(),
            cursor: self.cursor,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryPayload {
    pub preset: String,
    /// 1-based vertices.
    pub history: Vec<usize>,
    pub cursor: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SessionCreated {
    pub id: Uuid,
    pub seed: SeedPayload,
}

#[derive(Deserialize)]
pub struct NewSession {
    pub preset: String,
}

#[derive(Deserialize)]
pub struct MutateRequest {
    /// 1-based.
    pub vertex: usize,
}

#[derive(Deserialize)]
pub struct JumpRequest {
    pub step: usize,
}

#[derive(Default, Clone)]
pub struct AppState {
    sessions: Arc<Mutex<HashMap<Uuid, Arc<Mutex<Session>>>>>,
}

pub enum ApiError {
    NotFound(Uuid),
    Cli(CliError),
}

impl From<CliError> for ApiError {
    fn from(e: CliError) -> Self {
        ApiError::Cli(e)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, msg) = match self {
            ApiError::NotFound(id) => (StatusCode::NOT_FOUND, format!("no session {id}")),
            ApiError::Cli(CliError::Usage(m)) => (StatusCode::BAD_REQUEST, m),
            ApiError::Cli(CliError::Runtime(m)) => (StatusCode::INTERNAL_SERVER_ERROR, m),
        };
        (status, Json(serde_json::json!({ "error": msg }))).into_response()
    }
}

impl AppState {
    fn session(&self, id: Uuid) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions.lock().get(&id).cloned().ok_or(ApiError::NotFound(id))
    }
}

/// Runs `f` on the session off the async workers, holding its lock.
async fn with_session<T: Send + 'static>(
    state: &AppState,
    id: Uuid,
    f: impl FnOnce(&mut Session) -> Result<T, CliError> + Send + 'static,
) -> Result<T, ApiError> {
    let session = state.session(id)?;
    tokio::task::spawn_blocking(move || f(&mut session.lock()))
        .await
        .map_err(|e| CliError::Runtime(e.to_string()))?
        .map_err(ApiError::from)
}

async fn list_presets() -> Json<Vec<PresetInfo>> {
    Json(presets::catalog())
}

async fn create_session(State(state): State<AppState>, Json(req): Json<NewSession>) -> Result<Json<SessionCreated>, ApiError> {
    let session = tokio::task::spawn_blocking(move || Session::new(&req.preset))
        .await
        .map_err(|e| CliError::Runtime(e.to_string()))??;
    let seed = session.payload();
    let id = Uuid::new_v4();
    state.sessions.lock().insert(id, Arc::new(Mutex::new(session)));
    Ok(Json(SessionCreated { id, seed }))
}

async fn get_seed(State(state): State<AppState>, Path(id): Path<Uuid>) -> Result<Json<SeedPayload>, ApiError> {
    with_session(&state, id, |s| Ok(s.payload())).await.map(Json)
}

async fn mutate(
    State(state): State<AppState>,
    Path(id): Path<Uuid>,
    Json(req): Json<MutateRequest>,
) -> Result<Json<SeedPayload>, ApiError> {
    if req.vertex == 0 {
        return Err(CliError::Usage("vertices are numbered from 1".into()).into());
    }
    with_session(&state, id, move |s| {
        s.mutate(req.vertex - 1)?;
        Ok(s.payload())
    })
    .await
    .map(Json)
}

async fn undo(State(state): State<AppState>, Path(id): Path<Uuid>) -> Result<Json<SeedPayload>, ApiError> {
    with_session(&state, id, |s| {
        s.undo()?;
        Ok(s.payload())
    })
    .await
    .map(Json)
}

async fn jump(
    State(state): State<AppState>,
    Path(id): Path<Uuid>,
    Json(req): Json<JumpRequest>,
) -> Result<Json<SeedPayload>, ApiError> {
    with_session(&state, id, move |s| {
        s.jump(req.step)?;
        Ok(s.payload())
    })
    .await
    .map(Json)
}

async fn history(State(state): State<AppState>, Path(id): Path<Uuid>) -> Result<Json<HistoryPayload>, ApiError> {
    with_session(&state, id, |s| Ok(s.history())).await.map(Json)
}

async fn index() -> &'static str {
    "cluster explorer API: GET /api/presets, POST /api/session, \
     GET /api/session/{id}/seed, POST /api/session/{id}/mutate, \
     POST /api/session/{id}/undo, POST /api/session/{id}/jump, GET /api/session/{id}/history\n"
}

pub fn router() -> Router {
    Router::new()
        .route("/", get(index))
        .route("/api/presets", get(list_presets))
        .route("/api/session", post(create_session))
        .route("/api/session/{id}/seed", get(get_seed))
        .route("/api/session/{id}/mutate", post(mutate))
        .route("/api/session/{id}/undo", post(undo))
        .route("/api/session/{id}/jump", post(jump))
        .route("/api/session/{id}/history", get(history))
        .with_state(AppState::default())
}

/// Binds `host:port` and serves until the process ends.
pub async fn serve(host: &str, port: u16) -> Result<(), CliError> {
    let listener = tokio::net::TcpListener::bind((host, port))
        .await
        .map_err(|e| CliError::Runtime(format!("cannot bind {host}:{port}: {e}")))?;
    eprintln!("listening on http://{}", listener.local_addr().map_err(|e| CliError::Runtime(e.to_string()))?);
    axum::serve(listener, router()).await.map_err(|e| CliError::Runtime(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn session_history_forks_after_a_jump() {
        let mut s = Session::new("a:3").unwrap();
        s.mutate(0).unwrap();
        s.mutate(1).unwrap();
        s.jump(1).unwrap();
        assert_eq!(s.history().history, [1, 2]);
        s.mutate(2).unwrap();
        assert_eq!(s.history().history, [1, 3]);
        assert_eq!(s.current(), &Session::new("a:3").unwrap().current().mutate_walk(&[0, 2]).unwrap());
        s.undo().unwrap();
        s.undo().unwrap();
        assert!(s.undo().is_err());
        assert!(s.jump(1).is_err());
        assert!(s.mutate(3).is_err());
    }
}
