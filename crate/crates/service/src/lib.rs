//! HTTP API over the `hypergame` solvers: the game catalog, stateless
//! analysis and stateful play sessions against the engine.
//!
//! | route | |
//! |---|---|
//! | `GET /games` | catalog names |
//! | `GET /games/{name}` | HYG document |
//! | `POST /analyze` | HYG body, returns [`report::Analysis`] |
//! | `POST /sessions` | `{game, humanSide, opener}`, returns [`SessionView`] |
//! | `GET /sessions/{id}` | [`SessionView`] |
//! | `POST /sessions/{id}/move` | `{target}`, returns [`SessionView`] |

pub mod report;
mod session;

use std::net::SocketAddr;
use std::sync::Arc;
use std::time::Duration;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use hypergame::corpus::{catalog, catalog_document, parse, parse_document, serialize_document, NAMES};
use hypergame::{Error, Side};
use serde::Deserialize;
use serde_json::{json, Value};
use tokio::net::TcpListener;
use tower_http::cors::CorsLayer;
use uuid::Uuid;

pub use session::{Candidate, SessionView, Step};

pub const DEFAULT_TTL: Duration = Duration::from_secs(30 * 60);

#[derive(Clone)]
pub struct AppState {
    store: Arc<session::Store>,
}

impl AppState {
    pub fn new(ttl: Duration) -> Self {
        AppState {
            store: Arc::new(session::Store::new(ttl)),
        }
    }

    pub fn sessions(&self) -> usize {
        self.store.len()
    }

    pub fn evict_expired(&self) {
        self.store.evict_expired();
    }
}

impl Default for AppState {
    fn default() -> Self {
        AppState::new(DEFAULT_TTL)
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
    diagnostics: Vec<Value>,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError {
            status,
            message: message.into(),
            diagnostics: Vec::new(),
        }
    }

    fn bad_document(e: Error) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            message: e.to_string(),
            diagnostics: report::diagnostics(&e),
        }
    }

    fn no_session(id: Uuid) -> Self {
        ApiError::new(StatusCode::NOT_FOUND, format!("no session `{id}`"))
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, r.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({ "error": self.message, "diagnostics": self.diagnostics });
        (self.status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/games", get(list_games))
        .route("/games/{name}", get(get_game))
        .route("/analyze", post(analyze))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/move", post(move_session))
        .layer(CorsLayer::permissive())
        .with_state(state)
}

/// Binds `127.0.0.1:port`; port 0 picks a free one.
pub async fn bind(port: u16) -> std::io::Result<(TcpListener, SocketAddr)> {
    let listener = TcpListener::bind(("127.0.0.1", port)).await?;
    let addr = listener.local_addr()?;
    Ok((listener, addr))
}

/// Serves until the listener fails, sweeping expired sessions periodically.
pub async fn serve(listener: TcpListener, state: AppState) -> std::io::Result<()> {
    let sweeper = state.clone();
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(Duration::from_secs(60));
        loop {
            tick.tick().await;
            sweeper.evict_expired();
        }
    });
    axum::serve(listener, router(state)).await
}

async fn list_games() -> Json<Vec<&'static str>> {
    Json(NAMES.to_vec())
}

async fn get_game(Path(name): Path<String>) -> ApiResult<Response> {
    let doc = catalog_document(&name).map_err(|e| ApiError::new(StatusCode::NOT_FOUND, e.to_string()))?;
    Ok(([(header::CONTENT_TYPE, "application/json")], serialize_document(&doc)).into_response())
}

async fn analyze(body: String) -> ApiResult<Json<report::Analysis>> {
    let doc = parse_document(&body).map_err(ApiError::bad_document)?;
    let analysis = tokio::task::spawn_blocking(move || report::analyze(&doc.graph, false))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
    Ok(Json(analysis))
}

/// A catalog name or an inline HYG document.
#[derive(Deserialize)]
#[serde(untagged)]
enum GameSpec {
    Name(String),
    Document(Value),
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct CreateSession {
    game: GameSpec,
    human_side: Side,
    #[serde(default = "left")]
    opener: Side,
}

fn left() -> Side {
    Side::L
}

#[derive(Deserialize)]
struct MoveRequest {
    target: String,
}

async fn create_session(
    State(state): State<AppState>,
    body: Result<Json<CreateSession>, JsonRejection>,
) -> ApiResult<(StatusCode, Json<SessionView>)> {
    let Json(req) = body?;
    let (name, graph) = match req.game {
        GameSpec::Name(name) => {
            let g = catalog(&name).map_err(|e| ApiError::new(StatusCode::NOT_FOUND, e.to_string()))?;
            (Some(name), g)
        }
        GameSpec::Document(doc) => (None, parse(&doc.to_string()).map_err(ApiError::bad_document)?),
    };
    let store = state.store.clone();
    let view = tokio::task::spawn_blocking(move || store.create(name, graph, req.human_side, req.opener))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
    Ok((StatusCode::CREATED, Json(view)))
}

async fn get_session(State(state): State<AppState>, Path(id): Path<Uuid>) -> ApiResult<Json<SessionView>> {
    let store = &state.store;
    store.with(id, |s| Json(store.view(id, s))).ok_or(ApiError::no_session(id))
}

async fn move_session(
    State(state): State<AppState>,
    Path(id): Path<Uuid>,
    body: Result<Json<MoveRequest>, JsonRejection>,
) -> ApiResult<Json<SessionView>> {
    let Json(req) = body?;
    let store = &state.store;
    store
        .with(id, |s| match s.play.human_move(&req.target) {
            Ok(()) => Ok(Json(store.view(id, s))),
            Err(e) => Err(ApiError::new(StatusCode::CONFLICT, e.to_string())),
        })
        .ok_or(ApiError::no_session(id))?
}
