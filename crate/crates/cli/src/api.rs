//! JSON HTTP service: game sessions, tree balls and lattice inner products.
//!
//! Every mutation accepts an optional `request_id`; repeating a request id
//! returns the recorded response instead of applying the mutation again.

use std::collections::{BTreeMap, HashMap};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use axum::body::Bytes;
use axum::extract::{Path as UrlPath, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use hessian_core::game::{self, GameOptions, GameState, Move, MoveTable, MAX_WORD_LEN};
use hessian_core::group::GroupWord;
use hessian_core::lattice::{self, LatticeVector};
use hessian_core::tree::{self, BallNode, TreeRep, TreeVertex};
use hessian_core::Rational;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;
use tower_http::services::ServeDir;

use crate::with_precision_retry;

/// Largest radius served by `/api/tree/ball`.
pub const MAX_BALL_RADIUS: u32 = 6;

#[derive(Debug, Error)]
pub enum ApiError {
    #[error("{0}")]
    NotFound(String),
    #[error("{0}")]
    BadRequest(String),
    #[error(transparent)]
    Core(#[from] hessian_core::Error),
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        use hessian_core::Error as E;
        let (status, code) = match &self {
            ApiError::NotFound(_) => (StatusCode::NOT_FOUND, "not_found"),
            ApiError::BadRequest(_) => (StatusCode::BAD_REQUEST, "bad_request"),
            ApiError::Core(E::Parse(_)) => (StatusCode::BAD_REQUEST, "parse"),
            ApiError::Core(E::Domain(_) | E::FamilyShape(_)) => (StatusCode::UNPROCESSABLE_ENTITY, "domain"),
            ApiError::Core(E::CapExceeded { .. }) => (StatusCode::UNPROCESSABLE_ENTITY, "cap_exceeded"),
            ApiError::Core(E::PrecisionExhausted(_)) => (StatusCode::INTERNAL_SERVER_ERROR, "precision_exhausted"),
            ApiError::Core(E::Internal(_)) => (StatusCode::INTERNAL_SERVER_ERROR, "internal"),
        };
        let body = json!({ "error": { "code": code, "message": self.to_string() } });
        (status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

#[derive(Clone, Debug, Default, Deserialize)]
pub struct NewGameRequest {
    #[serde(default)]
    pub scramble: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub options: GameOptions,
    pub request_id: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
pub struct MoveRequest {
    #[serde(rename = "move")]
    pub single: Option<Move>,
    #[serde(default)]
    pub moves: Vec<Move>,
    pub request_id: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
pub struct SolveRequest {
    /// Also play the solution.
    #[serde(default)]
    pub apply: bool,
    pub request_id: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct InnerProductRequest {
    pub v: LatticeVector,
    pub w: LatticeVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InnerProductResponse {
    #[serde(with = "hessian_core::rational::serde_str")]
    pub value: Rational,
}

/// A game session as returned by every game endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameView {
    pub id: String,
    pub state: GameState,
    pub options: GameOptions,
    /// `word · base` in the tree.
    pub vertex: TreeVertex,
    pub solved: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResponse {
    pub moves: Vec<Move>,
    pub applied: bool,
    pub game: GameView,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallResponse {
    pub radius: u32,
    pub nodes: Vec<BallNode>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct BallQuery {
    pub r: Option<u32>,
}

struct GameEntry {
    state: GameState,
    options: GameOptions,
    responses: HashMap<String, Value>,
}

#[derive(Serialize, Deserialize)]
struct StoredGame {
    state: GameState,
    options: GameOptions,
}

#[derive(Serialize, Deserialize)]
struct Snapshot {
    next_id: u64,
    games: BTreeMap<String, StoredGame>,
}

struct Shared {
    games: Mutex<HashMap<String, Arc<Mutex<GameEntry>>>>,
    created: Mutex<HashMap<String, Value>>,
    next_id: AtomicU64,
    moves: MoveTable,
    tree: TreeRep,
    precision: u32,
    persist: Option<PathBuf>,
    persist_lock: Mutex<()>,
}

/// Shared service state; cheap to clone.
#[derive(Clone)]
pub struct AppState {
    inner: Arc<Shared>,
}

impl AppState {
    pub fn new(precision: u32) -> hessian_core::Result<Self> {
        Ok(AppState {
            inner: Arc::new(Shared {
                games: Mutex::new(HashMap::new()),
                created: Mutex::new(HashMap::new()),
                next_id: AtomicU64::new(1),
                moves: MoveTable::new(),
                tree: TreeRep::new(precision)?,
                precision,
                persist: None,
                persist_lock: Mutex::new(()),
            }),
        })
    }

    /// State backed by a JSON snapshot at `path`, loaded if it exists.
    pub fn with_persistence(precision: u32, path: &Path) -> Result<Self, crate::CliError> {
        let mut state = AppState::new(precision)?;
        let shared = Arc::get_mut(&mut state.inner).expect("fresh state");
        shared.persist = Some(path.to_path_buf());
        if path.exists() {
            let snap: Snapshot = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            let mut games = HashMap::new();
            for (id, g) in snap.games {
                g.state.validate(&shared.moves)?;
                let entry = GameEntry { state: g.state, options: g.options, responses: HashMap::new() };
                games.insert(id, Arc::new(Mutex::new(entry)));
            }
            shared.games = Mutex::new(games);
            shared.next_id = AtomicU64::new(snap.next_id);
        }
        Ok(state)
    }

    fn vertex(&self, word: &GroupWord) -> ApiResult<TreeVertex> {
        let s = &self.inner;
        match s.tree.vertex(word) {
            Err(hessian_core::Error::PrecisionExhausted(_)) => {
                Ok(with_precision_retry(2 * s.precision, |n| TreeRep::new(n)?.vertex(word))?)
            }
            other => Ok(other?),
        }
    }

    fn view(&self, id: &str, e: &GameEntry) -> ApiResult<GameView> {
        Ok(GameView {
            id: id.to_string(),
            state: e.state.clone(),
            options: e.options,
            vertex: self.vertex(&e.state.word)?,
            solved: e.state.is_solved(),
        })
    }

    fn entry(&self, id: &str) -> ApiResult<Arc<Mutex<GameEntry>>> {
        self.inner
            .games
            .lock()
            .expect("games lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::NotFound(format!("no game with id {id:?}")))
    }

    fn persist(&self) -> ApiResult<()> {
        let Some(path) = &self.inner.persist else {
            return Ok(());
        };
        let _guard = self.inner.persist_lock.lock().expect("persist lock");
        let entries: Vec<(String, Arc<Mutex<GameEntry>>)> =
            self.inner.games.lock().expect("games lock").iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        let games = entries
            .into_iter()
            .map(|(id, e)| {
                let e = e.lock().expect("game lock");
                (id, StoredGame { state: e.state.clone(), options: e.options })
            })
            .collect();
        let snap = Snapshot { next_id: self.inner.next_id.load(Ordering::SeqCst), games };
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string(&snap).map_err(|e| ApiError::BadRequest(e.to_string()))?;
        std::fs::write(&tmp, text)
            .and_then(|_| std::fs::rename(&tmp, path))
            .map_err(|e| hessian_core::Error::Internal(format!("snapshot write failed: {e}")))?;
        Ok(())
    }

    pub fn game_count(&self) -> usize {
        self.inner.games.lock().expect("games lock").len()
    }
}

fn parse_body<T: DeserializeOwned + Default>(body: &Bytes) -> ApiResult<T> {
    if body.iter().all(u8::is_ascii_whitespace) {
        return Ok(T::default());
    }
    serde_json::from_slice(body).map_err(|e| ApiError::BadRequest(format!("invalid request body: {e}")))
}

async fn health() -> Json<Value> {
    Json(json!({ "status": "ok" }))
}

async fn new_game(State(app): State<AppState>, body: Bytes) -> ApiResult<Json<Value>> {
    let req: NewGameRequest = parse_body(&body)?;
    if req.scramble > MAX_WORD_LEN {
        return Err(ApiError::BadRequest(format!("scramble length above {MAX_WORD_LEN}")));
    }
    let mut created = app.inner.created.lock().expect("created lock");
    if let Some(previous) = req.request_id.as_ref().and_then(|r| created.get(r)) {
        return Ok(Json(previous.clone()));
    }
    let id = format!("g{}", app.inner.next_id.fetch_add(1, Ordering::SeqCst));
    let state = game::scramble(req.scramble, req.seed, &app.inner.moves);
    let entry = GameEntry { state, options: req.options, responses: HashMap::new() };
    let view = serde_json::to_value(app.view(&id, &entry)?).expect("serializable");
    app.inner.games.lock().expect("games lock").insert(id, Arc::new(Mutex::new(entry)));
    if let Some(r) = req.request_id {
        created.insert(r, view.clone());
    }
    drop(created);
    app.persist()?;
    Ok(Json(view))
}

async fn get_game(State(app): State<AppState>, UrlPath(id): UrlPath<String>) -> ApiResult<Json<GameView>> {
    let entry = app.entry(&id)?;
    let e = entry.lock().expect("game lock");
    Ok(Json(app.view(&id, &e)?))
}

async fn move_game(State(app): State<AppState>, UrlPath(id): UrlPath<String>, body: Bytes) -> ApiResult<Json<Value>> {
    let req: MoveRequest = parse_body(&body)?;
    let moves: Vec<Move> = req.single.into_iter().chain(req.moves).collect();
    if moves.is_empty() {
        return Err(ApiError::BadRequest("give \"move\" or a nonempty \"moves\" list".into()));
    }
    let entry = app.entry(&id)?;
    let response = {
        let mut e = entry.lock().expect("game lock");
        if let Some(previous) = req.request_id.as_ref().and_then(|r| e.responses.get(r)) {
            return Ok(Json(previous.clone()));
        }
        let mut next = e.state.clone();
        for m in moves {
            next = game::apply_move_with(&next, m, &e.options, &app.inner.moves)?;
        }
        e.state = next;
        let view = serde_json::to_value(app.view(&id, &e)?).expect("serializable");
        if let Some(r) = req.request_id {
            e.responses.insert(r, view.clone());
        }
        view
    };
    app.persist()?;
    Ok(Json(response))
}

async fn solve_game(State(app): State<AppState>, UrlPath(id): UrlPath<String>, body: Bytes) -> ApiResult<Json<Value>> {
    let req: SolveRequest = parse_body(&body)?;
    let entry = app.entry(&id)?;
    let response = {
        let mut e = entry.lock().expect("game lock");
        if let Some(previous) = req.request_id.as_ref().and_then(|r| e.responses.get(r)) {
            return Ok(Json(previous.clone()));
        }
        let moves = game::solve(&e.state);
        if req.apply {
            e.state = moves.iter().fold(e.state.clone(), |s, m| game::apply_move(&s, *m, &app.inner.moves));
        }
        let body = SolveResponse { moves, applied: req.apply, game: app.view(&id, &e)? };
        let value = serde_json::to_value(body).expect("serializable");
        if let Some(r) = req.request_id {
            e.responses.insert(r, value.clone());
        }
        value
    };
    if req.apply {
        app.persist()?;
    }
    Ok(Json(response))
}

async fn tree_ball(query: Result<Query<BallQuery>, axum::extract::rejection::QueryRejection>) -> ApiResult<Json<BallResponse>> {
    let Query(q) = query.map_err(|e| ApiError::BadRequest(e.body_text()))?;
    let radius = q.r.unwrap_or(2);
    if radius > MAX_BALL_RADIUS {
        return Err(ApiError::BadRequest(format!("radius above {MAX_BALL_RADIUS}")));
    }
    Ok(Json(BallResponse { radius, nodes: tree::ball_adjacency(radius) }))
}

async fn inner_product(body: Bytes) -> ApiResult<Json<InnerProductResponse>> {
    let req: InnerProductRequest =
        serde_json::from_slice(&body).map_err(|e| ApiError::BadRequest(format!("invalid request body: {e}")))?;
    Ok(Json(InnerProductResponse { value: lattice::inner_product(&req.v, &req.w) }))
}

async fn api_not_found() -> ApiError {
    ApiError::NotFound("no such endpoint".into())
}

/// The API router, with static assets from `static_dir` as the fallback.
pub fn router(state: AppState, static_dir: Option<&Path>) -> Router {
    let api = Router::new()
        .route("/api/health", get(health))
        .route("/api/game/new", post(new_game))
        .route("/api/game/{id}", get(get_game))
        .route("/api/game/{id}/move", post(move_game))
        .route("/api/game/{id}/solve", post(solve_game))
        .route("/api/tree/ball", get(tree_ball))
        .route("/api/lattice/inner_product", post(inner_product))
        .route("/api/{*rest}", axum::routing::any(api_not_found))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Serves until Ctrl-C.
pub async fn serve(addr: SocketAddr, state: AppState, static_dir: Option<PathBuf>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state, static_dir.as_deref()))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
