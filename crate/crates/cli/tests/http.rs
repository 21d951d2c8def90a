use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use hessian_cli::api::{self, AppState, BallResponse, GameView, SolveResponse};
use hessian_core::game::{self, GameState, Move, MoveTable};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    api::router(AppState::new(48).unwrap(), None)
}

async fn call(app: &Router, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => req.header("content-type", "application/json").body(Body::from(b.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap_or(Value::Null) };
    (status, value)
}

async fn new_game(app: &Router, body: Value) -> GameView {
    let (status, v) = call(app, Method::POST, "/api/game/new", Some(body)).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    serde_json::from_value(v).unwrap()
}

#[tokio::test]
async fn health_reports_ok() {
    let (status, v) = call(&app(), Method::GET, "/api/health", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v, json!({"status": "ok"}));
}

#[tokio::test]
async fn new_game_with_scramble_has_history() {
    let app = app();
    let g = new_game(&app, json!({"scramble": 5, "seed": 7})).await;
    assert_eq!(g.state.history.len(), 5);
    assert!(!g.solved);
    g.state.validate(&MoveTable::new()).unwrap();
    assert_eq!(g.state, game::scramble(5, 7, &MoveTable::new()));
    assert_eq!(g.vertex.distance() as usize, g.state.word.len());
}

#[tokio::test]
async fn empty_body_creates_solved_game() {
    let app = app();
    let (status, v) = call(&app, Method::POST, "/api/game/new", None).await;
    assert_eq!(status, StatusCode::OK);
    let g: GameView = serde_json::from_value(v).unwrap();
    assert!(g.solved);
    assert!(g.state.history.is_empty());
}

#[tokio::test]
async fn get_returns_stored_game() {
    let app = app();
    let g = new_game(&app, json!({"scramble": 3, "seed": 1})).await;
    let (status, v) = call(&app, Method::GET, &format!("/api/game/{}", g.id), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(serde_json::from_value::<GameView>(v).unwrap(), g);
}

#[tokio::test]
async fn unknown_game_is_404_with_error_payload() {
    let app = app();
    for (method, uri) in [
        (Method::GET, "/api/game/nope"),
        (Method::POST, "/api/game/nope/move"),
        (Method::POST, "/api/game/nope/solve"),
    ] {
        let body = (method == Method::POST).then(|| json!({"move": "F0"}));
        let (status, v) = call(&app, method, uri, body).await;
        assert_eq!(status, StatusCode::NOT_FOUND, "{uri}");
        assert_eq!(v["error"]["code"], "not_found");
        assert!(v["error"]["message"].is_string());
    }
    let (status, v) = call(&app, Method::GET, "/api/nothing/here", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(v["error"]["code"], "not_found");
}

#[tokio::test]
async fn moves_update_word_and_vertex() {
    let app = app();
    let g = new_game(&app, json!({})).await;
    let uri = format!("/api/game/{}/move", g.id);
    let (status, v) = call(&app, Method::POST, &uri, Some(json!({"move": "F0"}))).await;
    assert_eq!(status, StatusCode::OK);
    let g1: GameView = serde_json::from_value(v).unwrap();
    assert_eq!(g1.state.word.to_string(), "x0");
    assert_eq!(g1.vertex.distance(), 1);
    let (_, v) = call(&app, Method::POST, &uri, Some(json!({"moves": ["F1", "F2"]}))).await;
    let g2: GameView = serde_json::from_value(v).unwrap();
    assert_eq!(g2.state.word.to_string(), "x0 x1 x2");
    assert_eq!(g2.vertex.distance(), 3);
    assert_eq!(g2.state.history.len(), 3);
}

#[tokio::test]
async fn bad_move_requests_are_rejected() {
    let app = app();
    let g = new_game(&app, json!({})).await;
    let uri = format!("/api/game/{}/move", g.id);
    let (status, v) = call(&app, Method::POST, &uri, Some(json!({"move": "F7"}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST, "{v}");
    let (status, _) = call(&app, Method::POST, &uri, Some(json!({}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, v) = call(&app, Method::POST, &uri, Some(json!({"move": "S=(1023)"}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY, "{v}");
    assert_eq!(v["error"]["code"], "domain");
    let (status, _) = call(&app, Method::POST, "/api/game/new", Some(json!({"scramble": 1000}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (_, v) = call(&app, Method::GET, &format!("/api/game/{}", g.id), None).await;
    assert!(serde_json::from_value::<GameView>(v).unwrap().solved);
}

#[tokio::test]
async fn symmetry_moves_when_enabled() {
    let app = app();
    let g = new_game(&app, json!({"options": {"symmetry_moves": true}})).await;
    assert!(g.options.symmetry_moves);
    let uri = format!("/api/game/{}/move", g.id);
    let (status, v) = call(&app, Method::POST, &uri, Some(json!({"moves": ["F0", "S=(1023)"]}))).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    let g1: GameView = serde_json::from_value(v).unwrap();
    assert_eq!(g1.state.word.to_string(), "x0 s=(1023)");
    let (_, v) = call(&app, Method::POST, &format!("/api/game/{}/solve", g.id), Some(json!({"apply": true}))).await;
    let s: SolveResponse = serde_json::from_value(v).unwrap();
    assert!(s.game.solved);
    assert!(s.game.state.pose.is_identity());
}

#[tokio::test]
async fn move_is_idempotent_per_request_id() {
    let app = app();
    let g = new_game(&app, json!({})).await;
    let uri = format!("/api/game/{}/move", g.id);
    let body = json!({"move": "F2", "request_id": "r1"});
    let (_, first) = call(&app, Method::POST, &uri, Some(body.clone())).await;
    let (_, second) = call(&app, Method::POST, &uri, Some(body)).await;
    assert_eq!(first, second);
    let (_, v) = call(&app, Method::GET, &format!("/api/game/{}", g.id), None).await;
    assert_eq!(v["state"]["history"].as_array().unwrap().len(), 1);
    let (_, third) = call(&app, Method::POST, &uri, Some(json!({"move": "F2", "request_id": "r2"}))).await;
    assert_eq!(third["state"]["history"].as_array().unwrap().len(), 2);
    assert_eq!(third["solved"], true);
}

#[tokio::test]
async fn new_is_idempotent_per_request_id() {
    let app = app();
    let body = json!({"scramble": 4, "seed": 3, "request_id": "create-1"});
    let a = new_game(&app, body.clone()).await;
    let b = new_game(&app, body).await;
    assert_eq!(a, b);
    let c = new_game(&app, json!({"scramble": 4, "seed": 3, "request_id": "create-2"})).await;
    assert_ne!(a.id, c.id);
}

#[tokio::test]
async fn solve_is_idempotent_per_request_id() {
    let app = app();
    let g = new_game(&app, json!({"scramble": 6, "seed": 11})).await;
    let uri = format!("/api/game/{}/solve", g.id);
    let body = json!({"apply": true, "request_id": "s"});
    let (_, a) = call(&app, Method::POST, &uri, Some(body.clone())).await;
    let (_, b) = call(&app, Method::POST, &uri, Some(body)).await;
    assert_eq!(a, b);
    let (_, v) = call(&app, Method::GET, &format!("/api/game/{}", g.id), None).await;
    assert_eq!(v["state"]["history"].as_array().unwrap().len(), 12);
}

#[tokio::test]
async fn solve_round_trip_reaches_identity() {
    let app = app();
    for seed in 0..10 {
        let g = new_game(&app, json!({"scramble": 8, "seed": seed})).await;
        let (status, v) = call(&app, Method::POST, &format!("/api/game/{}/solve", g.id), None).await;
        assert_eq!(status, StatusCode::OK);
        let s: SolveResponse = serde_json::from_value(v).unwrap();
        assert!(!s.applied);
        assert_eq!(s.game.state, g.state);
        assert_eq!(s.moves.len(), g.state.word.len());

        let (_, v) = call(&app, Method::POST, &format!("/api/game/{}/move", g.id), Some(json!({"moves": s.moves}))).await;
        let done: GameView = serde_json::from_value(v).unwrap();
        assert!(done.solved);
        assert!(done.state.pose.is_identity());
        assert!(done.state.word.is_identity());
        assert_eq!(done.vertex, hessian_core::tree::TreeVertex::base());
    }
}

#[tokio::test]
async fn tree_ball_sizes_and_cap() {
    let app = app();
    for (r, size) in [(0u32, 1usize), (1, 5), (2, 17), (3, 53), (4, 161)] {
        let (status, v) = call(&app, Method::GET, &format!("/api/tree/ball?r={r}"), None).await;
        assert_eq!(status, StatusCode::OK);
        let b: BallResponse = serde_json::from_value(v).unwrap();
        assert_eq!(b.radius, r);
        assert_eq!(b.nodes.len(), size);
        assert_eq!(b.nodes[0].vertex, hessian_core::tree::TreeVertex::base());
        for (i, n) in b.nodes.iter().enumerate() {
            for &j in &n.neighbors {
                assert!(b.nodes[j].neighbors.contains(&i));
                assert_eq!(b.nodes[j].depth.abs_diff(n.depth), 1);
            }
        }
    }
    let (status, v) = call(&app, Method::GET, "/api/tree/ball?r=99", None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["error"]["code"], "bad_request");
    let (status, _) = call(&app, Method::GET, "/api/tree/ball?r=abc", None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn lattice_inner_product_is_exact() {
    let app = app();
    let delta = hessian_core::lattice::delta();
    let (status, v) = call(
        &app,
        Method::POST,
        "/api/lattice/inner_product",
        Some(json!({"v": delta, "w": delta})),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v, json!({"value": "10/1"}));

    let half = json!(["1/2", "0", "0", "0", "0", "0", "0", "0", "0", "0"]);
    let one = json!(["0", "1", "0", "0", "0", "0", "0", "0", "0", "0"]);
    let (status, v) = call(&app, Method::POST, "/api/lattice/inner_product", Some(json!({"v": half, "w": one}))).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    assert!(v["value"].is_string());

    let (status, v) = call(&app, Method::POST, "/api/lattice/inner_product", Some(json!({"v": [1, 2]}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["error"]["code"], "bad_request");
}

#[tokio::test]
async fn concurrent_moves_are_serialized_per_game() {
    let app = app();
    let g = new_game(&app, json!({})).await;
    let uri = format!("/api/game/{}/move", g.id);
    let handles: Vec<_> = (0..16)
        .map(|i| {
            let app = app.clone();
            let uri = uri.clone();
            tokio::spawn(async move { call(&app, Method::POST, &uri, Some(json!({"move": format!("F{}", i % 4)}))).await })
        })
        .collect();
    for h in handles {
        assert_eq!(h.await.unwrap().0, StatusCode::OK);
    }
    let (_, v) = call(&app, Method::GET, &format!("/api/game/{}", g.id), None).await;
    let view: GameView = serde_json::from_value(v).unwrap();
    assert_eq!(view.state.history.len(), 16);
    view.state.validate(&MoveTable::new()).unwrap();
}

#[tokio::test]
async fn persisted_games_survive_restart() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("games.json");
    let first = api::router(AppState::with_persistence(48, &path).unwrap(), None);
    let g = new_game(&first, json!({"scramble": 5, "seed": 9})).await;
    let (_, v) = call(&first, Method::POST, &format!("/api/game/{}/move", g.id), Some(json!({"move": "F3"}))).await;
    let moved: GameView = serde_json::from_value(v).unwrap();
    assert!(path.exists());

    let state = AppState::with_persistence(48, &path).unwrap();
    assert_eq!(state.game_count(), 1);
    let second = api::router(state, None);
    let (status, v) = call(&second, Method::GET, &format!("/api/game/{}", g.id), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(serde_json::from_value::<GameView>(v).unwrap(), moved);
    let other = new_game(&second, json!({})).await;
    assert_ne!(other.id, g.id);
}

#[tokio::test]
async fn corrupt_snapshot_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("games.json");
    let mut state: Value = serde_json::to_value(game::scramble(3, 1, &MoveTable::new())).unwrap();
    state["history"] = json!(["F0"]);
    let snap = json!({"next_id": 2, "games": {"g1": {"state": state, "options": {"symmetry_moves": false}}}});
    std::fs::write(&path, snap.to_string()).unwrap();
    assert!(AppState::with_persistence(48, &path).is_err());
}

#[tokio::test]
async fn static_assets_are_served() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.html"), "<html>hessian</html>").unwrap();
    std::fs::write(dir.path().join("app.js"), "console.log(1)").unwrap();
    let app = api::router(AppState::new(48).unwrap(), Some(dir.path()));
    for (uri, body) in [("/", "<html>hessian</html>"), ("/index.html", "<html>hessian</html>"), ("/app.js", "console.log(1)")] {
        let resp = app.clone().oneshot(Request::get(uri).body(Body::empty()).unwrap()).await.unwrap();
        assert_eq!(resp.status(), StatusCode::OK, "{uri}");
        let bytes = resp.into_body().collect().await.unwrap().to_bytes();
        assert_eq!(&bytes[..], body.as_bytes());
    }
    let resp = app.clone().oneshot(Request::get("/missing.css").body(Body::empty()).unwrap()).await.unwrap();
    assert_eq!(resp.status(), StatusCode::NOT_FOUND);
    let (status, _) = call(&app, Method::GET, "/api/health", None).await;
    assert_eq!(status, StatusCode::OK);
}

#[test]
fn api_types_round_trip_through_json() {
    let table = MoveTable::new();
    let state: GameState = game::scramble(7, 5, &table);
    let view = GameView {
        id: "g1".into(),
        vertex: hessian_core::tree::TreeRep::new(48).unwrap().vertex(&state.word).unwrap(),
        solved: state.is_solved(),
        options: Default::default(),
        state,
    };
    let back: GameView = serde_json::from_str(&serde_json::to_string(&view).unwrap()).unwrap();
    assert_eq!(back, view);

    let solve = SolveResponse { moves: game::solve(&view.state), applied: false, game: view };
    let back: SolveResponse = serde_json::from_str(&serde_json::to_string(&solve).unwrap()).unwrap();
    assert_eq!(back, solve);

    let ball = BallResponse { radius: 2, nodes: hessian_core::tree::ball_adjacency(2) };
    let back: BallResponse = serde_json::from_str(&serde_json::to_string(&ball).unwrap()).unwrap();
    assert_eq!(back, ball);

    let moves: Vec<Move> = serde_json::from_value(json!(["F0", "F3", "S=(1023)"])).unwrap();
    assert_eq!(serde_json::to_value(&moves).unwrap(), json!(["F0", "F3", "S=(1023)"]));
}
