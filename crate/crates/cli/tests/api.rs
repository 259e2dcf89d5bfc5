use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use cluster_cli::cmd_mutate;
use cluster_cli::payload::SeedPayload;
use cluster_cli::server::router;

async fn call(app: &Router, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let mut req = Request::builder().method(method).uri(uri);
    let body = match body {
        Some(v) => {
            req = req.header("content-type", "application/json");
            Body::from(v.to_string())
        }
        None => Body::empty(),
    };
    let resp = app.clone().oneshot(req.body(body).unwrap()).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = serde_json::from_slice(&bytes).unwrap_or(Value::Null);
    (status, value)
}

async fn open(app: &Router, preset: &str) -> String {
    let (status, v) = call(app, Method::POST, "/api/session", Some(json!({ "preset": preset }))).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    v["id"].as_str().unwrap().to_string()
}

async fn click(app: &Router, id: &str, vertex: usize) -> (StatusCode, Value) {
    call(app, Method::POST, &format!("/api/session/{id}/mutate"), Some(json!({ "vertex": vertex }))).await
}

#[tokio::test]
async fn presets_are_listed() {
    let app = router();
    let (status, v) = call(&app, Method::GET, "/api/presets", None).await;
    assert_eq!(status, StatusCode::OK);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|p| p["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"a2"));
    assert!(names.contains(&"rectangles:3,7"));
}

#[tokio::test]
async fn mutate_undo_and_history() {
    let app = router();
    let (status, created) = call(&app, Method::POST, "/api/session", Some(json!({ "preset": "a2" }))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(created["seed"]["cluster"], json!(["x1", "x2"]));
    let id = created["id"].as_str().unwrap();

    let (status, v) = click(&app, id, 1).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["cluster"][0], "(x2 + 1)/(x1)");
    assert_eq!(v["walk"], json!([1]));

    let (_, v) = click(&app, id, 2).await;
    assert_eq!(v["walk"], json!([1, 2]));
    let (_, h) = call(&app, Method::GET, &format!("/api/session/{id}/history"), None).await;
    assert_eq!(h, json!({ "preset": "a2", "history": [1, 2], "cursor": 2 }));

    let (status, v) = call(&app, Method::POST, &format!("/api/session/{id}/undo"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["walk"], json!([1]));
    let (_, seed) = call(&app, Method::GET, &format!("/api/session/{id}/seed"), None).await;
    assert_eq!(seed, v);
}

#[tokio::test]
async fn jump_then_mutate_forks_the_history() {
    let app = router();
    let id = open(&app, "a:3").await;
    for k in [1, 2, 3] {
        click(&app, &id, k).await;
    }
    let (status, v) = call(&app, Method::POST, &format!("/api/session/{id}/jump"), Some(json!({ "step": 1 }))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["walk"], json!([1]));
    let (_, h) = call(&app, Method::GET, &format!("/api/session/{id}/history"), None).await;
    assert_eq!(h["history"], json!([1, 2, 3]));
    assert_eq!(h["cursor"], 1);

    click(&app, &id, 3).await;
    let (_, h) = call(&app, Method::GET, &format!("/api/session/{id}/history"), None).await;
    assert_eq!(h["history"], json!([1, 3]));
    assert_eq!(h["cursor"], 2);

    let (status, _) = call(&app, Method::POST, &format!("/api/session/{id}/jump"), Some(json!({ "step": 5 }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn errors_map_to_status_codes() {
    let app = router();
    let missing = "00000000-0000-4000-8000-000000000000";
    let (status, v) = call(&app, Method::GET, &format!("/api/session/{missing}/seed"), None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert!(v["error"].is_string());

    let (status, _) = call(&app, Method::POST, "/api/session", Some(json!({ "preset": "nope" }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let id = open(&app, "rectangles:3,6").await;
    // rank 4: vertex 5 is frozen, 40 does not exist, 0 is not a vertex number
    for vertex in [5, 40, 0] {
        let (status, v) = click(&app, &id, vertex).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "vertex {vertex}: {v}");
    }
    let (status, _) = call(&app, Method::POST, &format!("/api/session/{id}/undo"), None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn replay_matches_between_sessions_and_the_cli() {
    let app = router();
    let clicks = [4, 5, 6, 1, 2, 3];
    let mut finals = Vec::new();
    for _ in 0..2 {
        let id = open(&app, "rectangles:3,7").await;
        let mut last = Value::Null;
        for k in clicks {
            let (status, v) = click(&app, &id, k).await;
            assert_eq!(status, StatusCode::OK);
            last = v;
        }
        finals.push(last);
    }
    assert_eq!(finals[0], finals[1]);

    let walk: Vec<usize> = clicks.iter().map(|k| k - 1).collect();
    let out = cmd_mutate(Some("rectangles:3,7"), None, &walk).unwrap();
    let cli: SeedPayload = serde_json::from_str(&out.text).unwrap();
    let api: SeedPayload = serde_json::from_value(finals.pop().unwrap()).unwrap();
    assert_eq!(api, cli);
}
