use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use cli::{router, Store};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map_or_else(Body::empty, |b| Body::from(b.to_string())))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap())
}

async fn session(app: &Router) -> String {
    let (s, v) = call(app, "POST", "/api/sessions", None).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["v"], 1);
    v["session_id"].as_str().unwrap().to_string()
}

async fn ghz3(app: &Router, sid: &str) -> String {
    let body = json!({ "generator": { "name": "ghz", "delta": 3 } });
    let (s, v) = call(app, "POST", &format!("/api/sessions/{sid}/problems"), Some(body)).await;
    assert_eq!(s, StatusCode::OK, "{v}");
    v["pid"].as_str().unwrap().to_string()
}

fn app() -> Router {
    router(Arc::new(Store::in_memory()))
}

fn is_acyclic(nodes: &[Value], edges: &[Value]) -> bool {
    let names: Vec<&str> = nodes.iter().map(|n| n.as_str().unwrap()).collect();
    let mut indeg = vec![0usize; names.len()];
    let pos = |n: &Value| names.iter().position(|x| *x == n.as_str().unwrap()).unwrap();
    let es: Vec<(usize, usize)> = edges.iter().map(|e| (pos(&e[0]), pos(&e[1]))).collect();
    for &(_, b) in &es {
        indeg[b] += 1;
    }
    let mut stack: Vec<usize> = (0..names.len()).filter(|&i| indeg[i] == 0).collect();
    let mut seen = 0;
    while let Some(a) = stack.pop() {
        seen += 1;
        for &(x, b) in &es {
            if x == a {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    stack.push(b);
                }
            }
        }
    }
    seen == names.len()
}

#[tokio::test]
async fn smoke_load_re_diagram() {
    let app = app();
    let sid = session(&app).await;
    let pid = ghz3(&app, &sid).await;
    let (s, v) = call(&app, "POST", &format!("/api/sessions/{sid}/problems/{pid}/re"), None).await;
    assert_eq!(s, StatusCode::OK, "{v}");
    let re = v["new_pid"].as_str().unwrap().to_string();
    assert!(v["diff"]["labels_added"].as_array().is_some());
    let (s, d) = call(&app, "GET", &format!("/api/sessions/{sid}/problems/{re}/diagram?side=black"), None).await;
    assert_eq!(s, StatusCode::OK, "{d}");
    assert_eq!(d["v"], 1);
    let (nodes, edges) = (d["nodes"].as_array().unwrap(), d["edges"].as_array().unwrap());
    assert!(!nodes.is_empty());
    assert!(is_acyclic(nodes, edges));
}

#[tokio::test]
async fn problem_view_lists_constraints() {
    let app = app();
    let sid = session(&app).await;
    let pid = ghz3(&app, &sid).await;
    let (s, v) = call(&app, "GET", &format!("/api/sessions/{sid}/problems/{pid}"), None).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["white"]["arity"], 3);
    assert_eq!(v["white"]["configs"].as_array().unwrap().len(), 8);
    assert_eq!(v["black"]["arity"], 3);
    assert_eq!(v["hash"], v["stats"]["hash"]);
    assert_eq!(v["hash"].as_str().unwrap().len(), 64);
}

#[tokio::test]
async fn merge_with_unknown_label_is_400() {
    let app = app();
    let sid = session(&app).await;
    let pid = ghz3(&app, &sid).await;
    let body = json!({ "a": "NOPE_1", "b": "MY0_1" });
    let (s, v) = call(&app, "POST", &format!("/api/sessions/{sid}/problems/{pid}/merge"), Some(body)).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert_eq!(v["error"], "bad_request");
    assert!(v["detail"].as_str().unwrap().contains("NOPE_1"));
}

#[tokio::test]
async fn error_statuses() {
    let app = app();
    let (s, v) = call(&app, "GET", "/api/sessions/none/tree", None).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
    assert_eq!(v["error"], "not_found");
    let sid = session(&app).await;
    let (s, _) = call(&app, "GET", &format!("/api/sessions/{sid}/problems/p7"), None).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
    let uri = format!("/api/sessions/{sid}/problems");
    let (s, _) = call(&app, "POST", &uri, Some(json!({ "text": "white\nA A\nblack\nA (" }))).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    let (s, _) = call(&app, "POST", &uri, Some(json!({ "bogus": 1 }))).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    let wide = format!("white\n{}\nblack\nA\n", "A ".repeat(17));
    let (s, v) = call(&app, "POST", &uri, Some(json!({ "text": wide }))).await;
    assert_eq!(s, StatusCode::CONFLICT, "{v}");
    let (s, _) = call(&app, "POST", &uri, Some(json!({ "generator": { "name": "ghz", "delta": 40 } }))).await;
    assert_eq!(s, StatusCode::CONFLICT);
}

#[tokio::test]
async fn heuristic_step_without_candidate_is_409() {
    let app = app();
    let sid = session(&app).await;
    let pid = ghz3(&app, &sid).await;
    let body = json!({ "exhaust": false });
    let (s, v) = call(&app, "POST", &format!("/api/sessions/{sid}/problems/{pid}/heuristic"), Some(body)).await;
    assert_eq!(s, StatusCode::CONFLICT, "{v}");
}

#[tokio::test]
async fn tree_after_four_operations() {
    let app = app();
    let sid = session(&app).await;
    let text = lcl_core::serialize(&ghz_family::iterated_ghz(3).unwrap());
    let (_, v) = call(&app, "POST", &format!("/api/sessions/{sid}/problems"), Some(json!({ "text": text }))).await;
    let mut pid = v["pid"].as_str().unwrap().to_string();
    for op in ["re", "heuristic", "rere"] {
        let (s, v) = call(&app, "POST", &format!("/api/sessions/{sid}/problems/{pid}/{op}"), None).await;
        assert_eq!(s, StatusCode::OK, "{op}: {v}");
        pid = v["new_pid"].as_str().unwrap().to_string();
    }
    let (s, t) = call(&app, "GET", &format!("/api/sessions/{sid}/tree"), None).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(t["nodes"].as_array().unwrap().len(), 4);
    let edges = t["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 3);
    let ops: Vec<&str> = edges.iter().map(|e| e["op"]["op"].as_str().unwrap()).collect();
    assert_eq!(ops, ["re", "heuristic", "rere"]);
    let (_, r) = call(&app, "GET", &format!("/api/sessions/{sid}/replay"), None).await;
    assert_eq!(r["ok"], true, "{r}");
}

#[tokio::test]
async fn zero_round_on_pi_one_three() {
    let app = app();
    let sid = session(&app).await;
    let body = json!({ "generator": { "name": "pi", "delta": 3, "i": 1 } });
    let (_, v) = call(&app, "POST", &format!("/api/sessions/{sid}/problems"), Some(body)).await;
    let pid = v["pid"].as_str().unwrap();
    let (s, z) = call(&app, "POST", &format!("/api/sessions/{sid}/problems/{pid}/zero-round"), None).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(z["solvable"], false);
    assert_eq!(z["colored"], true);
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_derivations_from_one_snapshot() {
    let app = app();
    let sid = session(&app).await;
    let pid = ghz3(&app, &sid).await;
    let uri = format!("/api/sessions/{sid}/problems/{pid}/re");
    let calls = (0..4).map(|_| {
        let (app, uri) = (app.clone(), uri.clone());
        tokio::spawn(async move { call(&app, "POST", &uri, None).await })
    }).collect::<Vec<_>>();
    let mut pids = Vec::new();
    let mut hashes = Vec::new();
    for c in calls {
        let (s, v) = c.await.unwrap();
        assert_eq!(s, StatusCode::OK);
        pids.push(v["new_pid"].as_str().unwrap().to_string());
        hashes.push(v["summary"]["hash"].as_str().unwrap().to_string());
    }
    pids.sort();
    pids.dedup();
    assert_eq!(pids.len(), 4);
    assert!(hashes.windows(2).all(|w| w[0] == w[1]));
}

#[tokio::test]
async fn simulate_endpoint() {
    let app = app();
    let body = json!({ "kind": "quantum-ghz", "delta": 4, "n": 30, "seed": 5 });
    let (s, v) = call(&app, "POST", "/api/simulate", Some(body)).await;
    assert_eq!(s, StatusCode::OK, "{v}");
    assert_eq!(v["valid"], true);
    assert_eq!(v["rounds"], 1);
    assert_eq!(v["v"], 1);
    let (s, _) = call(&app, "POST", "/api/simulate", Some(json!({ "kind": "warp", "delta": 3, "n": 3 }))).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    let (s, _) = call(&app, "POST", "/api/simulate", Some(json!({ "kind": "classical-ghz", "delta": 3, "n": 4 }))).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn persistence_survives_a_restart() {
    let dir = tempfile::tempdir().unwrap();
    let (sid, hash) = {
        let app = router(Arc::new(Store::persistent(dir.path()).unwrap()));
        let sid = session(&app).await;
        let pid = ghz3(&app, &sid).await;
        let (_, v) = call(&app, "POST", &format!("/api/sessions/{sid}/problems/{pid}/re"), None).await;
        (sid, v["summary"]["hash"].as_str().unwrap().to_string())
    };
    assert!(dir.path().join(&sid).join("p2.lcl").is_file());
    let app = router(Arc::new(Store::persistent(dir.path()).unwrap()));
    let (s, v) = call(&app, "GET", &format!("/api/sessions/{sid}/problems/p2"), None).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["hash"], hash.as_str());
    let (_, r) = call(&app, "GET", &format!("/api/sessions/{sid}/replay"), None).await;
    assert_eq!(r["ok"], true);
}
