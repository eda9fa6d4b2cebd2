//! HTTP/JSON service over the session store.

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use lcl_core::Side;
use round_elim::{diagram, zero_round_solvable, Method};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::ops::{self, diff, parse_side, parse_sim_kind, side_lines, summary, Family, OpError, Operation};
use crate::session::{Store, StoreError};

/// Schema version stamped on every response.
pub const V: u32 = 1;

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    error: &'static str,
    detail: String,
}

impl ApiError {
    fn bad(detail: impl Into<String>) -> Self {
        ApiError { status: StatusCode::BAD_REQUEST, error: "bad_request", detail: detail.into() }
    }
}

impl From<OpError> for ApiError {
    fn from(e: OpError) -> Self {
        let (status, error) = match e {
            OpError::Bad(_) => (StatusCode::BAD_REQUEST, "bad_request"),
            OpError::TooLarge(_) => (StatusCode::CONFLICT, "too_large"),
            OpError::Conflict(_) => (StatusCode::CONFLICT, "conflict"),
            OpError::Internal(_) => (StatusCode::INTERNAL_SERVER_ERROR, "internal"),
        };
        ApiError { status, error, detail: e.to_string() }
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        match e {
            StoreError::NoSession(_) | StoreError::NoProblem(_) => {
                ApiError { status: StatusCode::NOT_FOUND, error: "not_found", detail: e.to_string() }
            }
            StoreError::Op(o) => o.into(),
            StoreError::Io(_) => {
                ApiError { status: StatusCode::INTERNAL_SERVER_ERROR, error: "internal", detail: e.to_string() }
            }
        }
    }
}

impl From<round_elim::ReError> for ApiError {
    fn from(e: round_elim::ReError) -> Self {
        OpError::from(e).into()
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "v": V, "error": self.error, "detail": self.detail }))).into_response()
    }
}

type ApiResult = Result<Json<Value>, ApiError>;
type Shared = State<Arc<Store>>;

/// Parses a JSON body; an empty body reads as `{}`.
fn body<T: DeserializeOwned>(b: &Bytes) -> Result<T, ApiError> {
    let raw: &[u8] = if b.iter().all(u8::is_ascii_whitespace) { b"{}" } else { b };
    serde_json::from_slice(raw).map_err(|e| ApiError::bad(format!("malformed body: {e}")))
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, ApiError> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f).await.map_err(|e| ApiError {
        status: StatusCode::INTERNAL_SERVER_ERROR,
        error: "internal",
        detail: e.to_string(),
    })?
}

pub fn router(store: Arc<Store>) -> Router {
    Router::new()
        .route("/api/sessions", post(create_session))
        .route("/api/sessions/{sid}/problems", post(add_problem))
        .route("/api/sessions/{sid}/problems/{pid}", get(get_problem))
        .route("/api/sessions/{sid}/problems/{pid}/re", post(do_re))
        .route("/api/sessions/{sid}/problems/{pid}/rere", post(do_rere))
        .route("/api/sessions/{sid}/problems/{pid}/merge", post(do_merge))
        .route("/api/sessions/{sid}/problems/{pid}/heuristic", post(do_heuristic))
        .route("/api/sessions/{sid}/problems/{pid}/diagram", get(get_diagram))
        .route("/api/sessions/{sid}/problems/{pid}/zero-round", post(do_zero_round))
        .route("/api/sessions/{sid}/tree", get(get_tree))
        .route("/api/sessions/{sid}/replay", get(get_replay))
        .route("/api/simulate", post(do_simulate))
        .fallback(|| async {
            ApiError { status: StatusCode::NOT_FOUND, error: "not_found", detail: "no such endpoint".into() }
        })
        .with_state(store)
}

async fn create_session(State(st): Shared) -> ApiResult {
    let sid = blocking(move || Ok(st.create()?)).await?;
    Ok(Json(json!({ "v": V, "session_id": sid })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorSpec {
    name: Family,
    delta: usize,
    #[serde(default)]
    i: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NewProblem {
    text: Option<String>,
    generator: Option<GeneratorSpec>,
}

async fn add_problem(State(st): Shared, Path(sid): Path<String>, b: Bytes) -> ApiResult {
    let req: NewProblem = body(&b)?;
    let op = match (req.text, req.generator) {
        (Some(text), None) => Operation::Load { text },
        (None, Some(g)) => Operation::Generator { name: g.name, delta: g.delta, i: g.i },
        _ => return Err(ApiError::bad("give exactly one of `text` and `generator`")),
    };
    derive(st, sid, None, op).await
}

async fn derive(st: Arc<Store>, sid: String, parent: Option<String>, op: Operation) -> ApiResult {
    let source = match &parent {
        Some(pid) => Some(st.problem(&sid, pid)?.0),
        None => None,
    };
    let (snap, p) = blocking(move || Ok(st.derive(&sid, parent.as_deref(), op)?)).await?;
    let mut out = json!({ "v": V, "pid": snap.pid, "new_pid": snap.pid, "summary": summary(&p) });
    if let Some(src) = source {
        out["diff"] = serde_json::to_value(diff(&src, &p)).expect("diff serializes");
    }
    if !snap.merges.is_empty() {
        out["merges"] = json!(snap.merges);
    }
    Ok(Json(out))
}

async fn get_problem(State(st): Shared, Path((sid, pid)): Path<(String, String)>) -> ApiResult {
    let (p, text, snap) = st.problem(&sid, &pid)?;
    let alphabet: Vec<Value> =
        p.labels().iter().map(|l| json!({ "name": l.name, "color": l.color, "members": l.members })).collect();
    Ok(Json(json!({
        "v": V,
        "pid": pid,
        "parent": snap.parent,
        "op": snap.op,
        "hash": snap.hash,
        "alphabet": alphabet,
        "white": { "arity": p.white().arity(), "configs": side_lines(&p, Side::White) },
        "black": { "arity": p.black().arity(), "configs": side_lines(&p, Side::Black) },
        "stats": summary(&p),
        "text": *text,
    })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MethodBody {
    #[serde(default = "default_method")]
    method: Method,
}

fn default_method() -> Method {
    Method::Combination
}

async fn do_re(State(st): Shared, Path((sid, pid)): Path<(String, String)>, b: Bytes) -> ApiResult {
    let m: MethodBody = body(&b)?;
    derive(st, sid, Some(pid), Operation::Re { method: m.method }).await
}

async fn do_rere(State(st): Shared, Path((sid, pid)): Path<(String, String)>, b: Bytes) -> ApiResult {
    let m: MethodBody = body(&b)?;
    derive(st, sid, Some(pid), Operation::Rere { method: m.method }).await
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MergeBody {
    a: String,
    b: String,
}

async fn do_merge(State(st): Shared, Path((sid, pid)): Path<(String, String)>, b: Bytes) -> ApiResult {
    let m: MergeBody = body(&b)?;
    derive(st, sid, Some(pid), Operation::Merge { a: m.a, b: m.b }).await
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HeuristicBody {
    #[serde(default = "default_side")]
    side: Side,
    #[serde(default = "default_exhaust")]
    exhaust: bool,
}

fn default_side() -> Side {
    Side::Black
}

fn default_exhaust() -> bool {
    true
}

async fn do_heuristic(State(st): Shared, Path((sid, pid)): Path<(String, String)>, b: Bytes) -> ApiResult {
    let h: HeuristicBody = body(&b)?;
    derive(st, sid, Some(pid), Operation::Heuristic { side: h.side, exhaust: h.exhaust }).await
}

#[derive(Deserialize)]
struct SideQuery {
    side: Option<String>,
}

async fn get_diagram(State(st): Shared, Path((sid, pid)): Path<(String, String)>, q: Query<SideQuery>) -> ApiResult {
    let side = parse_side(q.side.as_deref().unwrap_or("black")).map_err(ApiError::bad)?;
    let (p, _, _) = st.problem(&sid, &pid)?;
    let d = blocking(move || Ok(diagram(&p, side, lcl_core::DEFAULT_EXPANSION_CAP)?)).await?;
    Ok(Json(json!({
        "v": V,
        "side": side,
        "nodes": d.nodes,
        "edges": d.edges,
        "merge_candidates": d.merge_candidates,
        "dot": d.to_dot(),
    })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ZeroBody {
    #[serde(default = "default_colored")]
    colored: bool,
}

fn default_colored() -> bool {
    true
}

async fn do_zero_round(State(st): Shared, Path((sid, pid)): Path<(String, String)>, b: Bytes) -> ApiResult {
    let z: ZeroBody = body(&b)?;
    let (p, _, _) = st.problem(&sid, &pid)?;
    let w = blocking(move || Ok(zero_round_solvable(&p, z.colored))).await?;
    Ok(Json(json!({ "v": V, "colored": z.colored, "solvable": w.is_some(), "witness": w })))
}

async fn get_tree(State(st): Shared, Path(sid): Path<String>) -> ApiResult {
    let s = st.session(&sid)?;
    let prov = s.lock().unwrap().provenance();
    let edges: Vec<Value> = prov
        .nodes
        .iter()
        .filter_map(|n| n.parent.as_ref().map(|p| json!({ "from": p, "to": n.pid, "op": n.op })))
        .collect();
    Ok(Json(json!({
        "v": V,
        "session_id": prov.session_id,
        "created_ms": prov.created_ms,
        "nodes": prov.nodes,
        "edges": edges,
    })))
}

async fn get_replay(State(st): Shared, Path(sid): Path<String>) -> ApiResult {
    let s = st.session(&sid)?;
    let recs = blocking(move || Ok(s.lock().unwrap().replay())).await?;
    let ok = recs.iter().all(|r| r.identical);
    Ok(Json(json!({ "v": V, "ok": ok, "nodes": recs })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SimBody {
    kind: String,
    delta: usize,
    n: usize,
    #[serde(default)]
    seed: u64,
    #[serde(default = "default_games")]
    games: String,
}

fn default_games() -> String {
    "symm-ghz".into()
}

async fn do_simulate(b: Bytes) -> ApiResult {
    let s: SimBody = body(&b)?;
    let kind = parse_sim_kind(&s.kind).map_err(ApiError::bad)?;
    let r = blocking(move || Ok(ops::simulate(kind, s.delta, s.n, s.seed, &s.games)?)).await?;
    let mut out = serde_json::to_value(&r).expect("summary serializes");
    out["v"] = json!(V);
    out["kind"] = json!(kind);
    Ok(Json(out))
}
