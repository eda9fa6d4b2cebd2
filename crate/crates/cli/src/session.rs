//! Sessions: append-only trees of immutable problem snapshots.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use lcl_core::{parse_problem, serialize, Problem};
use serde::{Deserialize, Serialize};

use crate::ops::{self, OpError, Operation};

fn now_ms() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis() as u64).unwrap_or(0)
}

/// One node of the provenance tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snapshot {
    pub pid: String,
    pub parent: Option<String>,
    pub op: Operation,
    pub hash: String,
    /// Merges made by a heuristic step.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub merges: Vec<(String, String)>,
    pub created_ms: u64,
}

#[derive(Clone, Debug)]
struct Entry {
    snap: Snapshot,
    text: Arc<String>,
    problem: Arc<Problem>,
}

/// Persisted form of a session.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Provenance {
    pub v: u32,
    pub session_id: String,
    pub created_ms: u64,
    pub nodes: Vec<Snapshot>,
}

#[derive(Debug)]
pub struct Session {
    id: String,
    created_ms: u64,
    entries: Vec<Entry>,
    index: HashMap<String, usize>,
}

impl Session {
    fn new(id: String) -> Self {
        Session { id, created_ms: now_ms(), entries: Vec::new(), index: HashMap::new() }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn problem(&self, pid: &str) -> Option<(Arc<Problem>, Arc<String>, Snapshot)> {
        self.index.get(pid).map(|&i| {
            let e = &self.entries[i];
            (e.problem.clone(), e.text.clone(), e.snap.clone())
        })
    }

    fn append(&mut self, parent: Option<String>, op: Operation, p: Problem, merges: Vec<(String, String)>) -> Snapshot {
        let text = serialize(&p);
        let pid = format!("p{}", self.entries.len() + 1);
        let snap = Snapshot { pid: pid.clone(), parent, op, hash: ops::hash(&text), merges, created_ms: now_ms() };
        self.index.insert(pid, self.entries.len());
        self.entries.push(Entry { snap: snap.clone(), text: Arc::new(text), problem: Arc::new(p) });
        snap
    }

    pub fn provenance(&self) -> Provenance {
        Provenance {
            v: 1,
            session_id: self.id.clone(),
            created_ms: self.created_ms,
            nodes: self.entries.iter().map(|e| e.snap.clone()).collect(),
        }
    }

    /// Recomputes every snapshot from its recorded operation and compares
    /// the serialized text byte for byte.
    pub fn replay(&self) -> Vec<ReplayRecord> {
        let mut done: HashMap<&str, Problem> = HashMap::new();
        let mut out = Vec::new();
        for e in &self.entries {
            let parent = e.snap.parent.as_deref().and_then(|q| done.get(q));
            let r = ops::apply(&e.snap.op, parent);
            let rec = match r {
                Ok((p, _)) => {
                    let text = serialize(&p);
                    let identical = text == *e.text;
                    done.insert(&e.snap.pid, p);
                    ReplayRecord { pid: e.snap.pid.clone(), hash: ops::hash(&text), identical, error: None }
                }
                Err(err) => ReplayRecord { pid: e.snap.pid.clone(), hash: String::new(), identical: false, error: Some(err.to_string()) },
            };
            out.push(rec);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayRecord {
    pub pid: String,
    pub hash: String,
    pub identical: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("unknown session `{0}`")]
    NoSession(String),
    #[error("unknown problem `{0}`")]
    NoProblem(String),
    #[error(transparent)]
    Op(#[from] OpError),
    #[error("persistence: {0}")]
    Io(String),
}

/// All sessions, with optional write-through persistence.
#[derive(Debug, Default)]
pub struct Store {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    dir: Option<PathBuf>,
}

impl Store {
    pub fn in_memory() -> Self {
        Store::default()
    }

    /// Opens a persistent store, reloading the sessions found in `dir`.
    pub fn persistent(dir: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| StoreError::Io(e.to_string()))?;
        let store = Store { sessions: RwLock::default(), dir: Some(dir.clone()) };
        let entries = fs::read_dir(&dir).map_err(|e| StoreError::Io(e.to_string()))?;
        for ent in entries.flatten() {
            let path = ent.path();
            if path.join("provenance.json").is_file() {
                let s = load_session(&path)?;
                store.sessions.write().unwrap().insert(s.id.clone(), Arc::new(Mutex::new(s)));
            }
        }
        Ok(store)
    }

    pub fn create(&self) -> Result<String, StoreError> {
        let id = uuid::Uuid::new_v4().to_string();
        let s = Session::new(id.clone());
        self.persist(&s)?;
        self.sessions.write().unwrap().insert(id.clone(), Arc::new(Mutex::new(s)));
        Ok(id)
    }

    pub fn session(&self, sid: &str) -> Result<Arc<Mutex<Session>>, StoreError> {
        self.sessions.read().unwrap().get(sid).cloned().ok_or_else(|| StoreError::NoSession(sid.into()))
    }

    /// The problem `pid` of session `sid`.
    pub fn problem(&self, sid: &str, pid: &str) -> Result<(Arc<Problem>, Arc<String>, Snapshot), StoreError> {
        let s = self.session(sid)?;
        let g = s.lock().unwrap();
        g.problem(pid).ok_or_else(|| StoreError::NoProblem(pid.into()))
    }

    /// Applies `op` to `parent` (or as a root) and appends the result. The
    /// computation runs without holding the session lock.
    pub fn derive(&self, sid: &str, parent: Option<&str>, op: Operation) -> Result<(Snapshot, Arc<Problem>), StoreError> {
        let s = self.session(sid)?;
        let source = match parent {
            Some(pid) => Some(s.lock().unwrap().problem(pid).ok_or_else(|| StoreError::NoProblem(pid.into()))?.0),
            None => None,
        };
        let (p, merges) = ops::apply(&op, source.as_deref())?;
        let mut g = s.lock().unwrap();
        let snap = g.append(parent.map(String::from), op, p, merges);
        let (problem, text, _) = g.problem(&snap.pid).expect("just appended");
        self.persist_node(&g, &snap, &text)?;
        Ok((snap, problem))
    }

    fn session_dir(&self, id: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(id))
    }

    fn persist(&self, s: &Session) -> Result<(), StoreError> {
        let Some(dir) = self.session_dir(&s.id) else { return Ok(()) };
        let io = |e: std::io::Error| StoreError::Io(e.to_string());
        fs::create_dir_all(&dir).map_err(io)?;
        let json = serde_json::to_string_pretty(&s.provenance()).map_err(|e| StoreError::Io(e.to_string()))?;
        let tmp = dir.join("provenance.json.tmp");
        fs::write(&tmp, json).map_err(io)?;
        fs::rename(tmp, dir.join("provenance.json")).map_err(io)
    }

    fn persist_node(&self, s: &Session, snap: &Snapshot, text: &str) -> Result<(), StoreError> {
        if let Some(dir) = self.session_dir(&s.id) {
            fs::create_dir_all(&dir).map_err(|e| StoreError::Io(e.to_string()))?;
            fs::write(dir.join(format!("{}.lcl", snap.pid)), text).map_err(|e| StoreError::Io(e.to_string()))?;
        }
        self.persist(s)
    }
}

fn load_session(dir: &Path) -> Result<Session, StoreError> {
    let io = |e: std::io::Error| StoreError::Io(format!("{}: {e}", dir.display()));
    let text = fs::read_to_string(dir.join("provenance.json")).map_err(io)?;
    let prov: Provenance = serde_json::from_str(&text).map_err(|e| StoreError::Io(e.to_string()))?;
    let mut s = Session::new(prov.session_id);
    s.created_ms = prov.created_ms;
    for snap in prov.nodes {
        let text = fs::read_to_string(dir.join(format!("{}.lcl", snap.pid))).map_err(io)?;
        if ops::hash(&text) != snap.hash {
            return Err(StoreError::Io(format!("{}: hash mismatch for {}", dir.display(), snap.pid)));
        }
        let p = parse_problem(&text).map_err(|e| StoreError::Io(e.to_string()))?;
        s.index.insert(snap.pid.clone(), s.entries.len());
        s.entries.push(Entry { snap, text: Arc::new(text), problem: Arc::new(p) });
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::Family;
    use lcl_core::Side;
    use round_elim::Method;

    #[test]
    fn derivations_share_a_parent() {
        let st = Store::in_memory();
        let sid = st.create().unwrap();
        let (root, _) = st.derive(&sid, None, Operation::Generator { name: Family::Ghz, delta: 3, i: 0 }).unwrap();
        let (a, _) = st.derive(&sid, Some(&root.pid), Operation::Re { method: Method::Combination }).unwrap();
        let (b, _) = st.derive(&sid, Some(&root.pid), Operation::Re { method: Method::Direct }).unwrap();
        assert_eq!((a.pid.as_str(), b.pid.as_str()), ("p2", "p3"));
        assert_eq!(a.hash, b.hash);
        let s = st.session(&sid).unwrap();
        assert!(s.lock().unwrap().replay().iter().all(|r| r.identical));
    }

    #[test]
    fn unknown_ids() {
        let st = Store::in_memory();
        assert!(matches!(st.session("nope"), Err(StoreError::NoSession(_))));
        let sid = st.create().unwrap();
        let op = Operation::Heuristic { side: Side::Black, exhaust: true };
        assert!(matches!(st.derive(&sid, Some("p9"), op), Err(StoreError::NoProblem(_))));
    }
}
