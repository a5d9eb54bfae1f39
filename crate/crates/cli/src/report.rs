//! Report envelope, exit codes and atomic output.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Map, Value};
use spike_lab::Error;

pub const SCHEMA: u64 = 1;

/// Keys moved from a library report into `timing`.
const TIMING_KEYS: [&str; 2] = ["elapsed_ms", "ms"];

pub struct Envelope {
    pub node_budget: u64,
    pub seed: u64,
    start: Instant,
}

impl Envelope {
    pub fn new(node_budget: u64, seed: u64) -> Self {
        Envelope { node_budget, seed, start: Instant::now() }
    }

    fn document(&self, command: &str, status: &str, params: &Map<String, Value>, result: Value) -> Value {
        let mut params = params.clone();
        params.insert("node_budget".into(), json!(self.node_budget));
        params.insert("seed".into(), json!(self.seed));
        let mut result = result;
        if let Value::Object(m) = &mut result {
            for k in TIMING_KEYS {
                m.remove(k);
            }
        }
        json!({
            "schema": SCHEMA,
            "command": command,
            "status": status,
            "params": params,
            "result": result,
            "timing": { "elapsed_ms": self.start.elapsed().as_millis() as u64 },
        })
    }
}

/// Command name and echoed inputs.
pub struct Ctx {
    pub command: String,
    pub params: Map<String, Value>,
}

impl Ctx {
    pub fn new(command: &str) -> Self {
        Ctx { command: command.into(), params: Map::new() }
    }

    pub fn param(mut self, key: &str, v: Value) -> Self {
        self.params.insert(key.into(), v);
        self
    }

    /// Maps a library error to the matching exit path.
    pub fn lib<T>(&self, r: spike_lab::Result<T>) -> Result<T, Failure> {
        r.map_err(|e| match e {
            Error::BudgetExceeded { .. } => self.halt(Status::BudgetExhausted, e.to_string()),
            Error::Inconclusive(_) => self.halt(Status::Inconclusive, e.to_string()),
            other => Failure::Usage(other.to_string()),
        })
    }

    pub fn halt(&self, status: Status, message: String) -> Failure {
        Failure::Halted { command: self.command.clone(), params: self.params.clone(), status, message }
    }

    pub fn done(self, result: Value, verified: bool) -> Done {
        let status = if verified { Status::Ok } else { Status::Failed };
        Done { ctx: self, result, status }
    }

    pub fn done_with(self, result: Value, status: Status) -> Done {
        Done { ctx: self, result, status }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
    BudgetExhausted,
    Inconclusive,
}

impl Status {
    fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::BudgetExhausted => "budget-exhausted",
            Status::Inconclusive => "inconclusive",
        }
    }

    fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed | Status::Inconclusive => 1,
            Status::BudgetExhausted => 3,
        }
    }
}

pub struct Done {
    ctx: Ctx,
    result: Value,
    status: Status,
}

impl Done {
    pub fn finish(self, env: &Envelope) -> (Value, u8) {
        let doc = env.document(&self.ctx.command, self.status.name(), &self.ctx.params, self.result);
        (doc, self.status.exit_code())
    }
}

pub enum Failure {
    Usage(String),
    Halted { command: String, params: Map<String, Value>, status: Status, message: String },
}

impl Failure {
    pub fn into_report(self, env: &Envelope) -> (Value, u8) {
        match self {
            Failure::Usage(_) => unreachable!("usage errors are not reported as JSON"),
            Failure::Halted { command, params, status, message } => {
                let doc = env.document(&command, status.name(), &params, json!({ "error": message }));
                (doc, status.exit_code())
            }
        }
    }
}

/// Pretty JSON with a trailing newline; files are replaced atomically.
pub fn write(doc: &Value, path: Option<&Path>) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(doc).expect("reports serialize");
    text.push('\n');
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
        Some(p) => {
            let dir = match p.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(p).map_err(|e| e.error)?;
            Ok(())
        }
    }
}
