use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Mismatch = 1,
    InputError = 2,
    Inconclusive = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Mismatch => "mismatch",
            Status::InputError => "input-error",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// One input file with its digest.
#[derive(Clone, Debug)]
pub struct InputFile {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

impl InputFile {
    pub fn new(role: &str, path: &str, bytes: &[u8]) -> Self {
        InputFile {
            role: role.into(),
            path: path.into(),
            sha256: format!("{:x}", Sha256::digest(bytes)),
        }
    }
}

/// The outcome of one command.  Maps are key-sorted, so both renderings
/// are deterministic.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputFile>,
    pub params: Map<String, Value>,
    pub seed: u64,
    pub verdicts: Map<String, Value>,
    pub witnesses: Map<String, Value>,
    pub status: Status,
    pub error: Option<String>,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Report {
            command: command.into(),
            inputs: Vec::new(),
            params: Map::new(),
            seed,
            verdicts: Map::new(),
            witnesses: Map::new(),
            status: Status::Ok,
            error: None,
        }
    }

    pub fn verdict(&mut self, key: &str, v: impl Into<Value>) {
        self.verdicts.insert(key.into(), v.into());
    }

    pub fn witness(&mut self, key: &str, v: impl Into<Value>) {
        self.witnesses.insert(key.into(), v.into());
    }

    pub fn param(&mut self, key: &str, v: impl Into<Value>) {
        self.params.insert(key.into(), v.into());
    }

    pub fn to_json(&self) -> Value {
        let files: Vec<Value> = self
            .inputs
            .iter()
            .map(|f| json!({"role": f.role, "path": f.path, "sha256": f.sha256}))
            .collect();
        let mut inputs = self.params.clone();
        inputs.insert("files".into(), Value::Array(files));
        let mut top = Map::new();
        top.insert("command".into(), self.command.clone().into());
        top.insert("inputs".into(), Value::Object(inputs));
        top.insert("seed".into(), self.seed.into());
        top.insert("verdicts".into(), Value::Object(self.verdicts.clone()));
        top.insert("witnesses".into(), Value::Object(self.witnesses.clone()));
        top.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        top.insert("status".into(), self.status.name().into());
        if let Some(e) = &self.error {
            top.insert("error".into(), e.clone().into());
        }
        Value::Object(top)
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "version: {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(s, "seed: {}", self.seed);
        for (k, v) in &self.params {
            let _ = writeln!(s, "param {k}: {}", plain(v));
        }
        for f in &self.inputs {
            let _ = writeln!(s, "input {}: {} sha256={}", f.role, f.path, f.sha256);
        }
        for (k, v) in &self.verdicts {
            let _ = writeln!(s, "verdict {k}: {}", plain(v));
        }
        for (k, v) in &self.witnesses {
            let _ = writeln!(s, "witness {k}: {}", plain(v));
        }
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error: {e}");
        }
        let _ = writeln!(s, "status: {}", self.status.name());
        s
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
