//! Reports and their two renderings.

use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Map, Value};

/// One command's output. `result` fields appear at the top level of the JSON
/// form, between `inputs` and `certificates`.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub result: Map<String, Value>,
    pub certificates: Vec<(String, bool)>,
    pub paper_anchor: Option<String>,
    /// Human-mode table of (key, passed, anchor) rows; replaces the plain
    /// certificate list when present. Not part of the JSON form.
    pub table: Vec<(String, bool, String)>,
}

const RESERVED: [&str; 4] = ["command", "inputs", "certificates", "paper_anchor"];

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            result: Map::new(),
            certificates: Vec::new(),
            paper_anchor: None,
            table: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Serialize) -> Self {
        self.inputs.insert(key.to_string(), to_value(value));
        self
    }

    pub fn field(&mut self, key: &str, value: impl Serialize) {
        assert!(
            !RESERVED.contains(&key),
            "result field {key} collides with the report envelope"
        );
        self.result.insert(key.to_string(), to_value(value));
    }

    /// Merge the fields of a serializable struct.
    pub fn fields(&mut self, value: impl Serialize) {
        match to_value(value) {
            Value::Object(m) => {
                for (k, v) in m {
                    self.field(&k, v);
                }
            }
            other => panic!("expected an object, got {other}"),
        }
    }

    pub fn certificate(&mut self, name: &str, holds: bool) {
        self.certificates.push((name.to_string(), holds));
    }

    pub fn row(&mut self, key: &str, passed: bool, anchor: &str) {
        self.table
            .push((key.to_string(), passed, anchor.to_string()));
    }

    pub fn anchor(mut self, anchor: &str) -> Self {
        self.paper_anchor = Some(anchor.to_string());
        self
    }

    pub fn all_certificates_hold(&self) -> bool {
        self.certificates.iter().all(|(_, ok)| *ok)
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("inputs".into(), Value::Object(self.inputs.clone()));
        for (k, v) in &self.result {
            m.insert(k.clone(), v.clone());
        }
        let certs: Map<String, Value> = self
            .certificates
            .iter()
            .map(|(k, v)| (k.clone(), Value::Bool(*v)))
            .collect();
        m.insert("certificates".into(), Value::Object(certs));
        m.insert(
            "paper_anchor".into(),
            self.paper_anchor.clone().map_or(Value::Null, Value::String),
        );
        Value::Object(m)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_human(&self, color: bool, timestamps: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "hkcover {}", self.command);
        if timestamps {
            let secs = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs());
            let _ = writeln!(out, "generated at unix time {secs}");
        }
        if !self.inputs.is_empty() {
            let _ = writeln!(
                out,
                "inputs: {}",
                compact(&Value::Object(self.inputs.clone()))
            );
        }
        if self.table.is_empty() {
            for (k, v) in &self.result {
                render_field(&mut out, k, v);
            }
            if !self.certificates.is_empty() {
                let _ = writeln!(out, "certificates:");
                for (name, ok) in &self.certificates {
                    let _ = writeln!(out, "  {} {name}", mark(*ok, color));
                }
            }
        } else {
            let width = self
                .table
                .iter()
                .map(|(k, _, _)| k.len())
                .max()
                .unwrap_or(0);
            for (key, ok, anchor) in &self.table {
                let _ = writeln!(out, "  {} {key:<width$}  {anchor}", mark(*ok, color));
            }
            let passed = self.table.iter().filter(|r| r.1).count();
            let _ = writeln!(out, "{passed}/{} checks passed", self.table.len());
        }
        if let Some(a) = &self.paper_anchor {
            let _ = writeln!(out, "anchor: {a}");
        }
        out
    }
}

pub(crate) fn mark(ok: bool, color: bool) -> &'static str {
    match (ok, color) {
        (true, false) => "[pass]",
        (false, false) => "[FAIL]",
        (true, true) => "\x1b[32m[pass]\x1b[0m",
        (false, true) => "\x1b[31m[FAIL]\x1b[0m",
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_field(out: &mut String, key: &str, v: &Value) {
    match v {
        Value::Array(items)
            if !items.is_empty() && items.iter().all(|i| i.is_string() || i.is_object()) =>
        {
            let _ = writeln!(out, "{key}:");
            for i in items {
                let _ = writeln!(out, "  - {}", compact(i));
            }
        }
        other => {
            let _ = writeln!(out, "{key}: {}", compact(other));
        }
    }
}

/// A malformed input or a domain error, rendered instead of a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmdError {
    pub kind: String,
    pub message: String,
    pub inputs: Map<String, Value>,
}

impl CmdError {
    pub fn new(kind: &str, message: impl Into<String>) -> Self {
        CmdError {
            kind: kind.to_string(),
            message: message.into(),
            inputs: Map::new(),
        }
    }

    /// Variant name of a module error, e.g. `InvalidRho`.
    pub fn domain<E: std::fmt::Debug + std::fmt::Display>(e: E) -> Self {
        let debug = format!("{e:?}");
        let kind: String = debug
            .chars()
            .take_while(|c| c.is_alphanumeric() || *c == '_')
            .collect();
        CmdError::new(&kind, e.to_string())
    }

    pub fn with_input(mut self, key: &str, value: impl Serialize) -> Self {
        self.inputs.insert(key.to_string(), to_value(value));
        self
    }

    pub fn render(&self, command: &str, json: bool) -> String {
        if json {
            let v = json!({
                "command": command,
                "inputs": Value::Object(self.inputs.clone()),
                "error": { "kind": self.kind, "message": self.message },
            });
            let mut s = serde_json::to_string_pretty(&v).expect("error serializes");
            s.push('\n');
            s
        } else {
            format!("error ({}): {}\n", self.kind, self.message)
        }
    }
}
