use std::collections::BTreeMap;
use std::fmt::Write;

use kummerlog::{Error, ErrorKind};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub kind: String,
    pub exit_code: i32,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub args: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    pub checks: Vec<Check>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
}

pub fn exit_code(kind: ErrorKind) -> i32 {
    match kind {
        ErrorKind::Parse => 2,
        ErrorKind::InvalidInput => 3,
        ErrorKind::Unsupported => 4,
        ErrorKind::Internal => 5,
    }
}

fn kind_name(kind: ErrorKind) -> &'static str {
    match kind {
        ErrorKind::Parse => "parse",
        ErrorKind::InvalidInput => "invalid_input",
        ErrorKind::Unsupported => "unsupported",
        ErrorKind::Internal => "internal",
    }
}

impl Report {
    pub fn new(command: &str, args: BTreeMap<String, String>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            args,
            result: None,
            checks: Vec::new(),
            verdict: "OK".to_string(),
            error: None,
        }
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.to_string(), passed, detail: detail.into() });
    }

    pub fn finish(mut self, outcome: Result<Value, Error>) -> Self {
        match outcome {
            Ok(v) => {
                self.result = Some(v);
                if self.checks.iter().any(|c| !c.passed) {
                    self.verdict = "FAIL".to_string();
                }
            }
            Err(e) => {
                let kind = e.kind();
                self.verdict = "ERROR".to_string();
                self.error = Some(ErrorReport {
                    kind: kind_name(kind).to_string(),
                    exit_code: exit_code(kind),
                    message: e.to_string(),
                });
            }
        }
        self
    }

    pub fn exit_code(&self) -> i32 {
        match (&self.error, self.verdict.as_str()) {
            (Some(e), _) => e.exit_code,
            (None, "OK") => 0,
            _ => 5,
        }
    }

    /// Human rendering built from the same values as the JSON document.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        let args: Vec<String> = self.args.iter().map(|(k, v)| format!("--{k} {v:?}")).collect();
        let _ = writeln!(out, "kummerlog {} {}", self.command, args.join(" "));
        if let Some(r) = &self.result {
            render(&mut out, r, 1);
        }
        for c in &self.checks {
            let mark = if c.passed { "ok" } else { "FAILED" };
            let _ = writeln!(out, "  check {}: {mark} ({})", c.name, c.detail);
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "  error [{}]: {}", e.kind, e.message);
        }
        let _ = writeln!(out, "  verdict: {}", self.verdict);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(m) if m.is_empty() => Some("{}".into()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        render(out, x, depth + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips_and_fails_on_bad_check() {
        let mut r = Report::new("mun", BTreeMap::from([("n".to_string(), "2".to_string())]));
        r.check("presentations_agree", false, "4 vs 2");
        let r = r.finish(Ok(serde_json::json!({"log_order": 4})));
        assert_eq!(r.verdict, "FAIL");
        assert_eq!(r.exit_code(), 5);
        let s = serde_json::to_string(&r).unwrap();
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert!(r.pretty().contains("log_order: 4"));
    }

    #[test]
    fn error_kinds_map_to_exit_codes() {
        let r = Report::new("pair", BTreeMap::new()).finish(Err(Error::NonTorsion(30)));
        assert_eq!(r.exit_code(), 4);
        let r = Report::new("curve", BTreeMap::new()).finish(Err(Error::SingularCurve));
        assert_eq!(r.exit_code(), 3);
    }
}
