//! JSON report assembly. `serde_json` maps are ordered by key, so output is
//! byte-stable for a given invocation.

use ebeta::{fmt_rat, Enclosure, Interval, Rat};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Partial,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Partial => "partial",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub beta: Option<Rat>,
    pub command: String,
    pub results: Map<String, Value>,
    pub status: Status,
    /// Path of the first failing check, as `results.<key>...`.
    pub first_failure: Option<String>,
}

impl Report {
    pub fn new(command: &str, beta: Option<&Rat>) -> Self {
        Self {
            beta: beta.cloned(),
            command: command.to_string(),
            results: Map::new(),
            status: Status::Pass,
            first_failure: None,
        }
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.results.insert(key.to_string(), v);
    }

    pub fn fail(&mut self, path: String) {
        self.status = Status::Fail;
        if self.first_failure.is_none() {
            self.first_failure = Some(path);
        }
    }

    pub fn to_json(&self, timestamp: Option<u64>) -> Value {
        let mut top = Map::new();
        top.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));
        top.insert(
            "beta".into(),
            self.beta
                .as_ref()
                .map_or(Value::Null, |b| json!(fmt_rat(b))),
        );
        top.insert("command".into(), json!(self.command));
        top.insert("results".into(), Value::Object(self.results.clone()));
        top.insert("status".into(), json!(self.status.as_str()));
        if let Some(f) = &self.first_failure {
            top.insert("first_failure".into(), json!(f));
        }
        if let Some(t) = timestamp {
            top.insert("timestamp".into(), json!(t));
        }
        Value::Object(top)
    }

    pub fn render(&self, timestamp: Option<u64>) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json(timestamp))
            .expect("report values are plain JSON");
        s.push('\n');
        s
    }
}

pub fn rat(x: &Rat) -> Value {
    json!(fmt_rat(x))
}

pub fn enclosure(e: &Enclosure) -> Value {
    json!({ "value": e.value(), "err": e.err() })
}

pub fn interval(iv: &Interval) -> Value {
    json!([fmt_rat(iv.lo()), fmt_rat(iv.hi())])
}
