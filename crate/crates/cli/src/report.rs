use std::time::Duration;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// How much of a decision trace goes into a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Trace {
    None,
    Steps,
    Full,
}

pub fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Drops steps entirely or just their embedded matrices.
pub fn apply_trace(mut verdict: Value, trace: Trace) -> Value {
    if let Some(obj) = verdict.as_object_mut() {
        match trace {
            Trace::None => {
                obj.remove("steps");
            }
            Trace::Steps => {
                if let Some(Value::Array(steps)) = obj.get_mut("steps") {
                    for s in steps {
                        if let Some(o) = s.as_object_mut() {
                            o.remove("query");
                        }
                    }
                }
            }
            Trace::Full => {}
        }
    }
    verdict
}

pub struct Report {
    pub command: Vec<String>,
    pub digest: String,
    pub result: Value,
    pub timing: Option<Duration>,
}

impl Report {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        m.insert("input_sha256".into(), json!(self.digest));
        m.insert("result".into(), self.result.clone());
        if let Some(t) = self.timing {
            m.insert("timing_ms".into(), json!(t.as_millis() as u64));
        }
        Value::Object(m)
    }
}
