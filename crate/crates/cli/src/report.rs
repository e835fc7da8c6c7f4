//! The report schema: one structured record per invocation, stable field
//! order, version tagged. The JSON form round-trips through serde; the
//! human form shows the same verdict and witnesses as text.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    #[value(alias = "structured")]
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub verdict: Value,
    pub witnesses: Value,
    pub provenance: Option<String>,
    pub timing_ms: u64,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            parameters: BTreeMap::new(),
            verdict: Value::Null,
            witnesses: Value::Null,
            provenance: None,
            timing_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn verdict(mut self, value: impl Into<Value>) -> Self {
        self.verdict = value.into();
        self
    }

    pub fn witnesses(mut self, value: impl Into<Value>) -> Self {
        self.witnesses = value.into();
        self
    }

    pub fn provenance(mut self, note: &str) -> Self {
        self.provenance = Some(note.to_string());
        self
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut out = serde_json::to_string_pretty(self).expect("report serializes");
                out.push('\n');
                out
            }
            Format::Human => {
                let mut out = String::new();
                out.push_str(&format!("command: {}\n", self.command));
                for (key, value) in &self.parameters {
                    out.push_str(&format!("  {key}: {}\n", compact(value)));
                }
                out.push_str(&format!("verdict: {}\n", compact(&self.verdict)));
                if !self.witnesses.is_null() {
                    out.push_str("witnesses:\n");
                    match &self.witnesses {
                        Value::Object(map) => {
                            for (key, value) in map {
                                out.push_str(&format!("  {key}: {}\n", compact(value)));
                            }
                        }
                        other => out.push_str(&format!("  {}\n", compact(other))),
                    }
                }
                if let Some(note) = &self.provenance {
                    out.push_str(&format!("note: {note}\n"));
                }
                out.push_str(&format!("timing_ms: {}\n", self.timing_ms));
                out
            }
        }
    }
}

fn compact(value: &Value) -> String {
    serde_json::to_string(value).expect("value serializes")
}
