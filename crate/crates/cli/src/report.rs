//! Line-delimited JSON run records.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use anyhow::Context;
use serde_json::{Map, Value};

/// A flat key-value record.
#[derive(Debug, Default)]
pub struct Record(Map<String, Value>);

impl Record {
    pub fn new(command: &str) -> Self {
        let mut r = Record::default();
        r.set("command", command);
        r
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.0.insert(key.to_string(), value.into());
        self
    }

    /// Copies every field of a serializable struct into the record.
    pub fn extend<T: serde::Serialize>(&mut self, value: &T) -> &mut Self {
        if let Ok(Value::Object(m)) = serde_json::to_value(value) {
            self.0.extend(m);
        }
        self
    }

    pub fn to_line(&self) -> String {
        Value::Object(self.0.clone()).to_string()
    }

    pub fn append_to(&self, path: &Path) -> anyhow::Result<()> {
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .with_context(|| format!("opening report {}", path.display()))?;
        writeln!(f, "{}", self.to_line()).with_context(|| format!("writing report {}", path.display()))
    }
}
