//! Human tables and JSON-lines records.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: &str = "primsurf/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Records,
}

pub struct Out {
    format: Format,
}

impl Out {
    pub fn new(format: Format) -> Self {
        Out { format }
    }

    /// Prints `payload` as one record of `kind`, or `human()` as text.
    pub fn record<T: Serialize>(&self, kind: &str, payload: &T, human: impl FnOnce() -> String) {
        match self.format {
            Format::Table => println!("{}", human()),
            Format::Records => println!("{}", envelope(kind, payload)),
        }
    }

    pub fn error(&self, command: &str, message: &str) {
        match self.format {
            Format::Table => eprintln!("error: {message}"),
            Format::Records => println!(
                "{}",
                envelope("error", &json!({ "command": command, "message": message }))
            ),
        }
    }
}

fn envelope<T: Serialize>(kind: &str, payload: &T) -> Value {
    let body = serde_json::to_value(payload).unwrap_or(Value::Null);
    let mut rec = serde_json::Map::new();
    rec.insert("schema".into(), SCHEMA.into());
    rec.insert("kind".into(), kind.into());
    match body {
        Value::Object(m) => rec.extend(m),
        other => {
            rec.insert("value".into(), other);
        }
    }
    Value::Object(rec)
}
