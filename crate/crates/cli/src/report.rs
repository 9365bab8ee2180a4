//! One report document per command, printed as text or JSON.

use std::io::Write;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

pub const SCHEMA: &str = "omegalab.report";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{origin}:{error}")]
    Parse { origin: String, error: omegalab::ParseError },
    #[error(transparent)]
    Core(#[from] omegalab::Error),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> CliError {
        CliError::Input(msg.into())
    }

    fn to_json(&self) -> Value {
        match self {
            CliError::Parse { origin, error } => json!({
                "kind": "parse",
                "source": origin,
                "line": error.line,
                "col": error.col,
                "message": error.message,
            }),
            CliError::Input(m) => json!({ "kind": "input", "message": m }),
            CliError::Core(e) => json!({ "kind": "precondition", "message": e.to_string() }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub struct Report {
    /// Whether the command verified what it was asked; `false` exits with 1.
    pub ok: bool,
    text: String,
    data: Map<String, Value>,
}

impl Report {
    pub fn new(ok: bool) -> Report {
        Report { ok, text: String::new(), data: Map::new() }
    }

    pub fn line(&mut self, s: impl AsRef<str>) -> &mut Report {
        self.text.push_str(s.as_ref());
        if !self.text.ends_with('\n') {
            self.text.push('\n');
        }
        self
    }

    pub fn field(&mut self, key: &str, v: impl Serialize) -> &mut Report {
        self.data.insert(key.into(), serde_json::to_value(v).expect("serializable report field"));
        self
    }

    pub fn status(&self) -> &'static str {
        if self.ok {
            "ok"
        } else {
            "failed"
        }
    }
}

fn envelope(command: &str, status: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("version".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    m.insert("status".into(), json!(status));
    m
}

pub fn emit(command: &str, format: Format, result: Result<Report, CliError>) -> ExitCode {
    match (result, format) {
        (Ok(r), Format::Text) => {
            out(&r.text);
            exit(r.ok)
        }
        (Ok(r), Format::Json) => {
            let mut m = envelope(command, r.status());
            m.insert("result".into(), Value::Object(r.data.clone()));
            out(&json_text(m));
            exit(r.ok)
        }
        (Err(e), Format::Text) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        (Err(e), Format::Json) => {
            let mut m = envelope(command, "error");
            m.insert("error".into(), e.to_json());
            out(&json_text(m));
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn json_text(m: Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("json");
    s.push('\n');
    s
}

/// Writes to stdout; a closed pipe is not an error.
fn out(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn exit(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
