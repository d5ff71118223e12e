//! Results, errors and rendering.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::{Cli, Format};

/// A command result. `ok = false` means a check ran and failed (exit 1).
pub struct Report {
    pub value: Value,
    pub ok: bool,
    /// Table rendering, when the generic one is not good enough.
    pub table: Option<String>,
}

impl Report {
    pub fn ok(value: Value) -> Self {
        Report { value, ok: true, table: None }
    }

    pub fn check(value: Value, ok: bool) -> Self {
        Report { value, ok, table: None }
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(qk_core::Error),
    Io { path: PathBuf, message: String },
    Json { path: PathBuf, message: String },
    Usage(String),
}

impl From<qk_core::Error> for CliError {
    fn from(e: qk_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_resource() => 3,
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Io { .. } => "io",
            CliError::Json { .. } => "malformed_json",
            CliError::Usage(_) => "usage",
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io { path, message } => format!("{}: {message}", path.display()),
            CliError::Json { path, message } => format!("{}: {message}", path.display()),
            CliError::Usage(m) => m.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        json!({ "error": { "code": self.code(), "message": self.message() } }).to_string()
    }
}

/// Reads and deserializes a JSON file.
pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_owned(), message: e.to_string() })?;
    serde_json::from_str(&text).map_err(|e| CliError::Json { path: path.to_owned(), message: e.to_string() })
}

pub fn emit(cli: &Cli, r: &Report) -> Result<(), CliError> {
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&r.value).expect("JSON values serialize") + "\n",
        Format::Table => r.table.clone().unwrap_or_else(|| {
            let mut lines = Vec::new();
            flatten("", &r.value, &mut lines);
            lines.join("\n") + "\n"
        }),
    };
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io { path: path.clone(), message: e.to_string() }),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                // A closed pipe (`qk ... | head`) is not an error.
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(CliError::Io { path: PathBuf::from("<stdout>"), message: e.to_string() })
                }
                _ => Ok(()),
            }
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push(format!("{prefix:<40} {s}")),
        _ => out.push(format!("{prefix:<40} {v}")),
    }
}
