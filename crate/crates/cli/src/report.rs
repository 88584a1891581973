use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

/// A structured report: a reproducibility header (tool, version, resolved
/// parameters) and the data body. Nothing time- or host-dependent is
/// included, so identical configs give identical bytes.
#[derive(Debug, Serialize)]
pub struct Report {
    pub header: Header,
    pub body: Value,
}

#[derive(Debug, Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub parameters: Value,
}

impl Report {
    pub fn new(command: &'static str, parameters: Value, body: Value) -> Self {
        Self {
            header: Header {
                tool: "arithfn",
                version: env!("CARGO_PKG_VERSION"),
                command,
                parameters,
            },
            body,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Runtime(format!("cannot write output: {e}")))
        }
    }
}
