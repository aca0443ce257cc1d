use crate::config::Format;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;
pub const UNITS: &str = "hbar*c/R, R = 1";

/// 17 significant digits, enough to round-trip any `f64`.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn optional(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

/// Comma-separated table built row by row.
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut text = header.join(",");
        text.push('\n');
        Csv { text }
    }

    pub fn row<I: IntoIterator<Item = String>>(&mut self, fields: I) {
        let mut first = true;
        for field in fields {
            if !first {
                self.text.push(',');
            }
            first = false;
            let _ = write!(self.text, "{field}");
        }
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

/// Adds the fields every JSON document carries.
pub fn document(command: &str, body: Value) -> Value {
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "units": UNITS,
    });
    if let (Value::Object(target), Value::Object(fields)) = (&mut doc, body) {
        target.extend(fields);
    }
    doc
}

/// Outcome of a command: both renderings plus an optional check.
pub struct Report {
    pub csv: String,
    pub json: Value,
    pub check: Option<Check>,
}

pub struct Check {
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(passed: bool, detail: impl Into<String>) -> Self {
        Check {
            passed,
            detail: detail.into(),
        }
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Csv => report.csv.clone(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("json values always serialize");
            s.push('\n');
            s
        }
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [2.754769197, 1.0 / 3.0, -1e-300, 0.0] {
            let s = float(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
        assert_eq!(float(2.0), "2.0000000000000000e0");
    }

    #[test]
    fn csv_layout() {
        let mut csv = Csv::new(&["a", "b"]);
        csv.row([1.to_string(), optional(None)]);
        assert_eq!(csv.finish(), "a,b\n1,\n");
    }

    #[test]
    fn document_header() {
        let doc = document("solve", json!({"l": 0}));
        assert_eq!(doc["schema_version"], 1);
        assert_eq!(doc["command"], "solve");
        assert_eq!(doc["l"], 0);
    }
}
