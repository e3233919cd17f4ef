//! Report container and the CSV / JSON writers.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::config::{Format, RunConfig};
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub columns: Vec<String>,
    pub rows: Vec<Map<String, Value>>,
    pub checks: Vec<Check>,
}

/// The JSON document layout.
#[derive(Serialize, Deserialize)]
pub struct JsonDoc {
    pub config: RunConfig,
    pub rows: Vec<Map<String, Value>>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(columns: &[&str]) -> Self {
        Report { columns: columns.iter().map(|c| c.to_string()).collect(), ..Report::default() }
    }

    /// Appends a serializable row; its fields must match the declared columns.
    pub fn push<T: Serialize>(&mut self, row: &T) {
        match serde_json::to_value(row).expect("row serializes") {
            Value::Object(m) => {
                debug_assert!(self.columns.iter().all(|c| m.contains_key(c)), "{:?} vs {:?}", self.columns, m.keys());
                let ordered = self.columns.iter().map(|c| (c.clone(), m.get(c).cloned().unwrap_or(Value::Null))).collect();
                self.rows.push(ordered);
            }
            other => panic!("row must serialize to an object, got {other}"),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        Value::Array(_) | Value::Object(_) => v.to_string(),
    }
}

pub fn render(report: &Report, config: &RunConfig, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => {
            let doc = JsonDoc { config: config.clone(), rows: report.rows.clone(), checks: report.checks.clone() };
            let mut out = serde_json::to_vec_pretty(&doc).map_err(|e| CliError::Usage(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut out = Vec::new();
            writeln!(out, "# config: {}", config.to_json()).expect("write to memory");
            for c in &report.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "# check: {tag} {}: {}", c.name, c.detail.replace('\n', " ")).expect("write to memory");
            }
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
            let io = |e: csv::Error| CliError::Usage(e.to_string());
            w.write_record(&report.columns).map_err(io)?;
            for row in &report.rows {
                w.write_record(report.columns.iter().map(|c| cell(row.get(c).unwrap_or(&Value::Null)))).map_err(io)?;
            }
            w.into_inner().map_err(|e| CliError::Usage(e.to_string()))
        }
    }
}

/// Writes to `path`, or to standard output when absent.
pub fn emit(report: &Report, config: &RunConfig, format: Format, path: Option<&Path>) -> Result<(), CliError> {
    let bytes = render(report, config, format)?;
    match path {
        Some(p) => std::fs::write(p, &bytes).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(&bytes).and_then(|_| stdout.flush()).map_err(|e| CliError::Usage(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        n: usize,
        count: String,
        ratio: Option<f64>,
    }

    fn sample() -> Report {
        let mut r = Report::new(&["n", "count", "ratio"]);
        r.push(&Row { n: 1, count: "12345678901234567890123".into(), ratio: Some(0.1) });
        r.push(&Row { n: 2, count: "7".into(), ratio: None });
        r.check("sum", true, "ok");
        r
    }

    #[test]
    fn csv_layout() {
        let text = String::from_utf8(render(&sample(), &RunConfig::default(), Format::Csv).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# config: {"));
        assert_eq!(lines[1], "# check: PASS sum: ok");
        assert_eq!(&lines[2..], ["n,count,ratio", "1,12345678901234567890123,0.1", "2,7,"]);
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let bytes = render(&r, &RunConfig::default(), Format::Json).unwrap();
        let doc: JsonDoc = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(doc.rows, r.rows);
        assert_eq!(doc.checks, r.checks);
        assert_eq!(doc.config, RunConfig::default());
    }
}
