//! Streaming report sinks.
//!
//! Every record is written and flushed as soon as it is complete. In JSON
//! mode the output is one object per line: a header, the records, then a
//! summary (or an error line).

use std::io::{self, Write};

use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig};

pub const SCHEMA_VERSION: &str = "centpoly-report/1";

/// One named assertion.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// One row of a report.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub table: &'static str,
    pub fields: Map<String, Value>,
    pub checks: Vec<Check>,
    /// Column subset used by the CSV sink.
    pub columns: Vec<&'static str>,
}

impl Record {
    pub fn new(table: &'static str) -> Self {
        Record {
            table,
            fields: Map::new(),
            checks: Vec::new(),
            columns: Vec::new(),
        }
    }

    pub fn field(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.to_string(), value.into());
    }

    pub fn check(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn columns(mut self, cols: &[&'static str]) -> Self {
        self.columns = cols.to_vec();
        self
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("kind".into(), "record".into());
        obj.insert("table".into(), self.table.into());
        for (k, v) in &self.fields {
            obj.insert(k.clone(), v.clone());
        }
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("name".into(), c.name.clone().into());
                m.insert("pass".into(), c.pass.into());
                if let Some(d) = &c.detail {
                    m.insert("detail".into(), d.clone().into());
                }
                Value::Object(m)
            })
            .collect();
        obj.insert("checks".into(), checks.into());
        obj.insert("pass".into(), self.pass().into());
        Value::Object(obj)
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Report sink for one run.
pub struct Report {
    format: Format,
    out: Box<dyn Write>,
    csv_header: Option<Vec<&'static str>>,
    records: usize,
    checks: usize,
    failed: usize,
}

impl Report {
    pub fn new(cfg: &RunConfig, out: Box<dyn Write>) -> io::Result<Self> {
        let mut r = Report {
            format: cfg.format,
            out,
            csv_header: None,
            records: 0,
            checks: 0,
            failed: 0,
        };
        let header = json!({
            "kind": "header",
            "schema": SCHEMA_VERSION,
            "config": cfg.echo(),
        });
        match r.format {
            Format::Json => r.line(&header.to_string())?,
            Format::Text => {
                let echo = cfg.echo();
                let parts: Vec<String> = echo
                    .as_object()
                    .expect("object")
                    .iter()
                    .map(|(k, v)| format!("{k}={}", plain(v)))
                    .collect();
                r.line(&format!("# {SCHEMA_VERSION} {}", parts.join(" ")))?;
            }
            Format::Csv => {}
        }
        Ok(r)
    }

    fn line(&mut self, s: &str) -> io::Result<()> {
        writeln!(self.out, "{s}")?;
        self.out.flush()
    }

    pub fn emit(&mut self, rec: &Record) -> io::Result<()> {
        self.records += 1;
        self.checks += rec.checks.len();
        self.failed += rec.checks.iter().filter(|c| !c.pass).count();
        match self.format {
            Format::Json => self.line(&rec.to_json().to_string()),
            Format::Text => self.emit_text(rec),
            Format::Csv => self.emit_csv(rec),
        }
    }

    fn emit_text(&mut self, rec: &Record) -> io::Result<()> {
        let fields: Vec<String> = rec.fields.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
        self.line(&format!(
            "[{}] {}  {}",
            rec.table,
            fields.join(" "),
            verdict(rec.pass())
        ))?;
        for c in &rec.checks {
            let detail = c.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default();
            self.line(&format!("    {} {}{detail}", verdict(c.pass), c.name))?;
        }
        Ok(())
    }

    fn emit_csv(&mut self, rec: &Record) -> io::Result<()> {
        if rec.columns.is_empty() {
            return Ok(());
        }
        let mut buf = Vec::new();
        let new_table = self.csv_header.as_deref() != Some(&rec.columns[..]);
        if new_table && self.csv_header.is_some() {
            buf.push(b'\n');
        }
        {
            let mut w = csv::WriterBuilder::new().flexible(true).from_writer(&mut buf);
            if new_table {
                w.write_record(&rec.columns).map_err(io::Error::other)?;
                self.csv_header = Some(rec.columns.clone());
            }
            let row: Vec<String> = rec
                .columns
                .iter()
                .map(|c| {
                    if *c == "pass" {
                        rec.pass().to_string()
                    } else {
                        rec.fields.get(*c).map(plain).unwrap_or_default()
                    }
                })
                .collect();
            w.write_record(&row).map_err(io::Error::other)?;
            w.flush()?;
        }
        self.out.write_all(&buf)?;
        self.out.flush()
    }

    /// Writes the closing line; returns whether every check passed.
    pub fn finish(mut self) -> io::Result<bool> {
        let pass = self.failed == 0;
        match self.format {
            Format::Json => {
                let s = json!({
                    "kind": "summary",
                    "records": self.records,
                    "checks": self.checks,
                    "failed": self.failed,
                    "pass": pass,
                });
                self.line(&s.to_string())?;
            }
            Format::Text => {
                let s = format!(
                    "# {} records, {} checks, {} failed: {}",
                    self.records,
                    self.checks,
                    self.failed,
                    verdict(pass)
                );
                self.line(&s)?;
            }
            Format::Csv => {}
        }
        Ok(pass)
    }

    /// Writes an error line in place of the summary.
    pub fn abort(mut self, kind: &str, message: &str) -> io::Result<()> {
        match self.format {
            Format::Json => {
                let s = json!({ "kind": "error", "error": kind, "message": message, "records": self.records });
                self.line(&s.to_string())
            }
            Format::Text => self.line(&format!("# error ({kind}): {message}")),
            Format::Csv => Ok(()),
        }
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}
