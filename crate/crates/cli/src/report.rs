//! Collected output of one command: CSV tables, a summary, and a
//! `run.json` log of the resolved parameters and constants.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use convexlab::io::{fmt_f64, write_table};
use convexlab::{Error, Result};
use serde::Serialize;
use serde_json::{Map, Value};

pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

pub struct Report {
    command: &'static str,
    parameters: Value,
    constants: Map<String, Value>,
    summary: Map<String, Value>,
    tables: Vec<Table>,
    /// Set when the run completed but its outcome maps to a nonzero status.
    pub failure: Option<Error>,
}

/// Formats a float for CSV with 17 significant digits.
pub fn num(x: f64) -> String {
    fmt_f64(x)
}

impl Report {
    pub fn new(command: &'static str, parameters: &impl Serialize) -> Self {
        Self {
            command,
            parameters: serde_json::to_value(parameters).expect("arguments serialize"),
            constants: Map::new(),
            summary: Map::new(),
            tables: Vec::new(),
            failure: None,
        }
    }

    pub fn constant(&mut self, key: &str, value: impl Into<Value>) {
        self.constants.insert(key.to_string(), value.into());
    }

    pub fn summary(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    pub fn table(&mut self, name: &str, header: &[&str], rows: Vec<Vec<String>>) {
        self.tables.push(Table {
            name: name.to_string(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
        });
    }

    pub fn table_owned(&mut self, name: &str, header: Vec<String>, rows: Vec<Vec<String>>) {
        self.tables.push(Table {
            name: name.to_string(),
            header,
            rows,
        });
    }

    /// Writes every table and `run.json` into `dir`, or the first table to
    /// stdout when no directory is given. The log always goes to stderr.
    pub fn emit(&self, dir: Option<&Path>) -> Result<()> {
        self.log(&mut io::stderr().lock())?;
        match dir {
            Some(dir) => {
                fs::create_dir_all(dir)?;
                for t in &self.tables {
                    let header: Vec<&str> = t.header.iter().map(String::as_str).collect();
                    write_table(
                        BufWriter::new(File::create(dir.join(&t.name))?),
                        &header,
                        &t.rows,
                    )?;
                }
                let mut f = BufWriter::new(File::create(dir.join("run.json"))?);
                serde_json::to_writer_pretty(&mut f, &self.run_log())?;
                writeln!(f)?;
                f.flush()?;
            }
            None => {
                if let Some(t) = self.tables.first() {
                    let header: Vec<&str> = t.header.iter().map(String::as_str).collect();
                    write_table(io::stdout().lock(), &header, &t.rows)?;
                }
            }
        }
        Ok(())
    }

    pub fn run_log(&self) -> Value {
        let mut log = Map::new();
        log.insert("command".into(), self.command.into());
        log.insert("parameters".into(), self.parameters.clone());
        log.insert("constants".into(), Value::Object(self.constants.clone()));
        log.insert("summary".into(), Value::Object(self.summary.clone()));
        log.insert(
            "files".into(),
            self.tables
                .iter()
                .map(|t| Value::from(t.name.clone()))
                .collect(),
        );
        log.insert(
            "status".into(),
            self.failure
                .as_ref()
                .map_or(Value::from("ok"), |e| Value::from(e.to_string())),
        );
        Value::Object(log)
    }

    fn log(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(w, "{}: {}", self.command, self.parameters)?;
        for (k, v) in self.constants.iter().chain(&self.summary) {
            writeln!(w, "  {k} = {v}")?;
        }
        Ok(())
    }
}
