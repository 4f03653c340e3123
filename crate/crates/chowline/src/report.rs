//! Reports: one record per check, written as `report.json` and
//! `report.csv`, plus per-check CSV tables. Wall-clock times go to a
//! separate `timing.json` so the reports themselves are reproducible.

use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::config::ScenarioConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// The statement the check exercises.
    pub anchor: String,
    pub status: Status,
    pub value: String,
    pub tolerance: String,
    pub details: Value,
}

/// Rows of one CSV output file.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub file: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(file: impl Into<String>, headers: &[&str]) -> Self {
        Self { file: file.into(), headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.rows.push(row.into_iter().map(|s| s.to_string()).collect());
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// A finished check with its tables and elapsed seconds.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub record: CheckRecord,
    pub tables: Vec<Table>,
    pub elapsed: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub scenario: String,
    pub seed: Option<u64>,
    pub config: ScenarioConfig,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}

impl Report {
    /// Records are sorted by name.
    pub fn new(command: &str, config: &ScenarioConfig, seed: Option<u64>, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let pass = checks.iter().all(|c| c.status == Status::Pass);
        Self {
            schema_version: crate::config::SCHEMA_VERSION,
            command: command.to_string(),
            scenario: config.scenario.clone(),
            seed,
            config: config.clone(),
            checks,
            pass,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut t = Table::new("report.csv", &["name", "status", "value", "tolerance", "anchor"]);
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
            };
            t.push([c.name.as_str(), status, &c.value, &c.tolerance, &c.anchor]);
        }
        t.to_csv()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum WriteError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<(), WriteError> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| WriteError::Io { path: path.display().to_string(), source })
}

/// Writes `report.json`, `report.csv`, every table, and `timing.json`.
pub fn write_outputs(dir: &Path, report: &Report, outcomes: &[Outcome]) -> Result<(), WriteError> {
    fs::create_dir_all(dir).map_err(|source| WriteError::Io { path: dir.display().to_string(), source })?;
    write(dir, "report.json", &report.to_json())?;
    write(dir, "report.csv", &report.to_csv()?)?;
    let mut timing = serde_json::Map::new();
    for o in outcomes {
        for t in &o.tables {
            write(dir, &t.file, &t.to_csv()?)?;
        }
        timing.insert(o.record.name.clone(), Value::from(o.elapsed));
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(timing)).expect("timing serializes");
    s.push('\n');
    write(dir, "timing.json", &s)
}
