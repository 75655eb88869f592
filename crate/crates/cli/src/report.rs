//! Experiment reports: a fixed column list per experiment, one record per check, and the
//! witnesses worth keeping. CSV and JSON carry the same records; wall-clock time goes to a
//! separate file so that reruns reproduce the report files byte for byte.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::ExperimentConfig;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The bound could not be decided from the measured numbers, e.g. a budget ran out or
    /// a lower-bound estimate was compared against a cap on the true constant.
    Inconclusive,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Empty,
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Empty => String::new(),
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => float_text(*v),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    /// JSON has no infinities, so non-finite floats are written as strings.
    fn json(&self) -> Value {
        match self {
            Cell::Empty => Value::Null,
            Cell::Int(v) => json!(v),
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(v) => Value::String(float_text(*v)),
            Cell::Bool(v) => json!(v),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

fn float_text(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v}")
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        i64::try_from(v).map_or_else(|_| Cell::Text(v.to_string()), Cell::Int)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::from(v as u64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// One check: its values in column order, its verdict, and the bound it was held to.
#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub cells: Vec<Cell>,
    pub status: Status,
    pub anchor: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub config: ExperimentConfig,
    pub columns: Vec<&'static str>,
    pub records: Vec<Record>,
    pub witnesses: Vec<(String, Value)>,
}

impl Report {
    pub fn new(config: &ExperimentConfig, columns: &[&'static str]) -> Self {
        Report { config: config.clone(), columns: columns.to_vec(), records: Vec::new(), witnesses: Vec::new() }
    }

    pub fn push(&mut self, cells: Vec<Cell>, status: Status, anchor: impl Into<String>) {
        assert_eq!(cells.len(), self.columns.len(), "record width must match the column list");
        self.records.push(Record { cells, status, anchor: anchor.into() });
    }

    pub fn witness(&mut self, label: impl Into<String>, value: impl Serialize) {
        self.witnesses.push((label.into(), serde_json::to_value(value).expect("witnesses serialize")));
    }

    pub fn summary(&self) -> Summary {
        let count = |s: Status| self.records.iter().filter(|r| r.status == s).count();
        Summary { pass: count(Status::Pass), fail: count(Status::Fail), inconclusive: count(Status::Inconclusive) }
    }

    /// Any failure fails the run; otherwise any inconclusive record makes it inconclusive.
    pub fn status(&self) -> Status {
        let s = self.summary();
        if s.fail > 0 {
            Status::Fail
        } else if s.inconclusive > 0 {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let header: Vec<&str> = self.columns.iter().copied().chain(["status", "anchor"]).collect();
        w.write_record(&header)?;
        for r in &self.records {
            let row: Vec<String> = r.cells.iter().map(Cell::csv).chain([r.status.as_str().to_string(), r.anchor.clone()]).collect();
            w.write_record(&row)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> String {
        let records: Vec<Value> = self
            .records
            .iter()
            .map(|r| {
                let mut m = Map::new();
                for (c, v) in self.columns.iter().zip(&r.cells) {
                    m.insert((*c).to_string(), v.json());
                }
                m.insert("status".into(), json!(r.status));
                m.insert("anchor".into(), json!(r.anchor));
                Value::Object(m)
            })
            .collect();
        let witnesses: Vec<Value> = self.witnesses.iter().map(|(label, v)| json!({ "label": label, "value": v })).collect();
        let doc = json!({
            "experiment": self.config.experiment,
            "status": self.status(),
            "summary": self.summary(),
            "config": self.config,
            "columns": self.columns,
            "records": records,
            "witnesses": witnesses,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("reports serialize");
        text.push('\n');
        text
    }

    /// Terminal view: every record for short reports, otherwise the failures and a summary.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let s = self.summary();
        writeln!(out, "{}: {} ({} pass, {} fail, {} inconclusive)", self.config.experiment, self.status().as_str(), s.pass, s.fail, s.inconclusive).unwrap();
        let shown: Vec<&Record> = if self.records.len() <= 40 {
            self.records.iter().collect()
        } else {
            self.records.iter().filter(|r| r.status != Status::Pass).take(20).collect()
        };
        if shown.is_empty() {
            return out;
        }
        let header: Vec<String> = self.columns.iter().map(|c| c.to_string()).chain(["status".to_string()]).collect();
        let rows: Vec<Vec<String>> = shown
            .iter()
            .map(|r| r.cells.iter().map(|c| short(&c.csv())).chain([r.status.as_str().to_string()]).collect())
            .collect();
        let widths: Vec<usize> = (0..header.len()).map(|i| rows.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap()).collect();
        let line = |cells: &[String]| cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ");
        writeln!(out, "{}", line(&header)).unwrap();
        for r in &rows {
            writeln!(out, "{}", line(r)).unwrap();
        }
        out
    }

    /// Writes `<experiment>.csv`, `<experiment>.json` and `<experiment>.timing.json` into `dir`.
    pub fn write(&self, dir: &Path, seconds: f64) -> Result<Vec<PathBuf>, CliError> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        let stem = self.config.experiment.as_str();
        let timing = json!({ "experiment": stem, "wall_clock_seconds": seconds });
        let files = [
            (dir.join(format!("{stem}.csv")), self.to_csv()?),
            (dir.join(format!("{stem}.json")), self.to_json()),
            (dir.join(format!("{stem}.timing.json")), format!("{}\n", serde_json::to_string_pretty(&timing).unwrap())),
        ];
        let mut written = Vec::new();
        for (path, body) in files {
            std::fs::write(&path, body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            written.push(path);
        }
        Ok(written)
    }
}

/// Long decimal expansions are cut for the terminal only.
fn short(s: &str) -> String {
    match s.parse::<f64>() {
        Ok(v) if s.contains('.') && s.len() > 10 => format!("{v:.6}"),
        _ if s.len() > 32 => format!("{}…", &s[..31]),
        _ => s.to_string(),
    }
}
