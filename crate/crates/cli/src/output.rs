//! Report files. CSV tables carry an error estimate on every row; each run
//! also writes `manifest.json` echoing the full config. The manifest's
//! `timestamp_unix` is the only field that differs between identical runs.

use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::error::CliError;

pub const MANIFEST: &str = "manifest.json";
/// Field excluded when comparing reports of repeated runs.
pub const TIMESTAMP_FIELD: &str = "timestamp_unix";

/// One evaluated point. Failed points keep their row with NaN values and
/// the error text in `status`.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub x: f64,
    pub value: f64,
    pub error_estimate: f64,
    pub residual: Option<f64>,
    pub status: String,
}

impl Row {
    pub fn ok(x: f64, value: f64, error_estimate: f64, residual: Option<f64>) -> Self {
        Row { x, value, error_estimate, residual, status: "ok".into() }
    }

    pub fn failed(x: f64, err: impl ToString) -> Self {
        Row { x, value: f64::NAN, error_estimate: f64::NAN, residual: None, status: err.to_string() }
    }

    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

/// Header `x,value,error_estimate[,residual],status`; the residual column
/// appears when any row has one.
pub fn write_rows(path: &Path, rows: &[Row]) -> Result<(), CliError> {
    let with_residual = rows.iter().any(|r| r.residual.is_some());
    let mut header = vec!["x", "value", "error_estimate"];
    if with_residual {
        header.push("residual");
    }
    header.push("status");
    let records = rows.iter().map(|r| {
        let mut rec = vec![num(r.x), num(r.value), num(r.error_estimate)];
        if with_residual {
            rec.push(r.residual.map(num).unwrap_or_default());
        }
        rec.push(r.status.clone());
        rec
    });
    write_csv(path, &header, records)
}

/// Shortest round-tripping text for a float, in exponent form outside
/// `[1e-4, 1e15)` so tiny error estimates stay readable.
pub fn num(v: f64) -> String {
    let m = v.abs();
    if m == 0.0 || !m.is_finite() || (1e-4..1e15).contains(&m) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

pub fn write_csv<I>(path: &Path, header: &[&str], records: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let ctx = || format!("writing {}", path.display());
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Io { context: ctx(), source: e.into() })?;
    let csv_err = |e: csv::Error| CliError::Io { context: ctx(), source: e.into() };
    w.write_record(header).map_err(csv_err)?;
    for rec in records {
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush().map_err(CliError::io(ctx()))
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Io { context: path.display().to_string(), source: e.into() })?;
    text.push('\n');
    fs::write(path, text).map_err(CliError::io(format!("writing {}", path.display())))
}

#[derive(Serialize)]
struct Manifest<'a, C: Serialize, S: Serialize> {
    tool: &'static str,
    version: &'static str,
    library_version: &'static str,
    command: &'a str,
    config: &'a C,
    summary: &'a S,
    timestamp_unix: u64,
}

pub fn write_manifest<C: Serialize, S: Serialize>(dir: &Path, command: &str, config: &C, summary: &S) -> Result<(), CliError> {
    let timestamp_unix = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let m = Manifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        library_version: weber_orr_core::VERSION,
        command,
        config,
        summary,
        timestamp_unix,
    };
    write_json(&dir.join(MANIFEST), &m)
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(CliError::io(format!("creating {}", dir.display())))
}
