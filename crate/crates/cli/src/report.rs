//! JSON report and CSV tables. The layout is documented in
//! `docs/report-schema.md`.

use std::path::Path;
use std::time::Duration;

use nc_workbench::suite::{BoundKind, Check, Suite, SuiteOutput, Table};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::config::RunConfig;

pub const REPORT_SCHEMA_VERSION: u32 = 1;
pub const REPORT_FILE: &str = "report.json";

/// JSON numbers for finite values, `"inf"`, `"-inf"` or `"nan"` otherwise.
fn number(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

#[derive(Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub name: String,
    pub value: Value,
    pub bound: Value,
    pub kind: BoundKind,
    pub pass: bool,
    #[serde(skip)]
    raw: (f64, f64),
}

impl CheckRecord {
    fn new(c: &Check) -> Self {
        Self {
            id: c.id.clone(),
            name: c.name.clone(),
            value: number(c.value),
            bound: number(c.bound),
            kind: c.kind,
            pass: c.pass,
            raw: (c.value, c.bound),
        }
    }

    pub fn summary(&self) -> String {
        let op = match self.kind {
            BoundKind::Max => "<=",
            BoundKind::Min => ">=",
        };
        format!("{:.4e} {op} {:.4e}", self.raw.0, self.raw.1)
    }
}

#[derive(Debug, Serialize)]
pub struct SuiteRecord {
    pub name: &'static str,
    pub pass: bool,
    pub duration_s: f64,
    pub checks: Vec<CheckRecord>,
    /// CSV files written next to the report.
    pub tables: Vec<String>,
    #[serde(skip)]
    raw_tables: Vec<Table>,
}

impl SuiteRecord {
    pub fn new(suite: Suite, output: SuiteOutput, elapsed: Duration) -> Self {
        let tables = output.tables.iter().map(|t| format!("{}.{}.csv", suite.name(), t.name)).collect();
        Self {
            name: suite.name(),
            pass: output.all_pass(),
            duration_s: elapsed.as_secs_f64(),
            checks: output.checks.iter().map(CheckRecord::new).collect(),
            tables,
            raw_tables: output.tables,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub experiment: String,
    pub command: String,
    pub seed: u64,
    pub rng: String,
    pub tol_scale: f64,
    pub inputs_digest: String,
    pub pass: bool,
    pub failed: Vec<String>,
    pub duration_s: f64,
    pub suites: Vec<SuiteRecord>,
}

/// SHA-256 of the canonical JSON of everything that determines the checks:
/// the configuration without its output section, the command, the selected
/// suites and the tolerance scale.
pub fn inputs_digest(cfg: &RunConfig, command: &str, suites: &[&str], tol_scale: f64) -> String {
    let canonical = json!({
        "schema_version": cfg.schema_version,
        "experiment": cfg.experiment,
        "seed": cfg.seed,
        "rng": cfg.rng,
        "params": cfg.params,
        "command": command,
        "suites": suites,
        "tol_scale": tol_scale,
    });
    hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
}

impl Report {
    pub fn new(cfg: &RunConfig, command: &str, tol_scale: f64, suites: Vec<SuiteRecord>, elapsed: Duration) -> Self {
        let names: Vec<&str> = suites.iter().map(|s| s.name).collect();
        let failed: Vec<String> =
            suites.iter().flat_map(|s| s.checks.iter().filter(|c| !c.pass).map(|c| c.id.clone())).collect();
        Self {
            schema_version: REPORT_SCHEMA_VERSION,
            tool: "ncwb",
            version: env!("CARGO_PKG_VERSION"),
            experiment: cfg.experiment.clone(),
            command: command.into(),
            seed: cfg.seed,
            rng: cfg.rng.clone(),
            tol_scale,
            inputs_digest: inputs_digest(cfg, command, &names, tol_scale),
            pass: failed.is_empty(),
            failed,
            duration_s: elapsed.as_secs_f64(),
            suites,
        }
    }

    /// Writes the CSV tables, then the report.
    pub fn write(&self, dir: &Path) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        for suite in &self.suites {
            for (file, table) in suite.tables.iter().zip(&suite.raw_tables) {
                write_table(&dir.join(file), table)?;
            }
        }
        let text = serde_json::to_string_pretty(self).map_err(std::io::Error::other)?;
        std::fs::write(dir.join(REPORT_FILE), text + "\n")
    }
}

fn write_table(path: &Path, table: &Table) -> std::io::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|v| v.to_string()))?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_finite_numbers_are_strings() {
        assert_eq!(number(1.5), json!(1.5));
        assert_eq!(number(f64::INFINITY), json!("inf"));
        assert_eq!(number(f64::NEG_INFINITY), json!("-inf"));
        assert_eq!(number(f64::NAN), json!("nan"));
    }

    #[test]
    fn digest_ignores_output_dir() {
        let a = RunConfig::shipped();
        let mut b = a.clone();
        b.output.dir = "elsewhere".into();
        assert_eq!(inputs_digest(&a, "all", &["norms"], 1.0), inputs_digest(&b, "all", &["norms"], 1.0));
        b.seed += 1;
        assert_ne!(inputs_digest(&a, "all", &["norms"], 1.0), inputs_digest(&b, "all", &["norms"], 1.0));
    }
}
