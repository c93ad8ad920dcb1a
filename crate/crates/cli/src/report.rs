//! Report documents and their JSON / CSV renderings.
//!
//! Rationals are written as exact `num/den` strings and p-adic orders as
//! integers, with `"inf"` for the order of zero. The only time-dependent
//! field is `generated_at`; everything else is a pure function of the
//! records and the configuration echo.

use std::io::Write;
use std::path::Path;

use hecke_core::conjectures::{CheckId, CheckRecord, DefaultBounds, Value, GRID_VERSION};
use hecke_core::PAdicOrder;
use serde::Serialize;
use serde_json::Value as Json;

use crate::error::{CliError, CliResult};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const CSV_HEADER: [&str; 12] = [
    "id", "k", "m", "p", "a", "n", "kind", "computed", "predicted", "pass", "gated", "note",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsEcho {
    pub fit_k_max: u32,
    pub cor1_k_max: u32,
}

/// The grid configuration a report was produced under.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub grid: String,
    pub grid_version: u32,
    pub bounds: BoundsEcho,
    pub ids: Vec<String>,
}

impl ConfigEcho {
    pub fn default_grid(ids: &[CheckId], bounds: &DefaultBounds) -> Self {
        Self {
            grid: "default".into(),
            grid_version: GRID_VERSION,
            bounds: BoundsEcho {
                fit_k_max: bounds.fit_k_max,
                cor1_k_max: bounds.cor1_k_max,
            },
            ids: ids.iter().map(|id| id.label().to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecordRow {
    pub id: String,
    pub k: u32,
    pub m: Option<u32>,
    pub p: Option<u64>,
    pub a: Option<u32>,
    pub n: Option<u32>,
    /// `"order"`, `"exact"`, or `null` when nothing was computed.
    pub kind: Option<&'static str>,
    pub computed: Option<Json>,
    pub predicted: Option<Json>,
    pub pass: bool,
    pub gated: bool,
    pub note: Option<String>,
}

fn kind_of(v: &Value) -> &'static str {
    match v {
        Value::Order(_) => "order",
        Value::Exact(_) => "exact",
    }
}

/// `3`, `"inf"` or `"31/72"`.
pub fn value_json(v: &Value) -> Json {
    match v {
        Value::Order(PAdicOrder::Finite(o)) => Json::from(*o),
        Value::Order(PAdicOrder::Infinite) => Json::from("inf"),
        Value::Exact(r) => Json::from(r.to_string()),
    }
}

impl From<&CheckRecord> for RecordRow {
    fn from(r: &CheckRecord) -> Self {
        Self {
            id: r.id.label().to_string(),
            k: r.point.k,
            m: r.point.m,
            p: r.point.p,
            a: r.point.a,
            n: r.point.n,
            kind: r.computed.as_ref().or(r.predicted.as_ref()).map(kind_of),
            computed: r.computed.as_ref().map(value_json),
            predicted: r.predicted.as_ref().map(value_json),
            pass: r.pass,
            gated: r.gated,
            note: r.note.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    /// Records excluded from the verdict; they still count in the tallies.
    pub report_only: usize,
    /// Failed records that count toward the verdict.
    pub gated_failed: usize,
    pub verdict: &'static str,
}

impl Summary {
    pub fn of(records: &[CheckRecord]) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        let gated_failed = records.iter().filter(|r| r.gated && !r.pass).count();
        Self {
            total: records.len(),
            passed,
            failed: records.len() - passed,
            report_only: records.iter().filter(|r| !r.gated).count(),
            gated_failed,
            verdict: if gated_failed == 0 { "pass" } else { "fail" },
        }
    }

    pub fn all_gated_pass(&self) -> bool {
        self.gated_failed == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub config: ConfigEcho,
    pub notes: Vec<String>,
    pub records: Vec<RecordRow>,
    pub summary: Summary,
    /// Seconds since the Unix epoch; excluded from determinism comparisons.
    pub generated_at: u64,
}

/// Caveats attached to every report that contains the affected ids.
fn notes_for(ids: &[CheckId]) -> Vec<String> {
    let mut notes = Vec::new();
    let fitted = ids
        .iter()
        .any(|id| matches!(id, CheckId::C2_1 | CheckId::C2_2 | CheckId::C2_3 | CheckId::C2_4 | CheckId::A005148 | CheckId::Nsz));
    if fitted {
        notes.push(
            "C2.*, NSZ and A005148 treat the stabilized Kbar constant-term interpolant as the generating \
             polynomial; this identification is an assumption that no finite computation proves, and \
             held-out validation is its finite evidence"
                .into(),
        );
    }
    if ids.contains(&CheckId::A005148) {
        notes.push(
            "A005148 terms are aligned to the b-file by the first term equal to 1; the displayed derived \
             sequence prepends 0, which is not an OEIS term"
                .into(),
        );
    }
    if ids.iter().any(|id| !id.gated()) {
        notes.push(
            "C8.value, C11.2 and C11.3 are report-only: their outcome is recorded but does not affect the \
             verdict or the exit code"
                .into(),
        );
    }
    notes
}

impl ReportDocument {
    pub fn new(config: ConfigEcho, ids: &[CheckId], records: &[CheckRecord]) -> Self {
        let generated_at = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        Self {
            tool_version: TOOL_VERSION.into(),
            config,
            notes: notes_for(ids),
            records: records.iter().map(RecordRow::from).collect(),
            summary: Summary::of(records),
            generated_at,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| CliError::Failure(format!("csv: {e}"));
        w.write_record(CSV_HEADER).map_err(csv_err)?;
        let opt = |v: Option<String>| v.unwrap_or_default();
        let json_cell = |v: &Option<Json>| match v {
            Some(Json::String(s)) => s.clone(),
            Some(other) => other.to_string(),
            None => String::new(),
        };
        for r in &self.records {
            w.write_record([
                r.id.clone(),
                r.k.to_string(),
                opt(r.m.map(|v| v.to_string())),
                opt(r.p.map(|v| v.to_string())),
                opt(r.a.map(|v| v.to_string())),
                opt(r.n.map(|v| v.to_string())),
                opt(r.kind.map(String::from)),
                json_cell(&r.computed),
                json_cell(&r.predicted),
                r.pass.to_string(),
                r.gated.to_string(),
                opt(r.note.clone()),
            ])
            .map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Failure(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl ReportFormat {
    pub fn render(self, doc: &ReportDocument) -> CliResult<String> {
        match self {
            ReportFormat::Json => Ok(doc.to_json()),
            ReportFormat::Csv => doc.to_csv(),
        }
    }
}

/// Writes `doc` to `path`; an unwritable path is a usage-class error.
pub fn emit_report(doc: &ReportDocument, format: ReportFormat, path: &Path) -> CliResult<()> {
    let body = format.render(doc)?;
    let unwritable = |e: std::io::Error| CliError::Usage(format!("cannot write report {}: {e}", path.display()));
    let mut f = std::fs::File::create(path).map_err(unwritable)?;
    f.write_all(body.as_bytes()).map_err(unwritable)?;
    Ok(())
}
