//! CSV and JSON-lines renderings of a classification report.
//!
//! Columns: `id,dim,n_rays,n_maxcones,status,witness_tau,witness_value,fingerprints,runtime_ms`.
//! Records that failed carry status `Error` and an `error` field (JSONL only).

use serde_json::{json, Map, Value};

use crate::classifier::{ClassificationRecord, RecordError, Report};

pub const CSV_HEADER: [&str; 9] = [
    "id",
    "dim",
    "n_rays",
    "n_maxcones",
    "status",
    "witness_tau",
    "witness_value",
    "fingerprints",
    "runtime_ms",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReportOptions {
    /// Leave `runtime_ms` empty so reports are byte-identical across runs.
    pub timing: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { timing: true }
    }
}

pub fn format_tau(tau: &[usize]) -> String {
    let inner: Vec<String> = tau.iter().map(ToString::to_string).collect();
    format!("[{}]", inner.join(","))
}

fn fingerprints(rec: &ClassificationRecord) -> String {
    rec.fingerprints.iter().map(|f| f.as_str()).collect::<Vec<_>>().join("|")
}

fn csv_row(rec: &ClassificationRecord, opts: ReportOptions) -> [String; 9] {
    [
        rec.id.clone(),
        rec.dim.to_string(),
        rec.n_rays.to_string(),
        rec.n_maxcones.to_string(),
        rec.status.to_string(),
        rec.witness_tau.as_deref().map(format_tau).unwrap_or_default(),
        rec.witness_value.as_ref().map(ToString::to_string).unwrap_or_default(),
        fingerprints(rec),
        if opts.timing { rec.runtime_ms.to_string() } else { String::new() },
    ]
}

fn csv_error_row(err: &RecordError) -> [String; 9] {
    let mut row: [String; 9] = Default::default();
    row[0] = err.id.clone();
    row[4] = "Error".into();
    row
}

pub fn to_csv(report: &Report, opts: ReportOptions) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("writing to memory");
    for r in &report.records {
        let row = match r {
            Ok(rec) => csv_row(rec, opts),
            Err(e) => csv_error_row(e),
        };
        w.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is UTF-8")
}

fn integer_value(v: &num_bigint::BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

pub fn record_json(rec: &ClassificationRecord, opts: ReportOptions) -> Value {
    let mut m = Map::new();
    m.insert("id".into(), json!(rec.id));
    m.insert("dim".into(), json!(rec.dim));
    m.insert("n_rays".into(), json!(rec.n_rays));
    m.insert("n_maxcones".into(), json!(rec.n_maxcones));
    m.insert("status".into(), json!(rec.status.as_str()));
    m.insert("witness_tau".into(), rec.witness_tau.as_ref().map_or(Value::Null, |t| json!(t)));
    m.insert("witness_value".into(), rec.witness_value.as_ref().map_or(Value::Null, integer_value));
    m.insert(
        "fingerprints".into(),
        json!(rec.fingerprints.iter().map(|f| f.as_str()).collect::<Vec<_>>()),
    );
    m.insert("runtime_ms".into(), if opts.timing { json!(rec.runtime_ms) } else { Value::Null });
    Value::Object(m)
}

pub fn to_jsonl(report: &Report, opts: ReportOptions) -> String {
    let mut out = String::new();
    for r in &report.records {
        let v = match r {
            Ok(rec) => record_json(rec, opts),
            Err(e) => json!({ "id": e.id, "status": "Error", "error": e.error.to_string() }),
        };
        out += &v.to_string();
        out.push('\n');
    }
    out
}
