//! CSV reports: one row per instance.

use ctw_core::metrics::InstanceMetrics;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bench::{BenchRow, Flag, RowState};

pub const REPORT_COLUMNS: [&str; 17] = [
    "id",
    "k",
    "b",
    "state",
    "S",
    "M",
    "L",
    "N",
    "objective",
    "runtime_ms",
    "nodes",
    "lower_bound",
    "sum_of_constraints",
    "avg_constrainedness",
    "max_constrainedness",
    "flags",
    "diagnostic",
];

pub const METRICS_COLUMNS: [&str; 12] = [
    "id",
    "k",
    "b",
    "n",
    "atomic",
    "soft_atomic",
    "disjunctive",
    "direct_successors",
    "sum_of_constraints",
    "avg_constrainedness",
    "max_constrainedness",
    "error",
];

/// One report line as written to and read from CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub id: String,
    pub k: Option<usize>,
    pub b: Option<usize>,
    pub state: String,
    #[serde(rename = "S")]
    pub s: Option<u64>,
    #[serde(rename = "M")]
    pub m: Option<u64>,
    #[serde(rename = "L")]
    pub l: Option<u64>,
    #[serde(rename = "N")]
    pub n: Option<u64>,
    pub objective: Option<u64>,
    pub runtime_ms: Option<u64>,
    pub nodes: u64,
    pub lower_bound: Option<u64>,
    pub sum_of_constraints: Option<usize>,
    pub avg_constrainedness: Option<String>,
    pub max_constrainedness: Option<String>,
    pub flags: String,
    pub diagnostic: String,
}

fn one_decimal(x: f64) -> String {
    format!("{x:.1}")
}

impl ReportRecord {
    pub fn from_row(row: &BenchRow, timestamps: bool) -> Self {
        let m = row.metrics.as_ref();
        let c = row.costs.as_ref();
        ReportRecord {
            id: row.id.clone(),
            k: m.map(|m| m.k),
            b: m.map(|m| m.b),
            state: row.state.as_str().to_string(),
            s: c.map(|c| c.s),
            m: c.map(|c| c.m),
            l: c.map(|c| c.l),
            n: c.map(|c| c.n),
            objective: c.map(|c| c.objective),
            runtime_ms: timestamps.then_some(row.runtime_ms),
            nodes: row.nodes,
            lower_bound: row.lower_bound,
            sum_of_constraints: m.map(|m| m.sum_of_constraints),
            avg_constrainedness: m.map(|m| one_decimal(m.avg_constrainedness())),
            max_constrainedness: m.map(|m| one_decimal(m.max_constrainedness())),
            flags: row.flags.iter().map(|f| f.as_str()).collect::<Vec<_>>().join(";"),
            diagnostic: row.diagnostic.clone().unwrap_or_default(),
        }
    }

    pub fn state(&self) -> Option<RowState> {
        RowState::parse(&self.state)
    }

    pub fn flags(&self) -> Vec<Option<Flag>> {
        self.flags.split(';').filter(|s| !s.is_empty()).map(Flag::parse).collect()
    }
}

fn writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    let bytes = w.into_inner().expect("writing to memory cannot fail");
    String::from_utf8(bytes).expect("csv output is UTF-8")
}

/// Always writes the header, also for an empty report.
pub fn emit_report_csv(rows: &[BenchRow], timestamps: bool) -> String {
    let mut w = writer();
    w.write_record(REPORT_COLUMNS).expect("in-memory write");
    for row in rows {
        w.serialize(ReportRecord::from_row(row, timestamps)).expect("in-memory write");
    }
    finish(w)
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("header does not match the report columns")]
    Header,
    #[error("row {row}: {message}")]
    Row { row: usize, message: String },
}

/// Reads a report back. Rows are numbered from 1, not counting the header.
pub fn parse_report_csv(text: &str) -> Result<Vec<ReportRecord>, ReportError> {
    let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header = r.headers().map_err(|_| ReportError::Header)?;
    if header.iter().ne(REPORT_COLUMNS) {
        return Err(ReportError::Header);
    }
    r.deserialize()
        .enumerate()
        .map(|(i, rec)| {
            let row = i + 1;
            let rec: ReportRecord = rec.map_err(|e| ReportError::Row {
                row,
                message: e.to_string(),
            })?;
            if rec.state().is_none() {
                return Err(ReportError::Row {
                    row,
                    message: format!("unknown state `{}`", rec.state),
                });
            }
            if rec.flags().contains(&None) {
                return Err(ReportError::Row {
                    row,
                    message: format!("unknown flag in `{}`", rec.flags),
                });
            }
            Ok(rec)
        })
        .collect()
}

pub fn emit_metrics_csv(rows: &[(String, Result<InstanceMetrics, String>)]) -> String {
    let mut w = writer();
    w.write_record(METRICS_COLUMNS).expect("in-memory write");
    for (id, m) in rows {
        let record: Vec<String> = match m {
            Ok(m) => vec![
                id.clone(),
                m.k.to_string(),
                m.b.to_string(),
                m.n.to_string(),
                m.atomic.to_string(),
                m.soft_atomic.to_string(),
                m.disjunctive.to_string(),
                m.direct_successors.to_string(),
                m.sum_of_constraints.to_string(),
                one_decimal(m.avg_constrainedness()),
                one_decimal(m.max_constrainedness()),
                String::new(),
            ],
            Err(e) => {
                let mut r = vec![id.clone()];
                r.extend(std::iter::repeat(String::new()).take(METRICS_COLUMNS.len() - 2));
                r.push(e.clone());
                r
            }
        };
        w.write_record(&record).expect("in-memory write");
    }
    finish(w)
}
