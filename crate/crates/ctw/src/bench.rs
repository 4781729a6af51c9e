//! Running an engine over a directory of instances.

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use ctw_core::cost::{evaluate, CostBreakdown};
use ctw_core::metrics::{metrics, InstanceMetrics};
use ctw_core::validate::validate;
use ctw_core::{Instance, SolveResult, SolveState, SolverConfig};

use crate::engine::{millis_since, run_engine, Engine};
use crate::io::solution::SolutionFile;
use crate::io::{read_instance, InstanceFormat, LoadWarning};

/// The four solver outcomes plus a catch-all for anything that could not
/// be checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RowState {
    Optimal,
    Suboptimal,
    Unsatisfiable,
    Unsolved,
    Undefined,
}

impl RowState {
    pub fn as_str(self) -> &'static str {
        match self {
            RowState::Optimal => "optimal",
            RowState::Suboptimal => "suboptimal",
            RowState::Unsatisfiable => "unsatisfiable",
            RowState::Unsolved => "unsolved",
            RowState::Undefined => "undefined",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "optimal" => RowState::Optimal,
            "suboptimal" => RowState::Suboptimal,
            "unsatisfiable" => RowState::Unsatisfiable,
            "unsolved" => RowState::Unsolved,
            "undefined" => RowState::Undefined,
            _ => return None,
        })
    }
}

impl From<SolveState> for RowState {
    fn from(s: SolveState) -> Self {
        match s {
            SolveState::Optimal => RowState::Optimal,
            SolveState::Suboptimal => RowState::Suboptimal,
            SolveState::Unsatisfiable => RowState::Unsatisfiable,
            SolveState::Unsolved => RowState::Unsolved,
        }
    }
}

impl fmt::Display for RowState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    /// `N >= k`: the weighted sum no longer orders the criteria
    /// lexicographically.
    NAtLeastK,
    /// Claimed costs differ from the recomputed ones.
    ClaimMismatch,
    /// The input listing contained `...`.
    Elided,
    /// Duplicate constraints were dropped on input.
    Duplicates,
}

impl Flag {
    pub fn as_str(self) -> &'static str {
        match self {
            Flag::NAtLeastK => "n_ge_k",
            Flag::ClaimMismatch => "claim_mismatch",
            Flag::Elided => "elided_input",
            Flag::Duplicates => "duplicates_dropped",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "n_ge_k" => Flag::NAtLeastK,
            "claim_mismatch" => Flag::ClaimMismatch,
            "elided_input" => Flag::Elided,
            "duplicates_dropped" => Flag::Duplicates,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub id: String,
    pub state: RowState,
    /// Recomputed from the permutation, never taken from the engine.
    pub costs: Option<CostBreakdown>,
    pub runtime_ms: u64,
    pub nodes: u64,
    pub lower_bound: Option<u64>,
    pub metrics: Option<InstanceMetrics>,
    pub flags: Vec<Flag>,
    pub diagnostic: Option<String>,
}

impl BenchRow {
    fn undefined(id: &str, diagnostic: String) -> Self {
        BenchRow {
            id: id.to_string(),
            state: RowState::Undefined,
            costs: None,
            runtime_ms: 0,
            nodes: 0,
            lower_bound: None,
            metrics: None,
            flags: Vec::new(),
            diagnostic: Some(diagnostic),
        }
    }
}

fn warning_flags(warnings: &[LoadWarning]) -> Vec<Flag> {
    let mut flags: Vec<Flag> = warnings
        .iter()
        .map(|w| match w {
            LoadWarning::Elided { .. } => Flag::Elided,
            LoadWarning::Duplicates(_) => Flag::Duplicates,
        })
        .collect();
    flags.sort();
    flags.dedup();
    flags
}

fn cost_flags(inst: &Instance, costs: &CostBreakdown, flags: &mut Vec<Flag>) {
    if costs.n > 0 && costs.n >= inst.k() as u64 {
        flags.push(Flag::NAtLeastK);
    }
}

/// Turns an engine result into a row, re-checking the permutation and
/// recomputing its costs.
pub fn row_from_result(id: &str, inst: &Instance, result: &SolveResult) -> BenchRow {
    let mut row = BenchRow {
        id: id.to_string(),
        state: result.state.into(),
        costs: None,
        runtime_ms: result.stats.time_ms,
        nodes: result.stats.nodes_expanded,
        lower_bound: result.stats.proven_lower_bound,
        metrics: Some(metrics(inst)),
        flags: Vec::new(),
        diagnostic: None,
    };
    if let Some((perm, _)) = &result.best {
        match validate(inst, perm) {
            Ok(v) if v.is_empty() => {
                let costs = evaluate(inst, perm).expect("objective fits in 64 bits");
                cost_flags(inst, &costs, &mut row.flags);
                row.costs = Some(costs);
            }
            Ok(v) => {
                row.state = RowState::Undefined;
                row.diagnostic = Some(format!("engine returned an invalid permutation: {}", v[0]));
            }
            Err(e) => {
                row.state = RowState::Undefined;
                row.diagnostic = Some(e.to_string());
            }
        }
    }
    row
}

/// Checks a solution produced elsewhere.
///
/// A valid permutation yields a `Suboptimal` row: it is feasible but
/// nothing proves it optimal. Anything malformed or invalid is
/// `Undefined`.
pub fn validate_external(id: &str, inst: &Instance, sol: &SolutionFile) -> BenchRow {
    let perm = match sol.to_permutation() {
        Ok(p) => p,
        Err(e) => return BenchRow::undefined(id, format!("malformed solution: {e}")),
    };
    match validate(inst, &perm) {
        Ok(v) if v.is_empty() => {}
        Ok(v) => {
            let list: Vec<String> = v.iter().map(ToString::to_string).collect();
            return BenchRow::undefined(id, format!("invalid solution: {}", list.join("; ")));
        }
        Err(e) => return BenchRow::undefined(id, format!("malformed solution: {e}")),
    }
    let costs = evaluate(inst, &perm).expect("objective fits in 64 bits");
    let mut flags = Vec::new();
    cost_flags(inst, &costs, &mut flags);
    let mismatches = sol.claimed.mismatches(&costs);
    let diagnostic = if mismatches.is_empty() {
        None
    } else {
        flags.push(Flag::ClaimMismatch);
        Some(format!("claimed {} differ from recomputed values", mismatches.join(", ")))
    };
    flags.sort();
    BenchRow {
        id: id.to_string(),
        state: RowState::Suboptimal,
        costs: Some(costs),
        runtime_ms: 0,
        nodes: 0,
        lower_bound: None,
        metrics: Some(metrics(inst)),
        flags,
        diagnostic,
    }
}

/// Instance files below `dir`, with ids formed from the relative path
/// without extension. Sorted by id.
pub fn instance_files(dir: &Path) -> io::Result<Vec<(String, PathBuf)>> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d)? {
            let path = entry?.path();
            if path.is_dir() {
                stack.push(path);
            } else if InstanceFormat::from_path(&path).is_some_and(|f| f.is_readable()) {
                let rel = path.strip_prefix(dir).unwrap_or(&path).with_extension("");
                let id = rel
                    .components()
                    .map(|c| c.as_os_str().to_string_lossy())
                    .collect::<Vec<_>>()
                    .join("/");
                out.push((id, path));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Solves one instance file; every failure becomes an `Undefined` row.
pub fn run_file(id: &str, path: &Path, cfg: &SolverConfig, engine: Engine) -> BenchRow {
    let start = Instant::now();
    let (inst, warnings) = match read_instance(path) {
        Ok(x) => x,
        Err(e) => return BenchRow::undefined(id, e.to_string()),
    };
    let result = match run_engine(&inst, engine, cfg, &mut ()) {
        Ok(r) => r,
        Err(e) => {
            let mut row = BenchRow::undefined(id, e.to_string());
            row.metrics = Some(metrics(&inst));
            row.runtime_ms = millis_since(start);
            return row;
        }
    };
    let mut row = row_from_result(id, &inst, &result);
    row.flags.extend(warning_flags(&warnings));
    row.flags.sort();
    row.flags.dedup();
    row
}

/// Solves every instance below `dir` on `jobs` worker threads. Rows come
/// back ordered by id regardless of completion order.
pub fn run_suite(dir: &Path, cfg: &SolverConfig, engine: Engine, jobs: usize) -> io::Result<Vec<BenchRow>> {
    let files = instance_files(dir)?;
    let slots: Mutex<Vec<Option<BenchRow>>> = Mutex::new(vec![None; files.len()]);
    let next = AtomicUsize::new(0);
    let workers = jobs.max(1).min(files.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((id, path)) = files.get(i) else { break };
                let row = run_file(id, path, cfg, engine);
                slots.lock().expect("no worker panics while holding the lock")[i] = Some(row);
            });
        }
    });
    Ok(slots
        .into_inner()
        .expect("workers finished")
        .into_iter()
        .map(|r| r.expect("every slot filled"))
        .collect())
}

/// Metrics of every instance below `dir`; unreadable files are skipped
/// with their error.
#[allow(clippy::type_complexity)]
pub fn collect_metrics(dir: &Path) -> io::Result<Vec<(String, Result<InstanceMetrics, String>)>> {
    Ok(instance_files(dir)?
        .into_iter()
        .map(|(id, path)| {
            let m = read_instance(&path).map(|(inst, _)| metrics(&inst)).map_err(|e| e.to_string());
            (id, m)
        })
        .collect())
}

pub fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, usize::from)
}
