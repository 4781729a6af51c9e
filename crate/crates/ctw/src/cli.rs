//! The `ctw` command line.
//!
//! Exit codes: 0 optimal, valid or done; 1 suboptimal; 2 unsatisfiable;
//! 3 unsolved; 4 usage, format or validation error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ctw_core::cost::evaluate;
use ctw_core::gen::{generate, GenMode, GenParams};
use ctw_core::oracle;
use ctw_core::reduce::{extract_mas, mas_to_ctw};
use ctw_core::solve::{IncumbentEvent, Observer, DEFAULT_TIME_LIMIT_MS};
use ctw_core::validate::validate;
use ctw_core::{Instance, SolveResult, SolveState, SolverConfig};
use serde::Serialize;

use crate::bench::{self, row_from_result, validate_external, RowState};
use crate::engine::{run_engine, Engine};
use crate::io::edgelist::parse_edgelist;
use crate::io::report::{emit_metrics_csv, emit_report_csv};
use crate::io::{emit_instance, read_instance, InstanceFormat, LoadWarning, SolutionFile};
use crate::suite::generate_suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_SUBOPTIMAL: i32 = 1;
pub const EXIT_UNSATISFIABLE: i32 = 2;
pub const EXIT_UNSOLVED: i32 = 3;
pub const EXIT_ERROR: i32 = 4;

pub fn exit_code(state: SolveState) -> i32 {
    match state {
        SolveState::Optimal => EXIT_OK,
        SolveState::Suboptimal => EXIT_SUBOPTIMAL,
        SolveState::Unsatisfiable => EXIT_UNSATISFIABLE,
        SolveState::Unsolved => EXIT_UNSOLVED,
    }
}

#[derive(Parser, Debug)]
#[command(name = "ctw", version, about = "Cable tree wiring: solve, check, generate and benchmark instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance.
    Solve(SolveArgs),
    /// Check a solution file against an instance.
    Validate(ValidateArgs),
    /// Enumerate all permutations of a small instance.
    Oracle(OracleArgs),
    /// Generate a random instance, or a preset suite.
    Gen(GenArgs),
    /// Convert an instance to another format.
    Convert(ConvertArgs),
    /// Solve every instance in a directory and write a CSV report.
    Bench(BenchArgs),
    /// Instance metrics as CSV.
    Stats(StatsArgs),
    /// Encode a maximum acyclic subgraph problem, or decode its solution.
    ReduceMas(ReduceArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct LimitArgs {
    /// Time limit in milliseconds.
    #[arg(long, env = "CTW_TIME_LIMIT_MS", default_value_t = DEFAULT_TIME_LIMIT_MS,
          value_parser = clap::value_parser!(u64).range(1..))]
    time_limit: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stop after this many search nodes.
    #[arg(long)]
    node_limit: Option<u64>,
    /// Skip the greedy first descent.
    #[arg(long)]
    no_dive: bool,
}

impl LimitArgs {
    fn config(&self) -> SolverConfig {
        let mut cfg = SolverConfig::default().with_time_limit_ms(self.time_limit);
        cfg.seed = self.seed;
        cfg.node_limit = self.node_limit;
        cfg.heuristic_dive = !self.no_dive;
        cfg
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = Engine::Bb)]
    engine: Engine,
    #[command(flatten)]
    limits: LimitArgs,
    #[arg(long, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Leave wall-clock times out of the output.
    #[arg(long)]
    no_timestamps: bool,
    /// Report progress on standard error every this many nodes.
    #[arg(long)]
    log_every: Option<u64>,
    /// Also write the best permutation as a solution file.
    #[arg(long)]
    solution_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    instance: PathBuf,
    #[arg(long)]
    solution: PathBuf,
    #[arg(long, value_enum, default_value_t = Output::Json)]
    output: Output,
}

#[derive(Args, Debug)]
struct OracleArgs {
    instance: PathBuf,
    /// Largest k to enumerate.
    #[arg(long, default_value_t = oracle::DEFAULT_LIMIT)]
    limit: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Satisfiable,
    Unsatisfiable,
    DsOnly,
    AtomicOnly,
}

impl From<ModeArg> for GenMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Satisfiable => GenMode::Satisfiable,
            ModeArg::Unsatisfiable => GenMode::Unsatisfiable,
            ModeArg::DsOnly => GenMode::DsOnly,
            ModeArg::AtomicOnly => GenMode::AtomicOnly,
        }
    }
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
struct GenArgs {
    #[command(subcommand)]
    suite: Option<GenCommand>,
    /// Two-sided cables.
    #[arg(long, default_value_t = 3)]
    b: usize,
    /// One-sided cables.
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Satisfiable)]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    p_atomic: Option<f64>,
    #[arg(long)]
    p_soft: Option<f64>,
    #[arg(long)]
    p_disjunctive: Option<f64>,
    #[arg(long)]
    ds_count: Option<usize>,
    #[arg(long, value_enum, default_value_t = InstanceFormat::Dat)]
    format: InstanceFormat,
    /// Write to this file instead of standard output.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Write a benchmark tree: small instances for oracle checks and
    /// mid-sized ones for anytime runs.
    Suite(SuiteArgs),
}

#[derive(Args, Debug)]
struct SuiteArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    small: usize,
    #[arg(long, default_value_t = 50)]
    anytime: usize,
    #[arg(long, value_enum, default_value_t = InstanceFormat::Dat)]
    format: InstanceFormat,
}

#[derive(Args, Debug)]
struct ConvertArgs {
    instance: PathBuf,
    #[arg(long, value_enum)]
    to: InstanceFormat,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long)]
    dir: PathBuf,
    #[arg(long, value_enum, default_value_t = Engine::Bb)]
    engine: Engine,
    #[command(flatten)]
    limits: LimitArgs,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    no_timestamps: bool,
}

#[derive(Args, Debug)]
struct StatsArgs {
    /// Instance files or directories.
    #[arg(required = true)]
    paths: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    /// Edge list, one `v w` pair per line.
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = InstanceFormat::Dat, conflicts_with = "extract")]
    to: InstanceFormat,
    /// Decode this solution of the encoded instance into kept edges.
    #[arg(long)]
    extract: Option<PathBuf>,
}

/// A failure that ends the command with exit code 4.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn warn(&mut self, path: &Path, warnings: &[LoadWarning]) {
        for w in warnings {
            let _ = writeln!(self.err, "warning: {}: {w}", path.display());
        }
    }

    fn load(&mut self, path: &Path) -> Result<Instance, Failure> {
        let (inst, warnings) = read_instance(path)?;
        self.warn(path, &warnings);
        Ok(inst)
    }

    fn emit(&mut self, text: &str, dest: Option<&Path>) -> Result<(), Failure> {
        match dest {
            Some(path) => fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display()))),
            None => self.out.write_all(text.as_bytes()).map_err(Failure::from),
        }
    }

    fn json<T: Serialize>(&mut self, value: &T) -> Result<(), Failure> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.emit(&text, None)
    }
}

/// Runs the command line; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            } else {
                let _ = write!(err, "{}", e.render());
                EXIT_ERROR
            };
        }
    };
    let mut ctx = Ctx { out, err };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(&mut ctx, a),
        Command::Validate(a) => cmd_validate(&mut ctx, a),
        Command::Oracle(a) => cmd_oracle(&mut ctx, a),
        Command::Gen(a) => cmd_gen(&mut ctx, a),
        Command::Convert(a) => cmd_convert(&mut ctx, a),
        Command::Bench(a) => cmd_bench(&mut ctx, a),
        Command::Stats(a) => cmd_stats(&mut ctx, a),
        Command::ReduceMas(a) => cmd_reduce(&mut ctx, a),
    };
    let _ = ctx.out.flush();
    match result {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

#[derive(Serialize)]
struct CostsJson {
    #[serde(rename = "S")]
    s: u64,
    #[serde(rename = "M")]
    m: u64,
    #[serde(rename = "L")]
    l: u64,
    #[serde(rename = "N")]
    n: u64,
    objective: u64,
}

impl From<&ctw_core::CostBreakdown> for CostsJson {
    fn from(c: &ctw_core::CostBreakdown) -> Self {
        CostsJson {
            s: c.s,
            m: c.m,
            l: c.l,
            n: c.n,
            objective: c.objective,
        }
    }
}

#[derive(Serialize)]
struct IncumbentJson {
    nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    time_ms: Option<u64>,
    objective: u64,
}

#[derive(Serialize)]
struct StatsJson {
    nodes_expanded: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    time_ms: Option<u64>,
    proven_lower_bound: Option<u64>,
    incumbents: Vec<IncumbentJson>,
}

#[derive(Serialize)]
struct SolveJson {
    instance: String,
    engine: &'static str,
    seed: u64,
    k: usize,
    b: usize,
    state: &'static str,
    objective: Option<u64>,
    costs: Option<CostsJson>,
    cfp: Option<Vec<usize>>,
    pfc: Option<Vec<usize>>,
    flags: Vec<&'static str>,
    stats: StatsJson,
}

struct ProgressLog<'a> {
    err: &'a mut dyn Write,
    timestamps: bool,
}

impl Observer for ProgressLog<'_> {
    fn incumbent(&mut self, e: &IncumbentEvent, _tour: &[ctw_core::JobId]) {
        let _ = if self.timestamps {
            writeln!(self.err, "incumbent {} after {} nodes, {} ms", e.objective, e.nodes, e.time_ms)
        } else {
            writeln!(self.err, "incumbent {} after {} nodes", e.objective, e.nodes)
        };
    }

    fn progress(&mut self, nodes: u64, best: Option<u64>) {
        let best = best.map_or_else(|| "none".to_string(), |b| b.to_string());
        let _ = writeln!(self.err, "{nodes} nodes, best {best}");
    }
}

fn solve_json(
    label: String,
    engine: Engine,
    cfg: &SolverConfig,
    inst: &Instance,
    r: &SolveResult,
    timestamps: bool,
) -> SolveJson {
    let row = row_from_result(&label, inst, r);
    let time = |t: u64| timestamps.then_some(t);
    SolveJson {
        instance: label,
        engine: engine.as_str(),
        seed: cfg.seed,
        k: inst.k(),
        b: inst.b(),
        state: r.state.as_str(),
        objective: row.costs.map(|c| c.objective),
        costs: row.costs.as_ref().map(CostsJson::from),
        cfp: r.best.as_ref().map(|(p, _)| p.tour()),
        pfc: r.best.as_ref().map(|(p, _)| p.pfc().to_vec()),
        flags: row.flags.iter().map(|f| f.as_str()).collect(),
        stats: StatsJson {
            nodes_expanded: r.stats.nodes_expanded,
            time_ms: time(r.stats.time_ms),
            proven_lower_bound: r.stats.proven_lower_bound,
            incumbents: r
                .stats
                .incumbents
                .iter()
                .map(|e| IncumbentJson {
                    nodes: e.nodes,
                    time_ms: time(e.time_ms),
                    objective: e.objective,
                })
                .collect(),
        },
    }
}

fn label(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn cmd_solve(ctx: &mut Ctx<'_>, a: SolveArgs) -> CmdResult {
    let inst = ctx.load(&a.instance)?;
    let mut cfg = a.limits.config();
    cfg.log_every_nodes = a.log_every;
    let timestamps = !a.no_timestamps;
    let r = {
        let mut log = ProgressLog {
            err: &mut *ctx.err,
            timestamps,
        };
        run_engine(&inst, a.engine, &cfg, &mut log)?
    };
    let id = label(&a.instance);
    match a.output {
        Output::Json => ctx.json(&solve_json(id.clone(), a.engine, &cfg, &inst, &r, timestamps))?,
        Output::Csv => {
            let row = row_from_result(&id, &inst, &r);
            ctx.emit(&emit_report_csv(&[row], timestamps), None)?;
        }
    }
    if let (Some(path), Some((perm, costs))) = (&a.solution_out, &r.best) {
        let mut sol = SolutionFile::from_permutation(perm, Some(costs));
        sol.instance_id = Some(id);
        ctx.emit(&sol.emit(), Some(path))?;
    }
    Ok(exit_code(r.state))
}

#[derive(Serialize)]
struct ValidateJson {
    instance: String,
    valid: bool,
    violations: Vec<String>,
    costs: Option<CostsJson>,
    claim_mismatches: Vec<&'static str>,
    flags: Vec<&'static str>,
}

fn cmd_validate(ctx: &mut Ctx<'_>, a: ValidateArgs) -> CmdResult {
    let inst = ctx.load(&a.instance)?;
    let text = fs::read_to_string(&a.solution).map_err(|e| Failure(format!("{}: {e}", a.solution.display())))?;
    let sol: SolutionFile = text
        .parse()
        .map_err(|e| Failure(format!("{}: {e}", a.solution.display())))?;
    let id = sol.instance_id.clone().unwrap_or_else(|| label(&a.instance));
    let row = validate_external(&id, &inst, &sol);
    let valid = row.state != RowState::Undefined;
    match a.output {
        Output::Json => {
            let violations = match sol.to_permutation() {
                Ok(perm) => match validate(&inst, &perm) {
                    Ok(v) => v.iter().map(ToString::to_string).collect(),
                    Err(e) => vec![e.to_string()],
                },
                Err(e) => vec![e.to_string()],
            };
            let claim_mismatches = row.costs.map_or_else(Vec::new, |c| sol.claimed.mismatches(&c));
            ctx.json(&ValidateJson {
                instance: id,
                valid,
                violations,
                costs: row.costs.as_ref().map(CostsJson::from),
                claim_mismatches,
                flags: row.flags.iter().map(|f| f.as_str()).collect(),
            })?;
        }
        Output::Csv => ctx.emit(&emit_report_csv(&[row], false), None)?,
    }
    Ok(if valid { EXIT_OK } else { EXIT_ERROR })
}

#[derive(Serialize)]
struct OracleJson {
    instance: String,
    enumerated: u64,
    valid_count: u64,
    optimal_objective: Option<u64>,
    optimal_solutions: Vec<Vec<usize>>,
}

fn cmd_oracle(ctx: &mut Ctx<'_>, a: OracleArgs) -> CmdResult {
    let inst = ctx.load(&a.instance)?;
    let r = oracle::enumerate(&inst, a.limit)?;
    ctx.json(&OracleJson {
        instance: label(&a.instance),
        enumerated: r.enumerated,
        valid_count: r.valid_count,
        optimal_objective: r.optimal_objective,
        optimal_solutions: r.optimal_solutions.iter().map(|p| p.tour()).collect(),
    })?;
    Ok(if r.valid_count > 0 { EXIT_OK } else { EXIT_UNSATISFIABLE })
}

fn cmd_gen(ctx: &mut Ctx<'_>, a: GenArgs) -> CmdResult {
    if let Some(GenCommand::Suite(s)) = a.suite {
        let suite = generate_suite(s.seed, s.small, s.anytime)?;
        for (id, inst) in suite.small.iter().chain(&suite.anytime) {
            let path = s.out.join(format!("{id}.{}", s.format.extension()));
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent).map_err(|e| Failure(format!("{}: {e}", parent.display())))?;
            }
            ctx.emit(&emit_instance(inst, s.format), Some(&path))?;
        }
        let _ = writeln!(
            ctx.err,
            "wrote {} small and {} anytime instances to {}",
            suite.small.len(),
            suite.anytime.len(),
            s.out.display()
        );
        return Ok(EXIT_OK);
    }
    let mut p = GenParams::new(a.b, a.n, a.mode.into(), a.seed);
    if let Some(v) = a.p_atomic {
        p.p_atomic = v;
    }
    if let Some(v) = a.p_soft {
        p.p_soft = v;
    }
    if let Some(v) = a.p_disjunctive {
        p.p_disjunctive = v;
    }
    if let Some(v) = a.ds_count {
        p.ds_count = v;
    }
    let inst = generate(&p)?;
    ctx.emit(&emit_instance(&inst, a.format), a.out.as_deref())?;
    Ok(EXIT_OK)
}

fn cmd_convert(ctx: &mut Ctx<'_>, a: ConvertArgs) -> CmdResult {
    let inst = ctx.load(&a.instance)?;
    ctx.emit(&emit_instance(&inst, a.to), a.out.as_deref())?;
    Ok(EXIT_OK)
}

fn cmd_bench(ctx: &mut Ctx<'_>, a: BenchArgs) -> CmdResult {
    let cfg = a.limits.config();
    let jobs = a.jobs.map_or_else(bench::default_jobs, |j| j as usize);
    let rows = bench::run_suite(&a.dir, &cfg, a.engine, jobs)
        .map_err(|e| Failure(format!("{}: {e}", a.dir.display())))?;
    for row in rows.iter().filter(|r| r.state == RowState::Undefined) {
        let _ = writeln!(
            ctx.err,
            "warning: {}: {}",
            row.id,
            row.diagnostic.as_deref().unwrap_or("undefined")
        );
    }
    ctx.emit(&emit_report_csv(&rows, !a.no_timestamps), a.out.as_deref())?;
    Ok(EXIT_OK)
}

fn cmd_stats(ctx: &mut Ctx<'_>, a: StatsArgs) -> CmdResult {
    let mut rows = Vec::new();
    for path in &a.paths {
        if path.is_dir() {
            rows.extend(bench::collect_metrics(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?);
        } else {
            let m = read_instance(path)
                .map(|(inst, _)| ctw_core::metrics::metrics(&inst))
                .map_err(|e| e.to_string());
            rows.push((label(path), m));
        }
    }
    ctx.emit(&emit_metrics_csv(&rows), a.out.as_deref())?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ExtractJson {
    vertices: usize,
    edges: usize,
    kept_count: usize,
    kept: Vec<(usize, usize)>,
    dropped: Vec<(usize, usize)>,
}

fn cmd_reduce(ctx: &mut Ctx<'_>, a: ReduceArgs) -> CmdResult {
    let text = fs::read_to_string(&a.graph).map_err(|e| Failure(format!("{}: {e}", a.graph.display())))?;
    let g = parse_edgelist(&text).map_err(|e| Failure(format!("{}: {e}", a.graph.display())))?;
    let Some(sol_path) = a.extract else {
        ctx.emit(&emit_instance(&mas_to_ctw(&g), a.to), None)?;
        return Ok(EXIT_OK);
    };
    let text = fs::read_to_string(&sol_path).map_err(|e| Failure(format!("{}: {e}", sol_path.display())))?;
    let sol: SolutionFile = text
        .parse()
        .map_err(|e| Failure(format!("{}: {e}", sol_path.display())))?;
    let perm = sol.to_permutation()?;
    let kept = extract_mas(&g, &perm)?;
    // Sanity check against the encoded instance: every dropped edge is a
    // violated soft constraint.
    let costs = evaluate(&mas_to_ctw(&g), &perm)?;
    debug_assert_eq!(costs.n as usize, g.edge_count() - kept.len());
    let dropped = g.edges().filter(|e| !kept.contains(e)).collect();
    ctx.json(&ExtractJson {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        kept_count: kept.len(),
        kept,
        dropped,
    })?;
    Ok(EXIT_OK)
}
