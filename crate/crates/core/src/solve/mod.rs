//! Anytime exact solver.
//!
//! Depth-first branch and bound over prefixes of the permutation. Each
//! node carries the cost its prefix has already committed to (see
//! [`SearchNode::committed`]); a node is pruned once that bound reaches the
//! incumbent. A greedy dive along the branching order supplies the first
//! incumbent.

mod node;

use alloc::vec::Vec;
use core::num::NonZeroU64;

pub use node::{Committed, InconsistentPrefix, SearchContext, SearchNode};

use crate::cost::{evaluate, CostBreakdown};
use crate::model::{Instance, JobId, Permutation};
use crate::poly::unsat_precheck;

/// Limits are checked every this many nodes.
const CHECK_INTERVAL: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub time_limit_ms: NonZeroU64,
    /// Recorded with results; the search itself is deterministic.
    pub seed: u64,
    pub node_limit: Option<u64>,
    pub heuristic_dive: bool,
    pub log_every_nodes: Option<u64>,
}

pub const DEFAULT_TIME_LIMIT_MS: u64 = 300_000;

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            time_limit_ms: NonZeroU64::new(DEFAULT_TIME_LIMIT_MS).unwrap(),
            seed: 0,
            node_limit: None,
            heuristic_dive: true,
            log_every_nodes: None,
        }
    }
}

impl SolverConfig {
    /// Panics if `ms` is zero.
    pub fn with_time_limit_ms(mut self, ms: u64) -> Self {
        self.time_limit_ms = NonZeroU64::new(ms).expect("time limit must be positive");
        self
    }

    pub fn with_node_limit(mut self, nodes: u64) -> Self {
        self.node_limit = Some(nodes);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SolveState {
    Optimal,
    Suboptimal,
    Unsatisfiable,
    Unsolved,
}

impl SolveState {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveState::Optimal => "optimal",
            SolveState::Suboptimal => "suboptimal",
            SolveState::Unsatisfiable => "unsatisfiable",
            SolveState::Unsolved => "unsolved",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IncumbentEvent {
    pub nodes: u64,
    pub time_ms: u64,
    pub objective: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes_expanded: u64,
    pub time_ms: u64,
    /// No valid permutation costs less. Equals the objective when optimal.
    pub proven_lower_bound: Option<u64>,
    /// Every improvement of the incumbent, in order.
    pub incumbents: Vec<IncumbentEvent>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub state: SolveState,
    pub best: Option<(Permutation, CostBreakdown)>,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn objective(&self) -> Option<u64> {
        self.best.as_ref().map(|(_, c)| c.objective)
    }
}

/// Milliseconds since the solve started.
pub trait Clock {
    fn elapsed_ms(&self) -> u64;
}

/// A clock that never advances; only node limits stop the search.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn elapsed_ms(&self) -> u64 {
        0
    }
}

#[cfg(feature = "std")]
#[derive(Clone, Copy, Debug)]
pub struct WallClock(std::time::Instant);

#[cfg(feature = "std")]
impl WallClock {
    pub fn start() -> Self {
        WallClock(std::time::Instant::now())
    }
}

#[cfg(feature = "std")]
impl Clock for WallClock {
    fn elapsed_ms(&self) -> u64 {
        self.0.elapsed().as_millis() as u64
    }
}

/// Search progress callbacks.
pub trait Observer {
    /// A strictly better complete permutation, as a tour.
    fn incumbent(&mut self, _event: &IncumbentEvent, _tour: &[JobId]) {}
    /// Called every `log_every_nodes` nodes.
    fn progress(&mut self, _nodes: u64, _best: Option<u64>) {}
}

impl Observer for () {}

/// Solves with the wall clock and no observer.
#[cfg(feature = "std")]
pub fn solve(inst: &Instance, cfg: &SolverConfig) -> SolveResult {
    solve_with(inst, cfg, &WallClock::start(), &mut ())
}

pub fn solve_with(
    inst: &Instance,
    cfg: &SolverConfig,
    clock: &dyn Clock,
    observer: &mut dyn Observer,
) -> SolveResult {
    if unsat_precheck(inst).is_some() {
        return SolveResult {
            state: SolveState::Unsatisfiable,
            best: None,
            stats: SolveStats {
                time_ms: clock.elapsed_ms(),
                ..SolveStats::default()
            },
        };
    }
    let ctx = SearchContext::new(inst);
    let mut search = Search {
        cfg,
        clock,
        observer,
        best: None,
        nodes: 0,
        aborted: false,
        incumbents: Vec::new(),
    };
    if cfg.heuristic_dive {
        search.dive(&ctx);
    }
    if !search.aborted {
        search.branch_and_bound(&ctx);
    }

    let best = search.best.map(|(_, tour)| {
        let tour: Vec<usize> = tour.iter().map(|&j| j as usize + 1).collect();
        let perm = Permutation::from_cfp(&tour).expect("search emits permutations");
        let costs = evaluate(inst, &perm).expect("objective fits in 64 bits");
        (perm, costs)
    });
    let state = match (search.aborted, best.is_some()) {
        (false, true) => SolveState::Optimal,
        (false, false) => SolveState::Unsatisfiable,
        (true, true) => SolveState::Suboptimal,
        (true, false) => SolveState::Unsolved,
    };
    let proven_lower_bound = match state {
        SolveState::Optimal => best.as_ref().map(|(_, c)| c.objective),
        SolveState::Unsatisfiable => None,
        // Bounds grow along a branch, so the root bound is the global one.
        _ => Some(ctx.root().lower_bound()),
    };
    SolveResult {
        state,
        best,
        stats: SolveStats {
            nodes_expanded: search.nodes,
            time_ms: clock.elapsed_ms(),
            proven_lower_bound,
            incumbents: search.incumbents,
        },
    }
}

struct Search<'a> {
    cfg: &'a SolverConfig,
    clock: &'a dyn Clock,
    observer: &'a mut dyn Observer,
    best: Option<(u64, Vec<u32>)>,
    nodes: u64,
    aborted: bool,
    incumbents: Vec<IncumbentEvent>,
}

impl Search<'_> {
    fn best_objective(&self) -> u64 {
        self.best.as_ref().map_or(u64::MAX, |(o, _)| *o)
    }

    /// Counts a node; returns `false` once a limit is reached.
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if let Some(every) = self.cfg.log_every_nodes {
            if every > 0 && self.nodes % every == 0 {
                let best = self.best.as_ref().map(|(o, _)| *o);
                self.observer.progress(self.nodes, best);
            }
        }
        if self.cfg.node_limit.is_some_and(|limit| self.nodes > limit)
            || (self.nodes % CHECK_INTERVAL == 0
                && self.clock.elapsed_ms() >= self.cfg.time_limit_ms.get())
        {
            self.aborted = true;
        }
        !self.aborted
    }

    fn leaf(&mut self, node: &SearchNode<'_>) {
        let objective = node.lower_bound();
        if objective < self.best_objective() {
            let event = IncumbentEvent {
                nodes: self.nodes,
                time_ms: self.clock.elapsed_ms(),
                objective,
            };
            let tour: Vec<JobId> = node.prefix_raw().iter().map(|&j| JobId::from_index(j as usize)).collect();
            self.observer.incumbent(&event, &tour);
            self.incumbents.push(event);
            self.best = Some((objective, node.prefix_raw().to_vec()));
        }
    }

    fn dive(&mut self, ctx: &SearchContext) {
        let mut node = ctx.root();
        loop {
            if !self.tick() {
                return;
            }
            if node.is_complete() {
                self.leaf(&node);
                return;
            }
            match node.candidates_raw().first() {
                Some(&x) => node.push(x),
                None => return,
            }
        }
    }

    fn branch_and_bound(&mut self, ctx: &SearchContext) {
        let mut node = ctx.root();
        if !self.tick() {
            return;
        }
        if node.is_complete() {
            self.leaf(&node);
            return;
        }
        // One frame per depth: the candidate list and the next index.
        let mut stack: Vec<(Vec<u32>, usize)> = alloc::vec![(node.candidates_raw(), 0)];
        while let Some((cands, next)) = stack.last_mut() {
            let Some(&x) = cands.get(*next) else {
                stack.pop();
                if !stack.is_empty() {
                    node.pop();
                }
                continue;
            };
            *next += 1;
            node.push(x);
            if node.lower_bound() >= self.best_objective() {
                node.pop();
                continue;
            }
            if !self.tick() {
                return;
            }
            if node.is_complete() {
                self.leaf(&node);
                node.pop();
                continue;
            }
            let children = node.candidates_raw();
            stack.push((children, 0));
        }
    }
}
