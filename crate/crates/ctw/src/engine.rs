//! The interchangeable solving back ends.

use std::fmt;
use std::time::Instant;

use ctw_core::cost::evaluate;
use ctw_core::oracle::{self, TooLarge};
use ctw_core::poly::{ds_only_solve, topo_solve, NotApplicable};
use ctw_core::solve::{self, Clock, Observer, SolveStats, WallClock};
use ctw_core::{Instance, Permutation, SolveResult, SolveState, SolverConfig};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Engine {
    /// Anytime branch and bound.
    Bb,
    /// Kahn's algorithm; one-sided cables with hard atomic constraints only.
    Topo,
    /// Pairwise interleaving; direct successor constraints only.
    DsOnly,
    /// Exhaustive enumeration of small instances.
    Oracle,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Bb => "bb",
            Engine::Topo => "topo",
            Engine::DsOnly => "ds-only",
            Engine::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("engine does not apply: {0}")]
    NotApplicable(#[from] NotApplicable),
    #[error(transparent)]
    TooLarge(#[from] TooLarge),
}

fn exact(inst: &Instance, perm: Option<Permutation>, clock: &WallClock) -> SolveResult {
    let best = perm.map(|p| {
        let costs = evaluate(inst, &p).expect("objective fits in 64 bits");
        (p, costs)
    });
    SolveResult {
        state: if best.is_some() {
            SolveState::Optimal
        } else {
            SolveState::Unsatisfiable
        },
        stats: SolveStats {
            time_ms: clock.elapsed_ms(),
            proven_lower_bound: best.as_ref().map(|(_, c)| c.objective),
            ..SolveStats::default()
        },
        best,
    }
}

pub fn run_engine(
    inst: &Instance,
    engine: Engine,
    cfg: &SolverConfig,
    observer: &mut dyn Observer,
) -> Result<SolveResult, EngineError> {
    let clock = WallClock::start();
    Ok(match engine {
        Engine::Bb => solve::solve_with(inst, cfg, &clock, observer),
        Engine::Topo => exact(inst, topo_solve(inst)?.ok(), &clock),
        Engine::DsOnly => exact(inst, Some(ds_only_solve(inst)?), &clock),
        Engine::Oracle => {
            let r = oracle::enumerate(inst, oracle::DEFAULT_LIMIT)?;
            let mut res = exact(inst, r.optimal_solutions.into_iter().next(), &clock);
            res.stats.nodes_expanded = r.enumerated;
            res
        }
    })
}

/// Milliseconds elapsed since `start`, saturating.
pub(crate) fn millis_since(start: Instant) -> u64 {
    u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ctw_core::fixtures::worked_example;

    #[test]
    fn engines_agree_where_they_apply() {
        let cfg = SolverConfig::default();
        let inst = worked_example();
        let bb = run_engine(&inst, Engine::Bb, &cfg, &mut ()).unwrap();
        let or = run_engine(&inst, Engine::Oracle, &cfg, &mut ()).unwrap();
        assert_eq!(bb.objective(), Some(160));
        assert_eq!(or.objective(), Some(160));
        assert_eq!(or.stats.nodes_expanded, 120);
        assert!(matches!(
            run_engine(&inst, Engine::Topo, &cfg, &mut ()),
            Err(EngineError::NotApplicable(_))
        ));

        let dag = Instance::builder(3, 0).atomic(3, 1).build().unwrap();
        let topo = run_engine(&dag, Engine::Topo, &cfg, &mut ()).unwrap();
        assert_eq!(topo.state, SolveState::Optimal);
        assert_eq!(topo.best.unwrap().0.tour(), [2, 3, 1]);

        let cyc = Instance::builder(2, 0).atomic(1, 2).atomic(2, 1).build().unwrap();
        let topo = run_engine(&cyc, Engine::Topo, &cfg, &mut ()).unwrap();
        assert_eq!(topo.state, SolveState::Unsatisfiable);

        let ds = Instance::builder(5, 2).direct_successor(4).build().unwrap();
        let r = run_engine(&ds, Engine::DsOnly, &cfg, &mut ()).unwrap();
        assert_eq!(r.best.unwrap().0.tour(), [1, 3, 2, 4, 5]);
    }
}
