//! Instance classes solvable in polynomial time, and the cycle precheck.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{cycle_jobs, hard_atomic_graph, rotate_to_min};
use crate::model::{Instance, JobId, Permutation};

/// A directed cycle of hard atomic constraints: `cycle[0] < cycle[1] <
/// ... < cycle[0]`, which no permutation can satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnsatCertificate {
    pub cycle: Vec<JobId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum NotApplicable {
    #[error("instance has {0} two-sided cables; the topological solver needs b = 0")]
    HasPairs(usize),
    #[error("instance has soft atomic constraints")]
    HasSoft,
    #[error("instance has disjunctive constraints")]
    HasDisjunctive,
    #[error("instance has direct successor constraints")]
    HasDirectSuccessors,
    #[error("instance has hard atomic constraints")]
    HasAtomic,
}

/// Kahn's algorithm on the hard atomic graph, smallest ready job first.
/// The ready set is a 64-ary bitset tree, so each step costs `O(log_64 k)`.
///
/// Only for instances with one-sided cables and hard atomic constraints.
pub fn topo_solve(inst: &Instance) -> Result<Result<Permutation, UnsatCertificate>, NotApplicable> {
    if inst.b() != 0 {
        return Err(NotApplicable::HasPairs(inst.b()));
    }
    if !inst.soft_atomic().is_empty() {
        return Err(NotApplicable::HasSoft);
    }
    if !inst.disjunctive().is_empty() {
        return Err(NotApplicable::HasDisjunctive);
    }
    // b = 0 already rules out direct successors.
    Ok(kahn(inst))
}

fn kahn(inst: &Instance) -> Result<Permutation, UnsatCertificate> {
    let k = inst.k();
    let edges = || inst.atomic().iter().map(|c| (c.before.index(), c.after.index()));
    let succ = Csr::new(k, edges());
    let mut indeg = vec![0u32; k];
    for &w in &succ.targets {
        indeg[w as usize] += 1;
    }
    let mut ready = MinSet::new(k);
    for v in (0..k).filter(|&v| indeg[v] == 0) {
        ready.insert(v);
    }
    let mut order = Vec::with_capacity(k);
    while let Some(v) = ready.pop_min() {
        order.push(v + 1);
        for &w in succ.neighbours(v) {
            indeg[w as usize] -= 1;
            if indeg[w as usize] == 0 {
                ready.insert(w as usize);
            }
        }
    }
    if order.len() == k {
        return Ok(Permutation::from_cfp(&order).expect("topological order is a permutation"));
    }

    // Every unsorted vertex still has an unsorted predecessor; walking
    // predecessors from any of them must revisit a vertex.
    let pred = Csr::new(k, edges().map(|(v, w)| (w, v)));
    let start = (0..k).find(|&v| indeg[v] > 0).expect("stalled vertex exists");
    let mut seen_at = vec![usize::MAX; k];
    let mut walk = Vec::new();
    let mut v = start;
    while seen_at[v] == usize::MAX {
        seen_at[v] = walk.len();
        walk.push(v);
        v = *pred
            .neighbours(v)
            .iter()
            .find(|&&u| indeg[u as usize] > 0)
            .expect("stalled vertex has a stalled predecessor") as usize;
    }
    let mut cycle: Vec<usize> = walk[seen_at[v]..].iter().map(|&u| u + 1).collect();
    cycle.reverse();
    Err(UnsatCertificate {
        cycle: cycle_jobs(&rotate_to_min(cycle)),
    })
}

/// Pairs back to back, then the one-sided jobs: `1, 1+b, 2, 2+b, ..., b,
/// 2b, 2b+1, ..., k`. Costs nothing and satisfies every direct successor
/// constraint.
pub fn ds_only_solve(inst: &Instance) -> Result<Permutation, NotApplicable> {
    if !inst.atomic().is_empty() {
        return Err(NotApplicable::HasAtomic);
    }
    if !inst.soft_atomic().is_empty() {
        return Err(NotApplicable::HasSoft);
    }
    if !inst.disjunctive().is_empty() {
        return Err(NotApplicable::HasDisjunctive);
    }
    let b = inst.b();
    let tour: Vec<usize> = (1..=b)
        .flat_map(|i| [i, i + b])
        .chain(2 * b + 1..=inst.k())
        .collect();
    Ok(Permutation::from_cfp(&tour).expect("interleaving is a permutation"))
}

/// A cycle among hard atomic constraints, if any. `None` proves nothing:
/// disjunctions and direct successors can still make the instance
/// unsatisfiable.
pub fn unsat_precheck(inst: &Instance) -> Option<UnsatCertificate> {
    hard_atomic_graph(inst).find_cycle().map(|c| UnsatCertificate {
        cycle: cycle_jobs(&c),
    })
}

/// Compressed adjacency lists over zero-based vertices; `u32` keeps large
/// instances in cache.
struct Csr {
    start: Vec<u32>,
    targets: Vec<u32>,
}

impl Csr {
    fn new(n: usize, edges: impl Iterator<Item = (usize, usize)> + Clone) -> Self {
        let mut start = vec![0u32; n + 1];
        for (v, _) in edges.clone() {
            start[v + 1] += 1;
        }
        for v in 0..n {
            start[v + 1] += start[v];
        }
        let mut fill = start.clone();
        let mut targets = vec![0u32; start[n] as usize];
        for (v, w) in edges {
            targets[fill[v] as usize] = w as u32;
            fill[v] += 1;
        }
        Csr { start, targets }
    }

    fn neighbours(&self, v: usize) -> &[u32] {
        &self.targets[self.start[v] as usize..self.start[v + 1] as usize]
    }
}

/// Set of `0..n` with `O(log_64 n)` insert and remove-minimum. Level 0 holds
/// the members; each higher level marks the non-empty words below it.
struct MinSet {
    levels: Vec<Vec<u64>>,
}

impl MinSet {
    fn new(n: usize) -> Self {
        let mut levels = Vec::new();
        let mut len = n.max(1);
        loop {
            let words = len.div_ceil(64);
            levels.push(vec![0u64; words]);
            if words == 1 {
                return MinSet { levels };
            }
            len = words;
        }
    }

    fn insert(&mut self, mut i: usize) {
        for level in &mut self.levels {
            let was_empty = level[i / 64] == 0;
            level[i / 64] |= 1 << (i % 64);
            if !was_empty {
                return;
            }
            i /= 64;
        }
    }

    fn pop_min(&mut self) -> Option<usize> {
        let top = self.levels.len() - 1;
        if self.levels[top][0] == 0 {
            return None;
        }
        let mut i = 0;
        for level in self.levels.iter().rev() {
            i = i * 64 + level[i].trailing_zeros() as usize;
        }
        let mut j = i;
        for level in &mut self.levels {
            level[j / 64] &= !(1 << (j % 64));
            if level[j / 64] != 0 {
                break;
            }
            j /= 64;
        }
        Some(i)
    }
}
