//! Exhaustive ground truth for small instances.

use alloc::vec::Vec;

use thiserror::Error;

use crate::cost::evaluate;
use crate::graph::DiGraph;
use crate::model::{Instance, Permutation};
use crate::validate::validate;

/// Default size guard for the factorial enumerations.
pub const DEFAULT_LIMIT: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("refusing to enumerate {size}! orderings (limit {limit})")]
pub struct TooLarge {
    pub size: usize,
    pub limit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub valid_count: u64,
    pub optimal_objective: Option<u64>,
    /// Every optimal permutation, in lexicographic tour order.
    pub optimal_solutions: Vec<Permutation>,
    pub enumerated: u64,
}

/// Visits all `k!` tours in lexicographic order.
pub fn enumerate(inst: &Instance, limit_k: usize) -> Result<OracleResult, TooLarge> {
    let k = inst.k();
    if k > limit_k {
        return Err(TooLarge {
            size: k,
            limit: limit_k,
        });
    }
    let mut result = OracleResult {
        valid_count: 0,
        optimal_objective: None,
        optimal_solutions: Vec::new(),
        enumerated: 0,
    };
    let mut tour: Vec<usize> = (1..=k).collect();
    loop {
        result.enumerated += 1;
        let perm = Permutation::from_cfp(&tour).expect("tour is a permutation");
        if validate(inst, &perm).expect("lengths agree").is_empty() {
            result.valid_count += 1;
            let obj = evaluate(inst, &perm)
                .expect("small instances cannot overflow")
                .objective;
            match result.optimal_objective {
                Some(best) if obj > best => {}
                Some(best) if obj == best => result.optimal_solutions.push(perm),
                _ => {
                    result.optimal_objective = Some(obj);
                    result.optimal_solutions.clear();
                    result.optimal_solutions.push(perm);
                }
            }
        }
        if !next_permutation(&mut tour) {
            break;
        }
    }
    Ok(result)
}

/// Size of a maximum acyclic subgraph, by trying every vertex ordering:
/// the edges pointing forward in an ordering form an acyclic subgraph,
/// and every acyclic subgraph fits some topological ordering.
pub fn brute_mas(g: &DiGraph, limit_v: usize) -> Result<usize, TooLarge> {
    let n = g.vertex_count();
    if n > limit_v {
        return Err(TooLarge {
            size: n,
            limit: limit_v,
        });
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut order: Vec<usize> = (1..=n).collect();
    let mut pos = alloc::vec![0usize; n + 1];
    let mut best = 0;
    loop {
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let forward = edges.iter().filter(|&&(v, w)| pos[v] < pos[w]).count();
        best = best.max(forward);
        if best == edges.len() || !next_permutation(&mut order) {
            break;
        }
    }
    Ok(best)
}

/// Advances to the next lexicographic permutation; `false` after the last.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::worked_example;

    #[test]
    fn worked_example_census() {
        let r = enumerate(&worked_example(), DEFAULT_LIMIT).unwrap();
        assert_eq!(r.enumerated, 120);
        assert_eq!(r.valid_count, 8);
        assert_eq!(r.optimal_objective, Some(160));
        let tours: Vec<_> = r.optimal_solutions.iter().map(|p| p.tour()).collect();
        assert_eq!(tours, [[5, 3, 2, 4, 1], [5, 3, 4, 2, 1]]);
    }

    #[test]
    fn contradictory_atomic_pair() {
        let inst = Instance::builder(2, 0).atomic(1, 2).atomic(2, 1).build().unwrap();
        let r = enumerate(&inst, DEFAULT_LIMIT).unwrap();
        assert_eq!((r.valid_count, r.optimal_objective), (0, None));
        assert!(r.optimal_solutions.is_empty());
    }

    #[test]
    fn degenerate_sizes() {
        let r = enumerate(&Instance::empty(), DEFAULT_LIMIT).unwrap();
        assert_eq!((r.enumerated, r.valid_count, r.optimal_objective), (1, 1, Some(0)));
        let r = enumerate(&crate::fixtures::singleton(), DEFAULT_LIMIT).unwrap();
        assert_eq!((r.enumerated, r.valid_count, r.optimal_objective), (1, 1, Some(0)));
    }

    #[test]
    fn size_guard() {
        let big = Instance::builder(11, 0).build().unwrap();
        assert_eq!(enumerate(&big, 10), Err(TooLarge { size: 11, limit: 10 }));
        assert!(brute_mas(&DiGraph::new(11), 10).is_err());
    }

    #[test]
    fn mas_examples() {
        let tri = DiGraph::from_edges(3, [(1, 2), (2, 3), (3, 1)]).unwrap();
        assert_eq!(brute_mas(&tri, 10), Ok(2));
        let dag = DiGraph::from_edges(4, [(1, 2), (1, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(brute_mas(&dag, 10), Ok(4));
        let complete =
            DiGraph::from_edges(3, [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)]).unwrap();
        assert_eq!(brute_mas(&complete, 10), Ok(3));
    }

    #[test]
    fn permutation_stepper() {
        let mut v = [1, 2, 3];
        let mut seen = alloc::vec![v];
        while next_permutation(&mut v) {
            seen.push(v);
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[5], [3, 2, 1]);
    }
}
