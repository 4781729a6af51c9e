//! Directed graphs over jobs `1..=n`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::model::{Instance, JobId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} is outside 1..={count}")]
    VertexOutOfRange { vertex: usize, count: usize },
}

/// A simple digraph: no self-loops, parallel edges collapsed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiGraph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl DiGraph {
    pub fn new(vertex_count: usize) -> Self {
        DiGraph {
            vertex_count,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = DiGraph::new(vertex_count);
        for (v, w) in edges {
            g.add_edge(v, w)?;
        }
        Ok(g)
    }

    /// Returns `false` if the edge was already present.
    pub fn add_edge(&mut self, from: usize, to: usize) -> Result<bool, GraphError> {
        for v in [from, to] {
            if v == 0 || v > self.vertex_count {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    count: self.vertex_count,
                });
            }
        }
        if from == to {
            return Err(GraphError::SelfLoop(from));
        }
        Ok(self.edges.insert((from, to)))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn contains_edge(&self, from: usize, to: usize) -> bool {
        self.edges.contains(&(from, to))
    }

    /// Out-neighbours per vertex (index 0 unused), ascending.
    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count + 1];
        for &(v, w) in &self.edges {
            adj[v].push(w);
        }
        adj
    }

    /// Some directed cycle, if the graph has one.
    ///
    /// Iterative DFS from each vertex in ascending order. The cycle is
    /// returned in edge order and rotated to start at its smallest vertex.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        const WHITE: u8 = 0;
        const GRAY: u8 = 1;
        const BLACK: u8 = 2;
        let adj = self.successors();
        let mut color = vec![WHITE; self.vertex_count + 1];
        let mut parent = vec![0usize; self.vertex_count + 1];
        // (vertex, next neighbour index)
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for root in 1..=self.vertex_count {
            if color[root] != WHITE {
                continue;
            }
            color[root] = GRAY;
            stack.push((root, 0));
            while let Some(top) = stack.last_mut() {
                let (v, next) = *top;
                if next < adj[v].len() {
                    top.1 += 1;
                    let w = adj[v][next];
                    match color[w] {
                        WHITE => {
                            color[w] = GRAY;
                            parent[w] = v;
                            stack.push((w, 0));
                        }
                        GRAY => {
                            let mut cycle = vec![v];
                            let mut u = v;
                            while u != w {
                                u = parent[u];
                                cycle.push(u);
                            }
                            cycle.reverse();
                            return Some(rotate_to_min(cycle));
                        }
                        _ => {}
                    }
                } else {
                    color[v] = BLACK;
                    stack.pop();
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// True if `cycle` is a directed cycle of this graph.
    pub fn is_cycle(&self, cycle: &[usize]) -> bool {
        if cycle.len() < 2 {
            return false;
        }
        let distinct: BTreeSet<_> = cycle.iter().collect();
        distinct.len() == cycle.len()
            && cycle
                .iter()
                .zip(cycle.iter().cycle().skip(1))
                .all(|(&v, &w)| self.contains_edge(v, w))
    }
}

pub(crate) fn rotate_to_min(mut cycle: Vec<usize>) -> Vec<usize> {
    if let Some((i, _)) = cycle.iter().enumerate().min_by_key(|&(_, v)| *v) {
        cycle.rotate_left(i);
    }
    cycle
}

/// One vertex per job, one edge per hard atomic constraint.
pub fn hard_atomic_graph(inst: &Instance) -> DiGraph {
    DiGraph::from_edges(
        inst.k(),
        inst.atomic()
            .iter()
            .map(|c| (c.before.get(), c.after.get())),
    )
    .expect("instance constraints are in range and loop-free")
}

/// Cycle as job ids.
pub fn cycle_jobs(cycle: &[usize]) -> Vec<JobId> {
    cycle.iter().map(|&v| JobId::new(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::worked_example;

    #[test]
    fn atomic_graph_examples() {
        let path = Instance::builder(3, 0)
            .atomic(1, 2)
            .atomic(2, 3)
            .build()
            .unwrap();
        let g = hard_atomic_graph(&path);
        assert_eq!(g.edges().collect::<Vec<_>>(), [(1, 2), (2, 3)]);
        assert!(g.is_acyclic());

        let g = hard_atomic_graph(&Instance::builder(4, 0).build().unwrap());
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 0));

        let g = hard_atomic_graph(&worked_example());
        assert_eq!(g.edges().collect::<Vec<_>>(), [(3, 4), (4, 1), (5, 4)]);
    }

    #[test]
    fn finds_cycles() {
        let g = DiGraph::from_edges(3, [(1, 2), (2, 3), (3, 1)]).unwrap();
        assert_eq!(g.find_cycle(), Some(vec![1, 2, 3]));
        let g = DiGraph::from_edges(4, [(4, 3), (3, 4), (1, 2)]).unwrap();
        let c = g.find_cycle().unwrap();
        assert_eq!(c, vec![3, 4]);
        assert!(g.is_cycle(&c));
        assert!(!g.is_cycle(&[1, 2]));
    }

    #[test]
    fn rejects_self_loops() {
        assert_eq!(
            DiGraph::from_edges(2, [(2, 2)]),
            Err(GraphError::SelfLoop(2))
        );
        assert!(DiGraph::new(2).add_edge(1, 3).is_err());
    }
}
