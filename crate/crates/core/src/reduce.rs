//! Maximum acyclic subgraph as a CTW instance.
//!
//! Vertices become one-sided jobs with the same labels and every edge
//! `v -> w` becomes a soft constraint `v < w`. An optimal wiring sequence
//! violates as few soft constraints as possible, so the edges it keeps
//! form a maximum acyclic subgraph.

use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{DiGraph, GraphError};
use crate::model::{Instance, Permutation};
use crate::validate::DimensionMismatch;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Dimension(#[from] DimensionMismatch),
}

pub fn mas_to_ctw(g: &DiGraph) -> Instance {
    let mut builder = Instance::builder(g.vertex_count(), 0);
    for (v, w) in g.edges() {
        builder.push_soft(v, w);
    }
    builder
        .build()
        .expect("a loop-free graph yields a valid instance")
}

/// The edges whose soft constraint `perm` satisfies.
pub fn extract_mas(g: &DiGraph, perm: &Permutation) -> Result<Vec<(usize, usize)>, ReduceError> {
    if perm.len() != g.vertex_count() {
        return Err(DimensionMismatch {
            expected: g.vertex_count(),
            actual: perm.len(),
        }
        .into());
    }
    Ok(g.edges()
        .filter(|&(v, w)| perm.pfc()[v - 1] < perm.pfc()[w - 1])
        .collect())
}
