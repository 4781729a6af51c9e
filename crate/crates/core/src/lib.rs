//! Cable tree wiring: instances, validity, the lexicographic cost
//! criteria, polynomial special cases and an anytime branch-and-bound
//! solver.
//!
//! Builds without `std`; enable the `std` feature for the wall clock and
//! `std::error::Error` impls.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod cost;
pub mod fixtures;
pub mod gen;
pub mod graph;
pub mod metrics;
pub mod model;
pub mod oracle;
pub mod poly;
pub mod reduce;
pub mod solve;
pub mod validate;

pub use cost::{evaluate, CostBreakdown, CostError};
pub use model::{
    AtomicConstraint, ConstraintKind, DisjunctiveConstraint, DuplicateWarning, Instance,
    InstanceBuilder, InstanceError, JobId, Permutation, PermutationError,
};
pub use solve::{SolveResult, SolveState, SolverConfig};
pub use validate::{is_valid, validate, Violation};
