//! Instance size and difficulty indicators.

use alloc::vec;

use crate::model::Instance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceMetrics {
    pub k: usize,
    pub b: usize,
    pub n: usize,
    pub atomic: usize,
    pub soft_atomic: usize,
    pub disjunctive: usize,
    pub direct_successors: usize,
    /// `b + |A| + |A_s| + |D| + |DS|`.
    pub sum_of_constraints: usize,
    /// Constrainedness summed over all jobs, in half units.
    pub total_constrainedness_halves: u64,
    /// Largest per-job constrainedness, in half units.
    pub max_constrainedness_halves: u64,
}

impl InstanceMetrics {
    /// Mean over all `k` jobs; `0` for the empty instance.
    pub fn avg_constrainedness(&self) -> f64 {
        if self.k == 0 {
            0.0
        } else {
            self.total_constrainedness_halves as f64 / (2 * self.k) as f64
        }
    }

    pub fn max_constrainedness(&self) -> f64 {
        self.max_constrainedness_halves as f64 / 2.0
    }
}

/// Per job, the count of constraints with the job on a left-hand side:
/// an atomic constraint counts 1, each disjunct of a disjunction 1/2.
/// Soft constraints and direct successors do not count.
pub fn metrics(inst: &Instance) -> InstanceMetrics {
    let mut halves = vec![0u64; inst.k()];
    for c in inst.atomic() {
        halves[c.before.index()] += 2;
    }
    for d in inst.disjunctive() {
        halves[d.c1before.index()] += 1;
        halves[d.c2before.index()] += 1;
    }
    InstanceMetrics {
        k: inst.k(),
        b: inst.b(),
        n: inst.n(),
        atomic: inst.atomic().len(),
        soft_atomic: inst.soft_atomic().len(),
        disjunctive: inst.disjunctive().len(),
        direct_successors: inst.direct_successors().len(),
        sum_of_constraints: inst.b()
            + inst.atomic().len()
            + inst.soft_atomic().len()
            + inst.disjunctive().len()
            + inst.direct_successors().len(),
        total_constrainedness_halves: halves.iter().sum(),
        max_constrainedness_halves: halves.iter().copied().max().unwrap_or(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::worked_example;

    #[test]
    fn sum_of_constraints() {
        let inst = worked_example().to_builder().soft(1, 2).build().unwrap();
        assert_eq!(metrics(&inst).sum_of_constraints, 8);
    }

    #[test]
    fn atomic_weight_one() {
        let inst = Instance::builder(3, 0).atomic(1, 2).atomic(1, 3).build().unwrap();
        let m = metrics(&inst);
        assert_eq!(m.max_constrainedness(), 2.0);
        assert!((m.avg_constrainedness() - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn disjunct_weight_half() {
        let inst = Instance::builder(4, 1)
            .atomic(3, 4)
            .disjunctive(3, 1, 4, 2)
            .build()
            .unwrap();
        assert_eq!(metrics(&inst).max_constrainedness(), 1.5);
    }

    #[test]
    fn empty_instance() {
        let m = metrics(&Instance::empty());
        assert_eq!((m.avg_constrainedness(), m.max_constrainedness()), (0.0, 0.0));
        assert_eq!(m.sum_of_constraints, 0);
    }
}
