//! Small reference instances.

use crate::model::Instance;

/// The five-job instance with job pairs `<1,3>`, `<2,4>` and the one-sided
/// job 5: `3 < 4`, `4 < 1`, `5 < 4`, `2 < 5 or 2 < 1`, and the direct
/// successor constraint on job 4. It has no soft constraints.
pub fn worked_example() -> Instance {
    Instance::builder(5, 2)
        .atomic(3, 4)
        .atomic(4, 1)
        .atomic(5, 4)
        .disjunctive(2, 5, 2, 1)
        .direct_successor(4)
        .build()
        .expect("worked example is well formed")
}

/// `k = 1`: a single one-sided cable.
pub fn singleton() -> Instance {
    Instance::builder(1, 0).build().expect("valid")
}
