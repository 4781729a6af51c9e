//! Hard-constraint checking.
//!
//! Soft atomic constraints never make a permutation invalid; they only
//! show up in the cost criterion N.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::model::{
    AtomicConstraint, DisjunctiveConstraint, Instance, JobId, Permutation, PermutationError,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotBijective(PermutationError),
    Atomic(AtomicConstraint),
    Disjunctive(DisjunctiveConstraint),
    /// The constrained end `i` of a direct-successor constraint.
    DirectSuccessor(JobId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotBijective(e) => write!(f, "not a permutation: {e}"),
            Violation::Atomic(c) => write!(f, "atomic constraint {c} violated"),
            Violation::Disjunctive(d) => write!(f, "disjunctive constraint {d} violated"),
            Violation::DirectSuccessor(j) => {
                write!(f, "direct successor constraint on {j} violated")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("permutation has length {actual} but the instance has k = {expected}")]
pub struct DimensionMismatch {
    pub expected: usize,
    pub actual: usize,
}

/// Checks a permutation against all hard constraints. Empty means valid.
pub fn validate(inst: &Instance, perm: &Permutation) -> Result<Vec<Violation>, DimensionMismatch> {
    if perm.len() != inst.k() {
        return Err(DimensionMismatch {
            expected: inst.k(),
            actual: perm.len(),
        });
    }
    let p = |j: JobId| perm.position(j);
    let mut out = Vec::new();
    for &c in inst.atomic() {
        if p(c.before) >= p(c.after) {
            out.push(Violation::Atomic(c));
        }
    }
    for &d in inst.disjunctive() {
        if p(d.c1before) >= p(d.c1after) && p(d.c2before) >= p(d.c2after) {
            out.push(Violation::Disjunctive(d));
        }
    }
    for &i in inst.direct_successors() {
        let j = inst.partner_of(i).expect("direct successors are two-sided");
        if !(p(j) == p(i) + 1 || p(j) < p(i)) {
            out.push(Violation::DirectSuccessor(i));
        }
    }
    Ok(out)
}

/// Like [`validate`], for an unchecked position-per-job array.
pub fn validate_pfc(inst: &Instance, pfc: &[usize]) -> Result<Vec<Violation>, DimensionMismatch> {
    if pfc.len() != inst.k() {
        return Err(DimensionMismatch {
            expected: inst.k(),
            actual: pfc.len(),
        });
    }
    match Permutation::from_pfc(pfc) {
        Ok(perm) => validate(inst, &perm),
        Err(e) => Ok(alloc::vec![Violation::NotBijective(e)]),
    }
}

pub fn is_valid(inst: &Instance, perm: &Permutation) -> bool {
    matches!(validate(inst, perm), Ok(v) if v.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::worked_example;

    #[test]
    fn worked_example_solution_is_valid() {
        let inst = worked_example();
        let perm = Permutation::from_cfp(&[5, 3, 4, 2, 1]).unwrap();
        assert_eq!(validate(&inst, &perm).unwrap(), []);
    }

    #[test]
    fn identity_breaks_atomic() {
        let inst = worked_example();
        let v = validate(&inst, &Permutation::identity(5)).unwrap();
        assert!(v.contains(&Violation::Atomic(AtomicConstraint::new(4, 1))));
    }

    #[test]
    fn empty_instance_accepts_empty_permutation() {
        assert_eq!(
            validate(&Instance::empty(), &Permutation::identity(0)).unwrap(),
            []
        );
    }

    #[test]
    fn mismatched_length_is_an_error() {
        assert!(validate(&worked_example(), &Permutation::identity(4)).is_err());
    }

    #[test]
    fn repeated_positions_are_reported() {
        let v = validate_pfc(&worked_example(), &[1, 1, 2, 3, 4]).unwrap();
        assert!(matches!(v[..], [Violation::NotBijective(_)]));
    }

    #[test]
    fn direct_successor_semantics() {
        // <1,2> with 1 constrained: 2 right after 1, or 2 anywhere before.
        let inst = Instance::builder(3, 1).direct_successor(1).build().unwrap();
        let ok = |t: &[usize]| is_valid(&inst, &Permutation::from_cfp(t).unwrap());
        assert!(ok(&[1, 2, 3]));
        assert!(ok(&[2, 3, 1]));
        assert!(ok(&[2, 1, 3]));
        assert!(!ok(&[1, 3, 2]));
    }

    #[test]
    fn disjunction_needs_one_disjunct() {
        let inst = Instance::builder(3, 0)
            .disjunctive(1, 2, 1, 3)
            .build()
            .unwrap();
        let ok = |t: &[usize]| is_valid(&inst, &Permutation::from_cfp(t).unwrap());
        assert!(ok(&[2, 1, 3]));
        assert!(!ok(&[2, 3, 1]));
    }
}
