//! Instances, constraints and candidate permutations.
//!
//! Jobs are numbered `1..=k`. The first `2b` jobs form the `b` job pairs
//! `<i, i + b>` of the two-sided cables; jobs `2b + 1..=k` belong to
//! one-sided cables.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// A 1-based job label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JobId(usize);

impl JobId {
    /// Panics on `0`; job labels start at one.
    #[inline]
    pub fn new(value: usize) -> Self {
        assert!(value >= 1, "job ids are 1-based");
        JobId(value)
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    /// Zero-based index, for array lookups.
    #[inline]
    pub fn index(self) -> usize {
        self.0 - 1
    }

    #[inline]
    pub fn from_index(index: usize) -> Self {
        JobId(index + 1)
    }
}

impl fmt::Display for JobId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

/// The other end of a two-sided cable.
pub fn partner(job: JobId, b: usize) -> Result<JobId, InstanceError> {
    let i = job.get();
    if i <= b {
        Ok(JobId(i + b))
    } else if i <= 2 * b {
        Ok(JobId(i - b))
    } else {
        Err(InstanceError::NoPartner { job, b })
    }
}

/// `before` must be executed before `after`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomicConstraint {
    pub before: JobId,
    pub after: JobId,
}

impl AtomicConstraint {
    pub fn new(before: usize, after: usize) -> Self {
        AtomicConstraint {
            before: JobId::new(before),
            after: JobId::new(after),
        }
    }
}

impl fmt::Display for AtomicConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} < {}", self.before, self.after)
    }
}

/// `c1before < c1after  OR  c2before < c2after`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DisjunctiveConstraint {
    pub c1before: JobId,
    pub c1after: JobId,
    pub c2before: JobId,
    pub c2after: JobId,
}

impl DisjunctiveConstraint {
    pub fn new(c1before: usize, c1after: usize, c2before: usize, c2after: usize) -> Self {
        DisjunctiveConstraint {
            c1before: JobId::new(c1before),
            c1after: JobId::new(c1after),
            c2before: JobId::new(c2before),
            c2after: JobId::new(c2after),
        }
    }

    pub fn disjuncts(&self) -> [AtomicConstraint; 2] {
        [
            AtomicConstraint {
                before: self.c1before,
                after: self.c1after,
            },
            AtomicConstraint {
                before: self.c2before,
                after: self.c2after,
            },
        ]
    }

    pub fn as_tuple(&self) -> [usize; 4] {
        [
            self.c1before.get(),
            self.c1after.get(),
            self.c2before.get(),
            self.c2after.get(),
        ]
    }
}

impl fmt::Display for DisjunctiveConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} < {} or {} < {}",
            self.c1before, self.c1after, self.c2before, self.c2after
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstraintKind {
    Atomic,
    SoftAtomic,
    Disjunctive,
    DirectSuccessor,
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstraintKind::Atomic => "AtomicConstraints",
            ConstraintKind::SoftAtomic => "SoftAtomicConstraints",
            ConstraintKind::Disjunctive => "DisjunctiveConstraints",
            ConstraintKind::DirectSuccessor => "DirectSuccessors",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("b = {b} two-sided cables need 2b = {} jobs but k = {k}", 2 * b)]
    TooManyPairs { k: usize, b: usize },
    #[error("{kind}: job {value} is outside 1..={k}")]
    JobOutOfRange {
        kind: ConstraintKind,
        value: usize,
        k: usize,
    },
    #[error("{kind}: {job} cannot precede itself")]
    SelfPrecedence { kind: ConstraintKind, job: JobId },
    #[error("DirectSuccessors: {job} is not the end of a two-sided cable (b = {b})")]
    NoPartner { job: JobId, b: usize },
    #[error("{0} appears both as hard and as soft atomic constraint")]
    HardSoftOverlap(AtomicConstraint),
}

/// Duplicate constraints dropped while building an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DuplicateWarning {
    pub kind: ConstraintKind,
    pub dropped: usize,
}

impl fmt::Display for DuplicateWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: dropped {} duplicate entries", self.kind, self.dropped)
    }
}

/// An immutable CTW problem statement.
///
/// Constraint lists are stored sorted and deduplicated, so two instances
/// describing the same constraint sets compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    k: usize,
    b: usize,
    atomic: Vec<AtomicConstraint>,
    soft_atomic: Vec<AtomicConstraint>,
    disjunctive: Vec<DisjunctiveConstraint>,
    direct_successors: Vec<JobId>,
}

impl Instance {
    pub fn builder(k: usize, b: usize) -> InstanceBuilder {
        InstanceBuilder::new(k, b)
    }

    /// The instance with no jobs.
    pub fn empty() -> Self {
        InstanceBuilder::new(0, 0).build().expect("empty instance is valid")
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn b(&self) -> usize {
        self.b
    }

    /// Number of one-sided cables.
    #[inline]
    pub fn n(&self) -> usize {
        self.k - 2 * self.b
    }

    pub fn atomic(&self) -> &[AtomicConstraint] {
        &self.atomic
    }

    pub fn soft_atomic(&self) -> &[AtomicConstraint] {
        &self.soft_atomic
    }

    pub fn disjunctive(&self) -> &[DisjunctiveConstraint] {
        &self.disjunctive
    }

    pub fn direct_successors(&self) -> &[JobId] {
        &self.direct_successors
    }

    pub fn jobs(&self) -> impl Iterator<Item = JobId> + Clone {
        (1..=self.k).map(JobId)
    }

    #[inline]
    pub fn is_two_sided(&self, job: JobId) -> bool {
        job.get() <= 2 * self.b
    }

    /// Partner of a two-sided job, `None` for one-sided jobs.
    #[inline]
    pub fn partner_of(&self, job: JobId) -> Option<JobId> {
        partner(job, self.b).ok()
    }

    /// Same jobs and hard constraints, no soft constraints.
    pub fn without_soft(&self) -> Instance {
        Instance {
            soft_atomic: Vec::new(),
            ..self.clone()
        }
    }

    /// Rebuilds the instance through the builder, e.g. to add constraints.
    pub fn to_builder(&self) -> InstanceBuilder {
        InstanceBuilder {
            k: self.k,
            b: self.b,
            atomic: self.atomic.clone(),
            soft_atomic: self.soft_atomic.clone(),
            disjunctive: self.disjunctive.clone(),
            direct_successors: self.direct_successors.clone(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct InstanceBuilder {
    k: usize,
    b: usize,
    atomic: Vec<AtomicConstraint>,
    soft_atomic: Vec<AtomicConstraint>,
    disjunctive: Vec<DisjunctiveConstraint>,
    direct_successors: Vec<JobId>,
}

impl InstanceBuilder {
    pub fn new(k: usize, b: usize) -> Self {
        InstanceBuilder {
            k,
            b,
            ..Default::default()
        }
    }

    pub fn atomic(mut self, before: usize, after: usize) -> Self {
        self.push_atomic(before, after);
        self
    }

    pub fn soft(mut self, before: usize, after: usize) -> Self {
        self.push_soft(before, after);
        self
    }

    pub fn disjunctive(mut self, c1b: usize, c1a: usize, c2b: usize, c2a: usize) -> Self {
        self.push_disjunctive(c1b, c1a, c2b, c2a);
        self
    }

    pub fn direct_successor(mut self, job: usize) -> Self {
        self.push_direct_successor(job);
        self
    }

    // Raw values are range-checked in `build`; `0` is kept as an
    // out-of-range marker instead of panicking in `JobId::new`.
    pub fn push_atomic(&mut self, before: usize, after: usize) {
        self.atomic.push(AtomicConstraint {
            before: JobId(before),
            after: JobId(after),
        });
    }

    pub fn push_soft(&mut self, before: usize, after: usize) {
        self.soft_atomic.push(AtomicConstraint {
            before: JobId(before),
            after: JobId(after),
        });
    }

    pub fn push_disjunctive(&mut self, c1b: usize, c1a: usize, c2b: usize, c2a: usize) {
        self.disjunctive.push(DisjunctiveConstraint {
            c1before: JobId(c1b),
            c1after: JobId(c1a),
            c2before: JobId(c2b),
            c2after: JobId(c2a),
        });
    }

    pub fn push_direct_successor(&mut self, job: usize) {
        self.direct_successors.push(JobId(job));
    }

    /// Validates and canonicalizes; duplicates are dropped silently.
    pub fn build(self) -> Result<Instance, InstanceError> {
        self.build_with_warnings().map(|(inst, _)| inst)
    }

    pub fn build_with_warnings(
        mut self,
    ) -> Result<(Instance, Vec<DuplicateWarning>), InstanceError> {
        let (k, b) = (self.k, self.b);
        if b.checked_mul(2).map_or(true, |two_b| two_b > k) {
            return Err(InstanceError::TooManyPairs { k, b });
        }
        let check = |kind: ConstraintKind, job: JobId| {
            if job.0 == 0 || job.0 > k {
                Err(InstanceError::JobOutOfRange {
                    kind,
                    value: job.0,
                    k,
                })
            } else {
                Ok(())
            }
        };
        for (kind, list) in [
            (ConstraintKind::Atomic, &self.atomic),
            (ConstraintKind::SoftAtomic, &self.soft_atomic),
        ] {
            for c in list {
                check(kind, c.before)?;
                check(kind, c.after)?;
                if c.before == c.after {
                    return Err(InstanceError::SelfPrecedence {
                        kind,
                        job: c.before,
                    });
                }
            }
        }
        for d in &self.disjunctive {
            for c in d.disjuncts() {
                check(ConstraintKind::Disjunctive, c.before)?;
                check(ConstraintKind::Disjunctive, c.after)?;
                if c.before == c.after {
                    return Err(InstanceError::SelfPrecedence {
                        kind: ConstraintKind::Disjunctive,
                        job: c.before,
                    });
                }
            }
        }
        for &j in &self.direct_successors {
            check(ConstraintKind::DirectSuccessor, j)?;
            partner(j, b)?;
        }

        let mut warnings = Vec::new();
        let mut dedup = |kind, before: usize, after: usize| {
            if before != after {
                warnings.push(DuplicateWarning {
                    kind,
                    dropped: before - after,
                });
            }
        };
        let n0 = self.atomic.len();
        self.atomic.sort_unstable();
        self.atomic.dedup();
        dedup(ConstraintKind::Atomic, n0, self.atomic.len());
        let n0 = self.soft_atomic.len();
        self.soft_atomic.sort_unstable();
        self.soft_atomic.dedup();
        dedup(ConstraintKind::SoftAtomic, n0, self.soft_atomic.len());
        let n0 = self.disjunctive.len();
        self.disjunctive.sort_unstable();
        self.disjunctive.dedup();
        dedup(ConstraintKind::Disjunctive, n0, self.disjunctive.len());
        let n0 = self.direct_successors.len();
        self.direct_successors.sort_unstable();
        self.direct_successors.dedup();
        dedup(ConstraintKind::DirectSuccessor, n0, self.direct_successors.len());

        // Both lists are sorted: merge-scan for a common element.
        let (mut i, mut j) = (0, 0);
        while i < self.atomic.len() && j < self.soft_atomic.len() {
            match self.atomic[i].cmp(&self.soft_atomic[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    return Err(InstanceError::HardSoftOverlap(self.atomic[i]))
                }
            }
        }

        Ok((
            Instance {
                k,
                b,
                atomic: self.atomic,
                soft_atomic: self.soft_atomic,
                disjunctive: self.disjunctive,
                direct_successors: self.direct_successors,
            },
            warnings,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("entry {value} at index {index} is outside 1..={len}")]
    OutOfRange {
        index: usize,
        value: usize,
        len: usize,
    },
    #[error("value {value} occurs more than once")]
    Repeated { value: usize },
}

/// A bijection between jobs and positions, kept in both directions.
///
/// `pfc[job]` is the 1-based position of a job, `cfp[position]` the job
/// placed there.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    pfc: Vec<usize>,
    cfp: Vec<JobId>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Permutation {
            pfc: (1..=k).collect(),
            cfp: (1..=k).map(JobId).collect(),
        }
    }

    /// From a tour: the job at each position, in order.
    pub fn from_cfp(tour: &[usize]) -> Result<Self, PermutationError> {
        let pfc = invert(tour)?;
        Ok(Permutation {
            pfc,
            cfp: tour.iter().map(|&j| JobId(j)).collect(),
        })
    }

    pub fn from_jobs(tour: &[JobId]) -> Result<Self, PermutationError> {
        let raw: Vec<usize> = tour.iter().map(|j| j.get()).collect();
        Self::from_cfp(&raw)
    }

    /// From the position of each job.
    pub fn from_pfc(positions: &[usize]) -> Result<Self, PermutationError> {
        let cfp = invert(positions)?;
        Ok(Permutation {
            pfc: positions.to_vec(),
            cfp: cfp.into_iter().map(JobId).collect(),
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.cfp.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.cfp.is_empty()
    }

    /// 1-based position of `job`.
    #[inline]
    pub fn position(&self, job: JobId) -> usize {
        self.pfc[job.index()]
    }

    /// Job at 1-based `position`.
    #[inline]
    pub fn job_at(&self, position: usize) -> JobId {
        self.cfp[position - 1]
    }

    pub fn pfc(&self) -> &[usize] {
        &self.pfc
    }

    pub fn cfp(&self) -> &[JobId] {
        &self.cfp
    }

    pub fn tour(&self) -> Vec<usize> {
        self.cfp.iter().map(|j| j.get()).collect()
    }
}

/// Inverts a 1-based bijection given as a slice.
fn invert(map: &[usize]) -> Result<Vec<usize>, PermutationError> {
    let len = map.len();
    let mut inv = alloc::vec![0usize; len];
    for (index, &value) in map.iter().enumerate() {
        if value == 0 || value > len {
            return Err(PermutationError::OutOfRange { index, value, len });
        }
        if inv[value - 1] != 0 {
            return Err(PermutationError::Repeated { value });
        }
        inv[value - 1] = index + 1;
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partner_examples() {
        assert_eq!(partner(JobId::new(1), 2), Ok(JobId::new(3)));
        assert_eq!(partner(JobId::new(4), 2), Ok(JobId::new(2)));
        assert!(partner(JobId::new(5), 2).is_err());
        for i in 1..=8 {
            let j = partner(JobId::new(i), 4).unwrap();
            assert_eq!(partner(j, 4).unwrap().get(), i);
        }
    }

    #[test]
    fn builder_rejects_bad_data() {
        assert!(matches!(
            Instance::builder(3, 2).build(),
            Err(InstanceError::TooManyPairs { .. })
        ));
        assert!(matches!(
            Instance::builder(3, 0).atomic(3, 3).build(),
            Err(InstanceError::SelfPrecedence { .. })
        ));
        assert!(matches!(
            Instance::builder(3, 0).atomic(1, 4).build(),
            Err(InstanceError::JobOutOfRange { value: 4, .. })
        ));
        assert!(matches!(
            Instance::builder(3, 0).atomic(0, 1).build(),
            Err(InstanceError::JobOutOfRange { value: 0, .. })
        ));
        assert!(matches!(
            Instance::builder(5, 2).direct_successor(5).build(),
            Err(InstanceError::NoPartner { .. })
        ));
        assert!(matches!(
            Instance::builder(3, 0).atomic(1, 2).soft(1, 2).build(),
            Err(InstanceError::HardSoftOverlap(_))
        ));
        assert!(matches!(
            Instance::builder(4, 1).disjunctive(1, 2, 3, 3).build(),
            Err(InstanceError::SelfPrecedence { .. })
        ));
    }

    #[test]
    fn builder_dedups_and_sorts() {
        let (inst, warnings) = Instance::builder(4, 0)
            .atomic(3, 4)
            .atomic(1, 2)
            .atomic(3, 4)
            .soft(2, 1)
            .build_with_warnings()
            .unwrap();
        assert_eq!(
            inst.atomic(),
            &[AtomicConstraint::new(1, 2), AtomicConstraint::new(3, 4)]
        );
        assert_eq!(
            warnings,
            [DuplicateWarning {
                kind: ConstraintKind::Atomic,
                dropped: 1
            }]
        );
    }

    #[test]
    fn permutation_views_are_inverse() {
        let p = Permutation::from_cfp(&[5, 3, 4, 2, 1]).unwrap();
        assert_eq!(p.pfc(), &[5, 4, 2, 3, 1]);
        for pos in 1..=5 {
            assert_eq!(p.position(p.job_at(pos)), pos);
        }
        assert_eq!(Permutation::from_pfc(p.pfc()).unwrap(), p);
        assert_eq!(
            Permutation::from_cfp(&[1, 1]),
            Err(PermutationError::Repeated { value: 1 })
        );
        assert!(Permutation::from_cfp(&[1, 3]).is_err());
        assert!(Permutation::from_cfp(&[]).unwrap().is_empty());
    }
}
