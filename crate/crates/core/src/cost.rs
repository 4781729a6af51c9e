//! The four optimization criteria and the weighted objective.
//!
//! * `S` counts interrupted job pairs (ends not plugged back to back).
//! * `M` is the peak number of cables in storage while some job runs.
//! * `L` is the longest storage residence of a cable end, in jobs.
//! * `N` counts violated soft atomic constraints.
//!
//! The objective weights them by powers of `k`: `k³S + k²M + kL + N`.

use alloc::vec;
use core::fmt;

use thiserror::Error;

use crate::model::{Instance, JobId, Permutation};
use crate::validate::DimensionMismatch;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CostBreakdown {
    pub s: u64,
    pub m: u64,
    pub l: u64,
    pub n: u64,
    pub objective: u64,
}

impl fmt::Display for CostBreakdown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "objective {} (S={}, M={}, L={}, N={})",
            self.objective, self.s, self.m, self.l, self.n
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum CostError {
    #[error(transparent)]
    Dimension(#[from] DimensionMismatch),
    #[error("objective overflows 64 bits (k = {k})")]
    Overflow { k: u64 },
}

/// Interrupted job pairs.
pub fn cost_s(inst: &Instance, perm: &Permutation) -> u64 {
    pair_gaps(inst, perm).filter(|&g| g > 1).count() as u64
}

/// Peak storage occupancy over all jobs.
pub fn cost_m(inst: &Instance, perm: &Permutation) -> u64 {
    let b = inst.b();
    if b == 0 {
        return 0;
    }
    // Each pair contributes +1 to the positions strictly between its ends.
    let k = inst.k();
    let mut delta = vec![0i64; k + 2];
    for i in 1..=b {
        let (p, q) = (
            perm.position(JobId::new(i)),
            perm.position(JobId::new(i + b)),
        );
        let (lo, hi) = if p < q { (p, q) } else { (q, p) };
        if hi - lo > 1 {
            delta[lo + 1] += 1;
            delta[hi] -= 1;
        }
    }
    let mut running = 0i64;
    let mut best = 0i64;
    for d in &delta[1..=k] {
        running += d;
        best = best.max(running);
    }
    best as u64
}

/// Longest storage residence.
pub fn cost_l(inst: &Instance, perm: &Permutation) -> u64 {
    pair_gaps(inst, perm).map(|g| g - 1).max().unwrap_or(0) as u64
}

/// Violated soft atomic constraints.
pub fn cost_n(inst: &Instance, perm: &Permutation) -> u64 {
    inst.soft_atomic()
        .iter()
        .filter(|c| perm.position(c.before) > perm.position(c.after))
        .count() as u64
}

/// `S` as a sum of tour edge costs.
///
/// The edge leaving position `x` costs 1 when the job there is a
/// two-sided end whose partner is neither plugged earlier nor plugged at
/// `x + 1`, i.e. the partner goes into storage.
pub fn edge_cost_s(inst: &Instance, perm: &Permutation) -> u64 {
    let k = inst.k();
    (1..k)
        .filter(|&x| {
            let job = perm.job_at(x);
            inst.partner_of(job)
                .is_some_and(|other| perm.position(other) > x + 1)
        })
        .count() as u64
}

/// `k³S + k²M + kL + N`, with overflow reported instead of wrapped.
pub fn objective(s: u64, m: u64, l: u64, n: u64, k: u64) -> Result<u64, CostError> {
    let overflow = CostError::Overflow { k };
    let k2 = k.checked_mul(k).ok_or(overflow)?;
    let k3 = k2.checked_mul(k).ok_or(overflow)?;
    k3.checked_mul(s)
        .and_then(|a| k2.checked_mul(m).and_then(|b| a.checked_add(b)))
        .and_then(|a| k.checked_mul(l).and_then(|b| a.checked_add(b)))
        .and_then(|a| a.checked_add(n))
        .ok_or(overflow)
}

/// All four criteria and the objective.
pub fn evaluate(inst: &Instance, perm: &Permutation) -> Result<CostBreakdown, CostError> {
    if perm.len() != inst.k() {
        return Err(DimensionMismatch {
            expected: inst.k(),
            actual: perm.len(),
        }
        .into());
    }
    let (s, m, l, n) = (
        cost_s(inst, perm),
        cost_m(inst, perm),
        cost_l(inst, perm),
        cost_n(inst, perm),
    );
    Ok(CostBreakdown {
        s,
        m,
        l,
        n,
        objective: objective(s, m, l, n, inst.k() as u64)?,
    })
}

fn pair_gaps<'a>(inst: &'a Instance, perm: &'a Permutation) -> impl Iterator<Item = usize> + 'a {
    let b = inst.b();
    (1..=b).map(move |i| {
        perm.position(JobId::new(i))
            .abs_diff(perm.position(JobId::new(i + b)))
    })
}
