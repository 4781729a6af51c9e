//! Seeded random instances.
//!
//! Satisfiable instances are built around a hidden permutation: every hard
//! constraint is kept only if that permutation satisfies it. Soft
//! constraints skip this filter, so `N` can be positive at the optimum.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{Instance, InstanceBuilder, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenMode {
    Satisfiable,
    /// Satisfiable construction plus a directed cycle of hard atomic
    /// constraints.
    Unsatisfiable,
    /// Only direct successor constraints.
    DsOnly,
    /// Only hard atomic constraints over one-sided cables.
    AtomicOnly,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenParams {
    pub b: usize,
    pub n: usize,
    /// Fraction of unordered job pairs that get a hard atomic constraint.
    pub p_atomic: f64,
    /// Fraction of unordered job pairs that get a soft atomic constraint.
    pub p_soft: f64,
    /// Fraction of (job pair, third job) triples that get a disjunction.
    pub p_disjunctive: f64,
    pub ds_count: usize,
    pub seed: u64,
    pub mode: GenMode,
}

impl GenParams {
    /// Moderate densities for `k = 2b + n` jobs; the soft density keeps the
    /// expected number of soft constraints near `k / 2`.
    pub fn new(b: usize, n: usize, mode: GenMode, seed: u64) -> Self {
        let k = 2 * b + n;
        GenParams {
            b,
            n,
            p_atomic: 0.1,
            p_soft: default_soft_density(k),
            p_disjunctive: 0.05,
            ds_count: b.min(2),
            seed,
            mode,
        }
    }

    pub fn k(&self) -> usize {
        2 * self.b + self.n
    }
}

pub fn default_soft_density(k: usize) -> f64 {
    if k < 2 {
        0.0
    } else {
        (1.0 / (k - 1) as f64).min(1.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Error)]
pub enum GenError {
    #[error("density {name} = {value} is outside [0, 1]")]
    Density { name: &'static str, value: f64 },
    #[error("ds_count = {ds_count} exceeds 2b = {max}")]
    TooManyDirectSuccessors { ds_count: usize, max: usize },
    #[error("atomic-only instances have no two-sided cables (b = {0})")]
    PairsInAtomicOnly(usize),
    #[error("an injected cycle needs at least two jobs (k = {0})")]
    TooSmallForCycle(usize),
}

/// An instance and, for planted modes, the permutation it was built around.
#[derive(Clone, Debug)]
pub struct Generated {
    pub instance: Instance,
    pub planted: Option<Permutation>,
}

pub fn generate(params: &GenParams) -> Result<Instance, GenError> {
    generate_planted(params).map(|g| g.instance)
}

pub fn generate_planted(params: &GenParams) -> Result<Generated, GenError> {
    for (name, value) in [
        ("p_atomic", params.p_atomic),
        ("p_soft", params.p_soft),
        ("p_disjunctive", params.p_disjunctive),
    ] {
        if !(0.0..=1.0).contains(&value) {
            return Err(GenError::Density { name, value });
        }
    }
    let (b, k) = (params.b, params.k());
    if params.ds_count > 2 * b {
        return Err(GenError::TooManyDirectSuccessors {
            ds_count: params.ds_count,
            max: 2 * b,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut builder = Instance::builder(k, b);

    match params.mode {
        GenMode::DsOnly => {
            let mut ends: Vec<usize> = (1..=2 * b).collect();
            ends.shuffle(&mut rng);
            for &i in &ends[..params.ds_count] {
                builder.push_direct_successor(i);
            }
            return Ok(Generated {
                instance: build(builder),
                planted: None,
            });
        }
        GenMode::AtomicOnly => {
            if b != 0 {
                return Err(GenError::PairsInAtomicOnly(b));
            }
            let plant = random_plant(&mut rng, k, 0, 0);
            add_planted_atomic(&mut rng, &mut builder, &plant, params.p_atomic);
            return Ok(Generated {
                instance: build(builder),
                planted: Some(plant),
            });
        }
        GenMode::Satisfiable | GenMode::Unsatisfiable => {}
    }

    if params.mode == GenMode::Unsatisfiable && k < 2 {
        return Err(GenError::TooSmallForCycle(k));
    }

    let plant = random_plant(&mut rng, k, b, params.ds_count.saturating_sub(b));
    let pos = |j: usize| plant.pfc()[j - 1];

    let atomic = add_planted_atomic(&mut rng, &mut builder, &plant, params.p_atomic);

    let mut soft = Vec::new();
    for (u, v) in sample_pairs(&mut rng, k, params.p_soft) {
        let (before, after) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
        if !atomic.contains(&(before, after)) {
            soft.push((before, after));
        }
    }

    // One shape per (pair, third job) triple; D1 and D2 never share one.
    for i in 1..=b {
        let j = i + b;
        for l in (1..=k).filter(|&l| l != i && l != j) {
            if !rng.gen_bool(params.p_disjunctive) {
                continue;
            }
            let d = if rng.gen_bool(0.5) {
                [l, i, l, j]
            } else if rng.gen_bool(0.5) {
                [l, i, j, l]
            } else {
                [l, j, i, l]
            };
            if pos(d[0]) < pos(d[1]) || pos(d[2]) < pos(d[3]) {
                builder.push_disjunctive(d[0], d[1], d[2], d[3]);
            }
        }
    }

    // An end is eligible when its partner is plugged earlier or right after.
    let mut eligible: Vec<usize> = (1..=2 * b)
        .filter(|&e| {
            let other = if e <= b { e + b } else { e - b };
            pos(other) < pos(e) || pos(other) == pos(e) + 1
        })
        .collect();
    eligible.shuffle(&mut rng);
    for &e in eligible.iter().take(params.ds_count) {
        builder.push_direct_successor(e);
    }

    if params.mode == GenMode::Unsatisfiable {
        let len = rng.gen_range(2..=k.min(4));
        let mut jobs: Vec<usize> = (1..=k).collect();
        let (cycle, _) = jobs.partial_shuffle(&mut rng, len);
        let cycle = cycle.to_vec();
        for (idx, &v) in cycle.iter().enumerate() {
            let w = cycle[(idx + 1) % len];
            builder.push_atomic(v, w);
            soft.retain(|&c| c != (v, w));
        }
    }
    for (before, after) in soft {
        builder.push_soft(before, after);
    }

    let planted = (params.mode == GenMode::Satisfiable).then_some(plant);
    Ok(Generated {
        instance: build(builder),
        planted,
    })
}

fn build(builder: InstanceBuilder) -> Instance {
    builder
        .build()
        .expect("generator emits only well-formed constraints")
}

/// A random permutation in which `adjacent` randomly chosen job pairs are
/// plugged back to back.
fn random_plant<R: Rng>(rng: &mut R, k: usize, b: usize, adjacent: usize) -> Permutation {
    let mut tour: Vec<usize> = (1..=k).collect();
    tour.shuffle(rng);
    if adjacent > 0 {
        let mut pairs: Vec<usize> = (1..=b).collect();
        pairs.shuffle(rng);
        for &i in &pairs[..adjacent.min(b)] {
            let (first, second) = if rng.gen_bool(0.5) { (i, i + b) } else { (i + b, i) };
            tour.retain(|&j| j != second);
            let at = tour.iter().position(|&j| j == first).expect("present");
            tour.insert(at + 1, second);
        }
    }
    Permutation::from_cfp(&tour).expect("shuffled tour")
}

/// Orients sampled pairs along the plant; returns the added constraints.
fn add_planted_atomic<R: Rng>(
    rng: &mut R,
    builder: &mut InstanceBuilder,
    plant: &Permutation,
    p: f64,
) -> BTreeSet<(usize, usize)> {
    let mut added = BTreeSet::new();
    for (u, v) in sample_pairs(rng, plant.len(), p) {
        let (before, after) = if plant.pfc()[u - 1] < plant.pfc()[v - 1] {
            (u, v)
        } else {
            (v, u)
        };
        builder.push_atomic(before, after);
        added.insert((before, after));
    }
    added
}

/// Unordered pairs `u < v` of `1..=k`, each included with probability `p`.
///
/// Large sparse cases draw the expected number of distinct pairs instead
/// of flipping a coin per pair, to stay linear in the output size.
fn sample_pairs<R: Rng>(rng: &mut R, k: usize, p: f64) -> Vec<(usize, usize)> {
    if k < 2 || p <= 0.0 {
        return Vec::new();
    }
    let total = k * (k - 1) / 2;
    if total <= 1 << 20 || p > 0.25 {
        let mut out = Vec::new();
        for u in 1..k {
            for v in u + 1..=k {
                if rng.gen_bool(p) {
                    out.push((u, v));
                }
            }
        }
        return out;
    }
    // Round half up without libm.
    let target = (p * total as f64 + 0.5) as usize;
    let mut seen = BTreeSet::new();
    while seen.len() < target {
        let u = rng.gen_range(1..=k);
        let v = rng.gen_range(1..=k);
        if u != v {
            seen.insert((u.min(v), u.max(v)));
        }
    }
    seen.into_iter().collect()
}
