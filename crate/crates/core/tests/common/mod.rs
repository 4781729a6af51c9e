//! A literal, slow reading of the definitions, used as a reference.
//!
//! Nothing here calls into the library except to read instance fields.

#![allow(dead_code)]

use ctw_core::gen::{GenMode, GenParams};
use ctw_core::Instance;
use proptest::prelude::*;

/// `pos[j]` is the 1-based position of job `j` (index 0 unused).
pub fn positions(tour: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; tour.len() + 1];
    for (i, &j) in tour.iter().enumerate() {
        pos[j] = i + 1;
    }
    pos
}

pub fn ref_valid(inst: &Instance, tour: &[usize]) -> bool {
    let p = positions(tour);
    let b = inst.b();
    inst.atomic().iter().all(|c| p[c.before.get()] < p[c.after.get()])
        && inst.disjunctive().iter().all(|d| {
            let [a, bb, c, e] = d.as_tuple();
            p[a] < p[bb] || p[c] < p[e]
        })
        && inst.direct_successors().iter().all(|i| {
            let i = i.get();
            let j = if i <= b { i + b } else { i - b };
            p[j] == p[i] + 1 || p[j] < p[i]
        })
}

/// `(S, M, L, N)` straight from the criteria definitions.
pub fn ref_costs(inst: &Instance, tour: &[usize]) -> (u64, u64, u64, u64) {
    let p = positions(tour);
    let (k, b) = (inst.k(), inst.b());
    let gap = |i: usize| p[i].abs_diff(p[i + b]);
    let s = (1..=b).filter(|&i| gap(i) > 1).count() as u64;
    let m = if b == 0 {
        0
    } else {
        (1..=k)
            .map(|l| {
                (1..=b)
                    .filter(|&j| {
                        let (lo, hi) = (p[j].min(p[j + b]), p[j].max(p[j + b]));
                        lo < p[l] && p[l] < hi
                    })
                    .count()
            })
            .max()
            .unwrap_or(0) as u64
    };
    let l = (1..=b).map(|i| gap(i) - 1).max().unwrap_or(0) as u64;
    let n = inst
        .soft_atomic()
        .iter()
        .filter(|c| p[c.before.get()] > p[c.after.get()])
        .count() as u64;
    (s, m, l, n)
}

pub fn ref_objective(inst: &Instance, tour: &[usize]) -> u64 {
    let k = inst.k() as u64;
    let (s, m, l, n) = ref_costs(inst, tour);
    k * k * k * s + k * k * m + k * l + n
}

/// Calls `f` on every permutation of `1..=k` (Heap's algorithm).
pub fn for_each_tour(k: usize, mut f: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (1..=k).collect();
    let mut c = vec![0; k];
    f(&a);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// `(valid count, optimum)` by exhaustive search.
pub fn ref_optimum(inst: &Instance) -> (u64, Option<u64>) {
    let mut count = 0;
    let mut best: Option<u64> = None;
    for_each_tour(inst.k(), |t| {
        if ref_valid(inst, t) {
            count += 1;
            let o = ref_objective(inst, t);
            best = Some(best.map_or(o, |b| b.min(o)));
        }
    });
    (count, best)
}

/// Random instances with every constraint type, built directly (not
/// through the generator). Hard/soft overlaps are removed.
pub fn arb_instance(max_k: usize) -> impl Strategy<Value = Instance> {
    (0..=max_k)
        .prop_flat_map(|k| (Just(k), 0..=k / 2))
        .prop_flat_map(|(k, b)| {
            let job = 1..=k.max(1);
            let pair = (job.clone(), job.clone());
            let quad = (job.clone(), job.clone(), job.clone(), job.clone());
            let end = 1..=(2 * b).max(1);
            (
                Just(k),
                Just(b),
                prop::collection::vec(pair.clone(), 0..=k),
                prop::collection::vec(pair, 0..=k),
                prop::collection::vec(quad, 0..=k / 2),
                prop::collection::vec(end, 0..=b),
            )
        })
        .prop_map(|(k, b, atomic, soft, disj, ds)| {
            let mut builder = Instance::builder(k, b);
            if k >= 2 {
                for &(x, y) in &atomic {
                    if x != y {
                        builder.push_atomic(x, y);
                    }
                }
                for &(x, y) in &soft {
                    if x != y && !atomic.contains(&(x, y)) {
                        builder.push_soft(x, y);
                    }
                }
                for &(a, bb, c, d) in &disj {
                    if a != bb && c != d {
                        builder.push_disjunctive(a, bb, c, d);
                    }
                }
            }
            if b > 0 {
                for &i in &ds {
                    builder.push_direct_successor(i);
                }
            }
            builder.build().expect("strategy emits well-formed constraints")
        })
}

/// Generator parameters spanning all modes for `k <= max_k`.
pub fn arb_gen_params(max_k: usize) -> impl Strategy<Value = GenParams> {
    (
        prop_oneof![
            Just(GenMode::Satisfiable),
            Just(GenMode::Unsatisfiable),
            Just(GenMode::DsOnly),
            Just(GenMode::AtomicOnly)
        ],
        0..=max_k / 2,
        0..=max_k,
        any::<u64>(),
        0.0..0.5f64,
        0.0..0.5f64,
        0.0..0.5f64,
    )
        .prop_filter_map("size", move |(mode, b, n, seed, pa, ps, pd)| {
            let b = if mode == GenMode::AtomicOnly { 0 } else { b };
            if 2 * b + n > max_k || (mode == GenMode::Unsatisfiable && 2 * b + n < 2) {
                return None;
            }
            let mut p = GenParams::new(b, n, mode, seed);
            p.p_atomic = pa;
            p.p_soft = ps;
            p.p_disjunctive = pd;
            p.ds_count = (seed as usize) % (2 * b + 1);
            Some(p)
        })
}
