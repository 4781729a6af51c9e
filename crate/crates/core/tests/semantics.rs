mod common;

use common::{arb_instance, for_each_tour, positions, ref_costs, ref_valid};
use ctw_core::cost::{cost_s, edge_cost_s, evaluate, objective, CostError};
use ctw_core::validate::{validate, validate_pfc, Violation};
use ctw_core::{Instance, Permutation};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn perm(tour: &[usize]) -> Permutation {
    Permutation::from_cfp(tour).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn validity_and_costs_match_reference(inst in arb_instance(6)) {
        for_each_tour(inst.k(), |t| {
            let p = perm(t);
            assert_eq!(validate(&inst, &p).unwrap().is_empty(), ref_valid(&inst, t), "{t:?}");
            let c = evaluate(&inst, &p).unwrap();
            assert_eq!((c.s, c.m, c.l, c.n), ref_costs(&inst, t), "{t:?}");
        });
    }

    #[test]
    fn edge_cost_equals_pair_count_exhaustively(inst in arb_instance(6)) {
        for_each_tour(inst.k(), |t| {
            let p = perm(t);
            assert_eq!(edge_cost_s(&inst, &p), cost_s(&inst, &p), "{t:?}");
        });
    }

    #[test]
    fn edge_cost_equals_pair_count_on_large_tours(k in 7usize..120, b_frac in 0.0..=0.5f64, seed: u64) {
        let b = ((k as f64) * b_frac) as usize;
        let inst = Instance::builder(k, b).build().unwrap();
        let mut tour: Vec<usize> = (1..=k).collect();
        tour.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let p = perm(&tour);
        prop_assert_eq!(edge_cost_s(&inst, &p), cost_s(&inst, &p));
    }

    #[test]
    fn soft_constraints_never_change_validity(inst in arb_instance(6)) {
        let hard = inst.without_soft();
        for_each_tour(inst.k(), |t| {
            let p = perm(t);
            assert_eq!(validate(&inst, &p).unwrap(), validate(&hard, &p).unwrap());
            assert_eq!(evaluate(&hard, &p).unwrap().n, 0);
        });
    }

    #[test]
    fn bounds_hold_on_valid_permutations(inst in arb_instance(7), seed: u64) {
        let (k, b) = (inst.k() as u64, inst.b() as u64);
        let mut tour: Vec<usize> = (1..=inst.k()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            tour.shuffle(&mut rng);
            let p = perm(&tour);
            if !validate(&inst, &p).unwrap().is_empty() {
                continue;
            }
            let c = evaluate(&inst, &p).unwrap();
            prop_assert!(c.s <= b && c.m <= b);
            prop_assert!(c.l <= k.saturating_sub(1));
            prop_assert!(c.n <= k * k.saturating_sub(1) / 2);
        }
    }

    #[test]
    fn weighting_is_lexicographic(
        k in 3u64..=1000,
        a in (0u64..=500, 0u64..=500, 0u64..=999, 0u64..=999),
        c in (0u64..=500, 0u64..=500, 0u64..=999, 0u64..=999),
    ) {
        // Clamp into the bounds for this k: S, M <= k/2, L <= k-1, N < k.
        let clamp = |(s, m, l, n): (u64, u64, u64, u64)| (s % (k / 2 + 1), m % (k / 2 + 1), l % k, n % k);
        let (x, y) = (clamp(a), clamp(c));
        let ox = objective(x.0, x.1, x.2, x.3, k).unwrap();
        let oy = objective(y.0, y.1, y.2, y.3, k).unwrap();
        prop_assert_eq!(ox.cmp(&oy), x.cmp(&y));
    }
}

/// The implication form `pfc[i] < pfc[j] => pfc[j] - pfc[i] = 1` admits
/// exactly the permutations the direct successor definition admits.
#[test]
fn direct_successor_matches_implication_form() {
    for k in 2..=6 {
        for b in 1..=k / 2 {
            for i in 1..=2 * b {
                let inst = Instance::builder(k, b).direct_successor(i).build().unwrap();
                let j = if i <= b { i + b } else { i - b };
                for_each_tour(k, |t| {
                    let p = positions(t);
                    let implication = !(p[i] < p[j]) || p[j] - p[i] == 1;
                    assert_eq!(validate(&inst, &perm(t)).unwrap().is_empty(), implication);
                });
            }
        }
    }
}

#[test]
fn non_bijections_are_rejected() {
    let inst = Instance::builder(3, 0).build().unwrap();
    for bad in [[1, 1, 2], [0, 1, 2], [1, 2, 4]] {
        let v = validate_pfc(&inst, &bad).unwrap();
        assert!(matches!(v[..], [Violation::NotBijective(_)]), "{bad:?}");
    }
    assert!(validate_pfc(&inst, &[1, 2]).is_err());
    assert!(validate_pfc(&inst, &[3, 1, 2]).unwrap().is_empty());
}

#[test]
fn objective_overflow_is_an_error() {
    assert_eq!(objective(1000, 1000, 1000, 1_000_000, 1000).unwrap(), 1_001_002_000_000);
    assert!(matches!(objective(1, 0, 0, 0, 3_000_000), Err(CostError::Overflow { .. })));
    assert!(matches!(objective(u64::MAX, 0, 0, 0, 2), Err(CostError::Overflow { .. })));
    assert!(matches!(objective(0, 0, 1, u64::MAX, 2), Err(CostError::Overflow { .. })));
    assert_eq!(objective(0, 0, 0, u64::MAX, 2).unwrap(), u64::MAX);
}

#[test]
fn spec_examples_for_m_and_n() {
    let inst = Instance::builder(4, 2).build().unwrap();
    assert_eq!(evaluate(&inst, &perm(&[1, 2, 3, 4])).unwrap().m, 1);
    let both = Instance::builder(2, 0).soft(1, 2).soft(2, 1).build().unwrap();
    for t in [[1, 2], [2, 1]] {
        assert_eq!(evaluate(&both, &perm(&t)).unwrap().n, 1);
    }
}
