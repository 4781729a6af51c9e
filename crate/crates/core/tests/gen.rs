mod common;

use common::{arb_gen_params, ref_optimum, ref_valid};
use ctw_core::gen::{generate, generate_planted, GenError, GenMode, GenParams};
use ctw_core::poly::unsat_precheck;
use ctw_core::validate;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn generated_instances_match_their_mode(params in arb_gen_params(8)) {
        let g = generate_planted(&params).unwrap();
        let inst = &g.instance;
        prop_assert_eq!((inst.k(), inst.b()), (params.k(), params.b));
        match params.mode {
            GenMode::Satisfiable | GenMode::AtomicOnly => {
                let plant = g.planted.as_ref().unwrap();
                prop_assert!(validate(inst, plant).unwrap().is_empty());
                prop_assert!(ref_valid(inst, &plant.tour()));
                prop_assert!(unsat_precheck(inst).is_none());
            }
            GenMode::Unsatisfiable => {
                prop_assert!(g.planted.is_none());
                prop_assert!(unsat_precheck(inst).is_some());
                prop_assert_eq!(ref_optimum(inst).0, 0);
            }
            GenMode::DsOnly => {
                prop_assert!(inst.atomic().is_empty() && inst.soft_atomic().is_empty() && inst.disjunctive().is_empty());
                prop_assert_eq!(inst.direct_successors().len(), params.ds_count);
                prop_assert_eq!(ref_optimum(inst).1, Some(0));
            }
        }
        if params.mode == GenMode::AtomicOnly {
            prop_assert_eq!(inst.b(), 0);
        }
        // No constraint is both hard and soft.
        prop_assert!(inst.soft_atomic().iter().all(|s| !inst.atomic().contains(s)));
    }

    #[test]
    fn same_seed_same_instance(params in arb_gen_params(12)) {
        prop_assert_eq!(generate(&params).unwrap(), generate(&params).unwrap());
    }
}

#[test]
fn different_seeds_differ() {
    let a = generate(&GenParams::new(5, 10, GenMode::Satisfiable, 1)).unwrap();
    let b = generate(&GenParams::new(5, 10, GenMode::Satisfiable, 2)).unwrap();
    assert_ne!(a, b);
}

#[test]
fn bad_parameters_are_errors() {
    let mut p = GenParams::new(2, 2, GenMode::Satisfiable, 0);
    p.p_atomic = 1.5;
    assert!(matches!(generate(&p), Err(GenError::Density { name: "p_atomic", .. })));
    let mut p = GenParams::new(2, 2, GenMode::Satisfiable, 0);
    p.ds_count = 5;
    assert!(matches!(generate(&p), Err(GenError::TooManyDirectSuccessors { .. })));
    let p = GenParams::new(1, 2, GenMode::AtomicOnly, 0);
    assert_eq!(generate(&p), Err(GenError::PairsInAtomicOnly(1)));
    let p = GenParams::new(0, 1, GenMode::Unsatisfiable, 0);
    assert_eq!(generate(&p), Err(GenError::TooSmallForCycle(1)));
}
