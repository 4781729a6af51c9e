use std::path::{Path, PathBuf};

use ctw::core::gen::{generate, GenMode, GenParams};
use ctw::core::{fixtures, Instance};
use ctw::io::dat::{emit_dat, parse_dat, parse_dat_with_warnings, DatError, DatWarning};
use ctw::io::dzn::emit_dzn;
use ctw::io::json::{emit_json, parse_json, JsonError};
use ctw::io::{read_instance, InstanceFormat};
use proptest::prelude::*;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn generated(i: u64) -> Instance {
    let modes = [GenMode::Satisfiable, GenMode::Unsatisfiable, GenMode::DsOnly, GenMode::AtomicOnly];
    let mode = modes[i as usize % 4];
    let b = if mode == GenMode::AtomicOnly { 0 } else { (i % 7) as usize };
    let mut p = GenParams::new(b, 2 + (i % 5) as usize, mode, i);
    p.p_disjunctive = 0.1;
    p.ds_count = b / 2;
    generate(&p).unwrap()
}

/// Minimal independent reader for the arrays `emit_dzn` writes.
fn dzn_numbers(text: &str, name: &str) -> Vec<usize> {
    let stmt = text
        .split(';')
        .map(str::trim)
        .find(|s| s.split('=').next().map(str::trim) == Some(name))
        .unwrap_or_else(|| panic!("{name} missing"));
    let value = stmt.split_once('=').unwrap().1;
    let body = match value.rfind("1..") {
        // array2d(1..0, 1..4, []) and array1d(1..0, []) carry their data after the last comma.
        Some(_) if value.trim_start().starts_with("array") => value.rsplit_once(',').unwrap().1,
        _ => value,
    };
    body.split(|c: char| !c.is_ascii_digit()).filter(|s| !s.is_empty()).map(|s| s.parse().unwrap()).collect()
}

fn check_dzn(inst: &Instance) {
    let text = emit_dzn(inst);
    assert_eq!(dzn_numbers(&text, "k"), vec![inst.k()]);
    assert_eq!(dzn_numbers(&text, "b"), vec![inst.b()]);
    let pairs = |cs: &[ctw::core::AtomicConstraint]| -> Vec<usize> {
        cs.iter().flat_map(|c| [c.before.get(), c.after.get()]).collect()
    };
    assert_eq!(dzn_numbers(&text, "AtomicConstraints"), pairs(inst.atomic()));
    assert_eq!(dzn_numbers(&text, "SoftAtomicConstraints"), pairs(inst.soft_atomic()));
    let quads: Vec<usize> = inst.disjunctive().iter().flat_map(|d| d.as_tuple()).collect();
    assert_eq!(dzn_numbers(&text, "DisjunctiveConstraints"), quads);
    let ds: Vec<usize> = inst.direct_successors().iter().map(|j| j.get()).collect();
    assert_eq!(dzn_numbers(&text, "DirectSuccessors"), ds);
}

#[test]
fn r024_excerpt_parses_verbatim() {
    let text = std::fs::read_to_string(fixture("r024_excerpt.dat")).unwrap();
    let (inst, warnings) = parse_dat_with_warnings(&text).unwrap();
    assert_eq!((inst.k(), inst.b()), (26, 6));
    assert_eq!(inst.atomic().len(), 6);
    assert_eq!(inst.soft_atomic().len(), 4);
    assert_eq!(inst.disjunctive().len(), 3);
    let ds: Vec<usize> = inst.direct_successors().iter().map(|j| j.get()).collect();
    assert_eq!(ds, [1, 2, 7, 8]);
    let elided = warnings.iter().filter(|w| matches!(w, DatWarning::Elided { .. })).count();
    assert_eq!(elided, 3);
}

#[test]
fn fixtures_round_trip() {
    for name in ["worked_example.dat", "worked_example.json", "r024_excerpt.dat", "empty.dat", "single.dat"] {
        let (inst, _) = read_instance(&fixture(name)).unwrap();
        assert_eq!(parse_dat(&emit_dat(&inst)).unwrap(), inst, "{name}");
        assert_eq!(parse_json(&emit_json(&inst)).unwrap(), inst, "{name}");
        check_dzn(&inst);
    }
    let dat = read_instance(&fixture("worked_example.dat")).unwrap().0;
    let json = read_instance(&fixture("worked_example.json")).unwrap().0;
    assert_eq!(dat, json);
    assert_eq!(dat, fixtures::worked_example());
}

#[test]
fn canonical_text_is_a_fixed_point() {
    for name in ["worked_example.dat", "worked_example.json"] {
        let path = fixture(name);
        let text = std::fs::read_to_string(&path).unwrap();
        let inst = read_instance(&path).unwrap().0;
        let emitted = match InstanceFormat::from_path(&path).unwrap() {
            InstanceFormat::Json => emit_json(&inst),
            _ => emit_dat(&inst),
        };
        assert_eq!(emitted, text, "{name}");
    }
}

#[test]
fn generated_instances_round_trip() {
    for i in 0..100 {
        let inst = generated(i);
        let dat = emit_dat(&inst);
        let json = emit_json(&inst);
        assert_eq!(parse_dat(&dat).unwrap(), inst);
        assert_eq!(parse_json(&json).unwrap(), inst);
        assert_eq!(emit_dat(&parse_json(&json).unwrap()), dat);
        check_dzn(&inst);
    }
}

proptest! {
    #[test]
    fn parsers_never_panic(text in ".{0,200}") {
        let _ = parse_dat(&text);
        let _ = parse_json(&text);
    }

    #[test]
    fn dat_parser_survives_mangled_input(i in 0u64..40, cut in 0usize..400, junk in "[{}<>,;=0-9a-z .]{0,8}") {
        let mut text = emit_dat(&generated(i));
        let at = cut.min(text.len());
        text.insert_str(at, &junk);
        let _ = parse_dat(&text);
    }
}

#[test]
fn malformed_inputs_are_reported() {
    assert!(matches!(parse_dat("k = 3;"), Err(DatError::Missing("b"))));
    assert!(matches!(parse_dat("k = 3; b = 1; Foo = {};"), Err(DatError::UnknownParameter { .. })));
    assert!(matches!(parse_dat("k = 3; b = 2;"), Err(DatError::Semantic(_))));
    assert!(matches!(parse_dat("k = 3; b = 0; AtomicConstraints = {<1,9>};"), Err(DatError::Semantic(_))));
    assert!(matches!(parse_dat("k = 3;\nb = ;"), Err(DatError::Syntax { .. })));
    assert!(matches!(parse_json("{}"), Err(JsonError::Schema { .. })));
    let bad_version = emit_json(&Instance::empty()).replace("\"version\": 1", "\"version\": 9");
    assert!(matches!(parse_json(&bad_version), Err(JsonError::Version { .. })));
}
