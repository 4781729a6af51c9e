//! MiniZinc data (`.dzn`) output.
//!
//! Constraint sets become 2-D integer arrays (two or four columns) and the
//! direct successors a 1-D array. Empty sets carry explicit index sets so
//! the array dimensions are still declared.

use ctw_core::Instance;

fn array2d(rows: &[Vec<usize>], cols: usize) -> String {
    if rows.is_empty() {
        return format!("array2d(1..0, 1..{cols}, [])");
    }
    let body: Vec<String> = rows
        .iter()
        .map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(", "))
        .collect();
    format!("[| {} |]", body.join(" | "))
}

pub fn emit_dzn(inst: &Instance) -> String {
    let pairs = |cs: &[ctw_core::AtomicConstraint]| {
        let rows: Vec<Vec<usize>> = cs.iter().map(|c| vec![c.before.get(), c.after.get()]).collect();
        array2d(&rows, 2)
    };
    let disjunctive: Vec<Vec<usize>> = inst.disjunctive().iter().map(|d| d.as_tuple().to_vec()).collect();
    let ds = if inst.direct_successors().is_empty() {
        "array1d(1..0, [])".to_string()
    } else {
        let items: Vec<String> = inst.direct_successors().iter().map(|j| j.get().to_string()).collect();
        format!("[{}]", items.join(", "))
    };
    format!(
        "k = {};\nb = {};\nAtomicConstraints = {};\nDisjunctiveConstraints = {};\n\
         DirectSuccessors = {};\nSoftAtomicConstraints = {};\n",
        inst.k(),
        inst.b(),
        pairs(inst.atomic()),
        array2d(&disjunctive, 4),
        ds,
        pairs(inst.soft_atomic()),
    )
}
