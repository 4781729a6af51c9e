use ctw_core::graph::DiGraph;
use ctw_core::oracle::brute_mas;
use ctw_core::reduce::{extract_mas, mas_to_ctw};
use ctw_core::solve::solve;
use ctw_core::{SolveState, SolverConfig};
use proptest::prelude::*;

/// Kahn's algorithm, written out again so the check does not trust the library.
fn acyclic(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0; n + 1];
    for &(_, w) in edges {
        indeg[w] += 1;
    }
    let mut ready: Vec<usize> = (1..=n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = ready.pop() {
        seen += 1;
        for &(x, w) in edges {
            if x == v {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
    }
    seen == n
}

/// Largest acyclic edge subset, by trying every subset.
fn subset_mas(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut best = 0;
    for mask in 0u32..1 << edges.len() {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let sub: Vec<_> = (0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
        if acyclic(n, &sub) {
            best = size;
        }
    }
    best
}

fn all_arcs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|v| (1..=n).filter(move |&w| w != v).map(move |w| (v, w))).collect()
}

fn check(g: &DiGraph) {
    let n = g.vertex_count();
    let edges: Vec<_> = g.edges().collect();
    let expected = subset_mas(n, &edges);
    let inst = mas_to_ctw(g);
    assert_eq!((inst.k(), inst.b()), (n, 0));
    assert_eq!(inst.soft_atomic().len(), edges.len());
    let r = solve(&inst, &SolverConfig::default().with_time_limit_ms(60_000));
    assert_eq!(r.state, SolveState::Optimal);
    let (p, c) = r.best.unwrap();
    assert_eq!((c.s, c.m, c.l), (0, 0, 0));
    assert_eq!(edges.len() - c.n as usize, expected, "{edges:?}");
    let kept = extract_mas(g, &p).unwrap();
    assert_eq!(kept.len(), expected);
    assert!(kept.iter().all(|e| edges.contains(e)));
    assert!(acyclic(n, &kept));
    assert_eq!(brute_mas(g, 8).unwrap(), expected);
}

#[test]
fn every_graph_up_to_four_vertices() {
    for n in 0..=4 {
        let arcs = all_arcs(n);
        for mask in 0u32..1 << arcs.len() {
            let edges = (0..arcs.len()).filter(|i| mask >> i & 1 == 1).map(|i| arcs[i]);
            check(&DiGraph::from_edges(n, edges).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn random_graphs_up_to_six_vertices(n in 2usize..=6, picks in prop::collection::vec(any::<prop::sample::Index>(), 0..14)) {
        let arcs = all_arcs(n);
        let g = DiGraph::from_edges(n, picks.iter().map(|i| *i.get(&arcs))).unwrap();
        check(&g);
    }
}

#[test]
fn extraction_checks_dimensions() {
    let g = DiGraph::from_edges(3, [(1, 2)]).unwrap();
    let p = ctw_core::Permutation::identity(2);
    assert!(extract_mas(&g, &p).is_err());
}
