//! Property tests against brute-force oracles.

use std::sync::Arc;

use proptest::prelude::*;

use lltile::graph::{count_homs, hom_exists, Graph, LabelGraph};
use lltile::lamplighter::{ball, evaluate_word, invert_word, tetrahedron, GroupPoint};
use lltile::reduction::HalfPlaneTileset;
use lltile::sat::{count_exact, encode, enumerate, export_dimacs, parse_dimacs, validate, SolveResult, Solver};
use lltile::tiles::{wang_to_tetra, Tileset, WangTileset};

fn word() -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('a'), Just('A'), Just('b'), Just('B')], 0..12).prop_map(|v| v.into_iter().collect())
}

proptest! {
    #[test]
    fn words_times_inverses_are_trivial(w in word()) {
        let g = evaluate_word(&format!("{w}{}", invert_word(&w))).unwrap();
        prop_assert_eq!(g, GroupPoint::identity());
        let h = evaluate_word(&w).unwrap();
        prop_assert_eq!(h.inverse().unwrap(), evaluate_word(&invert_word(&w)).unwrap());
    }

    #[test]
    fn lamps_round_trip(marker in -5i64..5, lamps in proptest::collection::btree_set(-6i64..6, 0..6)) {
        let g = GroupPoint::from_lamps(marker, lamps.iter().copied());
        prop_assert_eq!(g.lamps(), lamps.into_iter().collect::<Vec<_>>());
        prop_assert_eq!(g.marker, marker);
    }

    #[test]
    fn short_words_land_in_balls(w in word()) {
        let g = evaluate_word(&w).unwrap();
        prop_assert!(ball(w.len()).unwrap().vertex(&g).is_some());
    }
}

/// Brute-force satisfiability over all assignments.
fn brute_sat(n: usize, clauses: &[Vec<i32>]) -> bool {
    (0..1u32 << n).any(|m| clauses.iter().all(|c| c.iter().any(|&l| ((m >> (l.unsigned_abs() - 1)) & 1 == 1) == (l > 0))))
}

fn cnf() -> impl Strategy<Value = (usize, Vec<Vec<i32>>)> {
    (1usize..9).prop_flat_map(|n| {
        let lit = (1..=n as i32, any::<bool>()).prop_map(|(v, s)| if s { v } else { -v });
        (Just(n), proptest::collection::vec(proptest::collection::vec(lit, 1..4), 0..30))
    })
}

proptest! {
    #[test]
    fn solver_agrees_with_brute_force((n, clauses) in cnf()) {
        let mut s = Solver::new(n);
        for c in &clauses {
            s.add_clause(c);
        }
        match s.solve() {
            SolveResult::Sat(m) => {
                prop_assert!(brute_sat(n, &clauses));
                for c in &clauses {
                    prop_assert!(c.iter().any(|&l| m[l.unsigned_abs() as usize - 1] == (l > 0)), "model violates {:?}", c);
                }
            }
            SolveResult::Unsat => prop_assert!(!brute_sat(n, &clauses)),
            SolveResult::Unknown => prop_assert!(false, "no answer without a limit"),
        }
    }
}

fn wang() -> impl Strategy<Value = WangTileset> {
    (1usize..4, 1usize..3).prop_flat_map(|(n, k)| {
        proptest::collection::vec([0..k, 0..k, 0..k, 0..k], n).prop_map(move |tiles| {
            let colors = (0..k).map(|c| format!("c{c}")).collect();
            let names = (0..tiles.len()).map(|i| format!("t{i}")).collect();
            WangTileset::new(colors, tiles, names).unwrap()
        })
    })
}

/// Number of valid tilings, by checking every assignment.
fn brute_count(w: &lltile::lamplighter::Window, ts: &Tileset) -> u128 {
    let (n, d) = (w.len(), ts.ntiles());
    let mut x = vec![0; n];
    let mut count = 0;
    loop {
        if validate(w, ts, &[], &x).unwrap().is_empty() {
            count += 1;
        }
        let mut i = 0;
        while i < n && x[i] + 1 == d {
            x[i] = 0;
            i += 1;
        }
        if i == n {
            return count;
        }
        x[i] += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn counting_agrees_with_brute_force(ws in wang()) {
        let w = tetrahedron(0, 1).unwrap();
        let ts = Tileset::Wang(ws.clone());
        let brute = brute_count(&w, &ts);
        prop_assert_eq!(count_exact(&w, &ts, &[]).unwrap(), brute);
        prop_assert_eq!(enumerate(&encode(&w, &ts, &[]).unwrap(), 1 << 20).unwrap().len() as u128, brute);
        prop_assert_eq!(count_exact(&w, &Tileset::Tetra(wang_to_tetra(&ws)), &[]).unwrap(), brute);
    }

    #[test]
    fn dimacs_round_trip(ws in wang()) {
        let cnf = encode(&ball(1).unwrap(), &Tileset::Wang(ws), &[]).unwrap();
        let back = parse_dimacs(&export_dimacs(&cnf)).unwrap();
        prop_assert_eq!(back.nvars, cnf.nvars);
        prop_assert_eq!(back.clauses, cnf.clauses.clone());
    }

    #[test]
    fn tileset_text_round_trip(ws in wang()) {
        let ts = Tileset::Wang(ws);
        let (back, warnings) = Tileset::parse(&ts.to_text().unwrap(), true).unwrap();
        prop_assert!(warnings.is_empty());
        prop_assert_eq!(back.to_text().unwrap(), ts.to_text().unwrap());
    }

    #[test]
    fn halfplane_text_round_trip(tiles in proptest::collection::vec([0usize..3, 0..3, 0..3, 0..3], 1..5), seed in 0usize..5) {
        let seed = seed % tiles.len();
        let t = HalfPlaneTileset::new(vec!["x".into(), "y".into(), "z".into()], tiles, seed).unwrap();
        prop_assert_eq!(HalfPlaneTileset::parse(&t.to_text()).unwrap(), t);
    }
}

/// Oriented label graph with vertices p, q and edges p→p, p→q, q→p.
fn small_target() -> Arc<Graph> {
    let mut g = Graph::new();
    g.add_vertex("p");
    g.add_vertex("q");
    g.add_edge(0, 0, "pp");
    g.add_edge(0, 1, "pq");
    g.add_edge(1, 0, "qp");
    Arc::new(g)
}

fn labelled(vlab: Vec<usize>, picks: Vec<(usize, usize, usize)>) -> LabelGraph {
    let target = small_target();
    let mut g = LabelGraph::new(target.clone());
    for (i, &l) in vlab.iter().enumerate() {
        g.add_vertex(format!("v{i}"), l);
    }
    for (i, (t, h, c)) in picks.into_iter().enumerate() {
        let (t, h, c) = (t % vlab.len(), h % vlab.len(), c % 3);
        if target.edges[c] == (vlab[t], vlab[h]) {
            g.add_edge(t, h, format!("e{i}"), c);
        }
    }
    g
}

fn graph(max_v: usize) -> impl Strategy<Value = LabelGraph> {
    (proptest::collection::vec(0usize..2, 1..=max_v), proptest::collection::vec((0usize..8, 0usize..8, 0usize..3), 0..7))
        .prop_map(|(v, e)| labelled(v, e))
}

/// Morphisms counted by trying every vertex map and multiplying the
/// number of choices per edge.
fn brute_homs(g: &LabelGraph, f: &LabelGraph) -> u64 {
    let (n, m) = (g.nverts(), f.nverts());
    let mut total = 0;
    let mut phi = vec![0; n];
    'maps: loop {
        if (0..n).all(|v| g.vlab[v] == f.vlab[phi[v]]) {
            let mut prod = 1u64;
            for e in 0..g.nedges() {
                let (t, h) = g.graph.edges[e];
                let k = (0..f.nedges()).filter(|&x| f.elab[x] == g.elab[e] && f.graph.edges[x] == (phi[t], phi[h])).count() as u64;
                prod *= k;
            }
            total += prod;
        }
        let mut i = 0;
        while i < n && phi[i] + 1 == m {
            phi[i] = 0;
            i += 1;
        }
        if i == n || m == 0 {
            break 'maps;
        }
        phi[i] += 1;
    }
    total
}

proptest! {
    #[test]
    fn hom_counts_agree_with_brute_force(g in graph(4), f in graph(3)) {
        let brute = brute_homs(&g, &f);
        prop_assert_eq!(count_homs(&g, &f).unwrap(), brute);
        prop_assert_eq!(hom_exists(&g, &f).unwrap(), brute > 0);
    }
}
