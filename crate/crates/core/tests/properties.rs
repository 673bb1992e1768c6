use std::ops::ControlFlow;

use proptest::prelude::*;

use tt_core::abelian::{GroupSpec, ReducedGroup};
use tt_core::delta::delta;
use tt_core::graph::{complete, parse_graph, parse_graph6, to_edge_list, to_graph6, Cut, Digraph};
use tt_core::hom::{
    find_hom, for_each_hom, homotens_pair, induced_map, is_hom_induced, is_nice, nice_by_sequences, HomOptions,
    VertexMap,
};
use tt_core::search::{Completion, Search, Verdict};
use tt_core::tension::{is_tension, EdgeFunction};
use tt_core::ttmap::{
    count_tt, find_tt, for_each_tt_via_lift, g_invariant, g_invariant_by_enumeration, is_tt, is_tt_reduced,
    tt_divisor_set, EdgeMap, Girth, SearchOptions,
};

fn digraph(max_v: usize, max_e: usize) -> impl Strategy<Value = Digraph> {
    (2..=max_v).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n - 1), 0..=max_e).prop_map(move |pairs| {
            let edges = pairs.into_iter().map(|(a, b)| (a, if b >= a { b + 1 } else { b }));
            Digraph::directed(n, edges).unwrap()
        })
    })
}

/// Simple undirected graph from an adjacency bit pattern.
fn simple_graph(max_v: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_v).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
            Digraph::undirected(n, pairs.zip(bits).filter(|(_, keep)| *keep).map(|(p, _)| p)).unwrap()
        })
    })
}

fn with_map(g: Digraph, h: Digraph) -> impl Strategy<Value = (Digraph, Digraph, EdgeMap)> {
    let (m, k) = (g.edge_count(), h.edge_count().max(1));
    prop::collection::vec(0..k, m).prop_map(move |images| (g.clone(), h.clone(), EdgeMap { images }))
}

fn triple(max_v: usize, max_e: usize) -> impl Strategy<Value = (Digraph, Digraph, EdgeMap)> {
    (digraph(max_v, max_e), digraph(max_v, max_e).prop_filter("target needs an edge", |h| h.edge_count() > 0))
        .prop_flat_map(|(g, h)| with_map(g, h))
}

fn bipartite(g: &Digraph) -> bool {
    let nbrs = g.neighbour_lists();
    let mut side = vec![None; g.vertex_count()];
    for s in 0..g.vertex_count() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &nbrs[v] {
                match side[w] {
                    None => {
                        side[w] = Some(!side[v].unwrap());
                        stack.push(w);
                    }
                    Some(x) if x == side[v].unwrap() => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lift_and_edge_engines_count_alike(g in digraph(4, 5), h in digraph(3, 4), n in 2u64..=4) {
        let mut lift = 0u64;
        let st = for_each_tt_via_lift(&g, &h, n, u64::MAX, |_| { lift += 1; ControlFlow::Continue(()) }).unwrap();
        prop_assert_eq!(st, Completion::Complete);
        prop_assert_eq!(count_tt(&g, &h, ReducedGroup::Cyclic(n), u64::MAX).unwrap(), Verdict::Decided(lift));
    }

    #[test]
    fn edge_list_round_trip(g in digraph(7, 10)) {
        let back = parse_graph(&to_edge_list(&g)).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn graph6_round_trip(g in simple_graph(9)) {
        let back = parse_graph6(&to_graph6(&g).unwrap()).unwrap();
        let mut a = back.edges().to_vec();
        let mut b = g.edges().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn map_text_round_trip((g, h, f) in triple(5, 6)) {
        prop_assert_eq!(EdgeMap::parse(&f.to_text(), &g, &h).unwrap(), f);
    }

    #[test]
    fn homs_induce_tt_maps(g in digraph(4, 6), h in digraph(4, 6)) {
        let mut homs = Vec::new();
        for_each_hom(&g, &h, &HomOptions::default(), |a| { homs.push(a.to_vec()); ControlFlow::Continue(()) }).unwrap();
        for a in homs {
            let vm = VertexMap::hom(a);
            let f = induced_map(&g, &h, &vm).unwrap();
            prop_assert!(is_hom_induced(&g, &h, &f).unwrap().is_some());
            prop_assert_eq!(VertexMap::parse(&vm.to_text(), &g, &h).unwrap(), vm.clone());
            for m in [GroupSpec::cyclic(2), GroupSpec::cyclic(3), GroupSpec::integers()] {
                prop_assert!(is_tt(&g, &h, &f, &m).unwrap());
            }
        }
    }

    #[test]
    fn g_invariant_matches_circuit_enumeration(g in digraph(6, 8), n in 0u64..=4) {
        let m = if n == 0 { GroupSpec::integers() } else { GroupSpec::cyclic(n) };
        prop_assert_eq!(g_invariant(&g, &m).unwrap(), g_invariant_by_enumeration(&g, &m).unwrap());
    }

    #[test]
    fn bipartite_iff_k2_iff_no_odd_circuit(g in simple_graph(8)) {
        let b = bipartite(&g);
        prop_assert_eq!(find_hom(&g, &complete(2), &HomOptions::default()).unwrap().is_found(), b);
        prop_assert_eq!(g_invariant(&g, &GroupSpec::cyclic(2)).unwrap() == Girth::Infinite, b);
    }

    #[test]
    fn divisor_set_agrees_with_pointwise_checks((g, h, f) in triple(5, 7)) {
        let ds = tt_divisor_set(&g, &h, &f).unwrap();
        for n in 1..=12u64 {
            prop_assert_eq!(ds.contains(n), is_tt_reduced(&g, &h, &f, ReducedGroup::Cyclic(n)).unwrap(), "n = {}", n);
        }
        prop_assert_eq!(ds == tt_core::ttmap::DivisorSet::AllN, is_tt(&g, &h, &f, &GroupSpec::integers()).unwrap());
    }

    #[test]
    fn products_split((g, h, f) in triple(5, 7), a in 2u64..6, b in 2u64..6) {
        let (ma, mb) = (GroupSpec::cyclic(a), GroupSpec::cyclic(b));
        let both = ma.product(&mb).unwrap();
        prop_assert_eq!(
            is_tt(&g, &h, &f, &both).unwrap(),
            is_tt(&g, &h, &f, &ma).unwrap() && is_tt(&g, &h, &f, &mb).unwrap()
        );
    }

    #[test]
    fn tt_maps_compose(
        (g, h, f) in triple(4, 5),
        k in digraph(3, 4).prop_filter("target needs an edge", |k| k.edge_count() > 0),
        n in 2u64..=3,
    ) {
        let group = ReducedGroup::Cyclic(n);
        let mut second = Vec::new();
        for_each_tt_via_lift(&h, &k, n, u64::MAX, |m| { second.push(m.clone()); ControlFlow::Continue(()) }).unwrap();
        if is_tt_reduced(&g, &h, &f, group).unwrap() {
            for s in second {
                prop_assert!(is_tt_reduced(&g, &k, &f.then(&s), group).unwrap());
            }
        }
    }

    #[test]
    fn z2_tensions_are_cut_indicators(g in simple_graph(6), bits in any::<u32>()) {
        let tau = EdgeFunction::new((0..g.edge_count()).map(|e| (bits >> (e % 32) & 1) as i64).collect());
        let support: Vec<usize> = (0..g.edge_count()).filter(|&e| tau.get(e) == 1).collect();
        let n = g.vertex_count();
        let is_cut = (0u32..1 << n).any(|mask| {
            let side: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let mut cut: Vec<usize> = Cut::from_vertices(n, &side).edges(&g).into_iter().map(|(e, _)| e).collect();
            cut.sort_unstable();
            cut == support
        });
        prop_assert_eq!(is_tension(&g, &tau, ReducedGroup::Cyclic(2)).unwrap(), is_cut);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn nice_matches_vertex_sequences(g in simple_graph(8).prop_filter("dense", |g| g.edge_count() >= 10)) {
        prop_assert_eq!(is_nice(&g), nice_by_sequences(&g).unwrap());
    }

    #[test]
    fn tt2_into_h_iff_hom_into_delta(g in simple_graph(5), h in simple_graph(4).prop_filter("edge", |h| h.edge_count() > 0)) {
        let via_delta = find_hom(&g, &delta(&h).unwrap(), &HomOptions::default()).unwrap().is_found();
        let direct = find_tt(&g, &h, &GroupSpec::cyclic(2), &SearchOptions::default()).unwrap();
        prop_assert!(direct.is_decided());
        prop_assert_eq!(direct.is_found(), via_delta);
    }

    #[test]
    fn nice_sources_are_homotens(k in 5usize..=6, h in simple_graph(7)) {
        let r = homotens_pair(&complete(k), &h, 10_000_000).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Decided(true));
    }
}

#[test]
fn nice_condition_four_on_glued_cliques() {
    // two K_5 sharing only an edge: every K_4 extends, but the two families never meet in a triangle
    let mut edges = Vec::new();
    for vs in [[0, 1, 2, 3, 4], [0, 1, 5, 6, 7]] {
        for i in 0..5 {
            for j in i + 1..5 {
                edges.push((vs[i], vs[j]));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let g = Digraph::undirected(8, edges).unwrap();
    assert!(!is_nice(&g));
    assert!(!nice_by_sequences(&g).unwrap());
    assert!(matches!(find_hom(&g, &complete(5), &HomOptions::default()).unwrap(), Search::Found(_)));
}
