mod common;

use proptest::prelude::*;
use rigidcay::flex::{build_flex, evaluate};
use rigidcay::graph::{cayley_graph, SimpleGraph};
use rigidcay::group::{direct_product_of, make_cyclic, make_sl, Capacity, FiniteGroup, GeneratorSet, GroupElement};
use rigidcay::io::{graph_from_json, graph_to_json};
use rigidcay::nac::{generator_class_coloring, search_nac, verdict, EdgeColoring, SearchMode, SearchOptions};
use rigidcay::rigidity::pebble_game_23;

fn arb_graph(max_n: usize) -> impl Strategy<Value = SimpleGraph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let m = pairs.len();
            (Just(n), Just(pairs), proptest::collection::vec(any::<bool>(), m))
        })
        .prop_map(|(n, pairs, keep)| {
            let edges = pairs.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e);
            SimpleGraph::new(n, edges).unwrap()
        })
        .prop_filter("connected with an edge", |g| g.edge_count() > 0 && g.is_connected())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn verdict_matches_cycle_and_path_oracles(g in arb_graph(8), seed in any::<u64>()) {
        let m = g.edge_count();
        let blue = seed & ((1u64 << m) - 1);
        let cycles = common::cycle_masks(&g);
        let v = verdict(&g, &EdgeColoring::from_blue_mask(m, blue)).unwrap();
        prop_assert_eq!(v.is_nac, common::nac_by_cycles(&cycles, m, blue));
        prop_assert_eq!(v.is_good, common::good_by_paths(&g, blue));
        prop_assert!(!v.is_good || v.is_nac);
    }

    #[test]
    fn pebble_rank_matches_greedy_oracle(g in arb_graph(8)) {
        prop_assert_eq!(pebble_game_23(&g).rank, common::max_sparse_greedy(&g));
    }

    #[test]
    fn count_all_matches_unpruned(g in arb_graph(6)) {
        prop_assume!(g.edge_count() <= 12);
        let outcome = search_nac(&g, &SearchOptions::new(SearchMode::CountAll)).unwrap();
        prop_assert_eq!((outcome.nac_count, outcome.good_count), common::unpruned_counts(&g));
    }

    #[test]
    fn parallel_search_agrees(g in arb_graph(7)) {
        let serial = search_nac(&g, &SearchOptions::new(SearchMode::CountAll)).unwrap();
        let parallel = search_nac(&g, &SearchOptions::new(SearchMode::CountAll).workers(4)).unwrap();
        prop_assert_eq!(serial.nac_count, parallel.nac_count);
        prop_assert_eq!(serial.good_count, parallel.good_count);
    }

    #[test]
    fn search_witnesses_are_valid(g in arb_graph(8)) {
        for mode in [SearchMode::FirstAny, SearchMode::FirstGood] {
            let outcome = search_nac(&g, &SearchOptions::new(mode)).unwrap();
            if let Some(c) = outcome.first() {
                let v = verdict(&g, c).unwrap();
                prop_assert!(v.is_nac);
                prop_assert!(mode == SearchMode::FirstAny || v.is_good);
            } else {
                prop_assert!(outcome.complete);
            }
        }
    }

    #[test]
    fn graph_json_round_trip(g in arb_graph(8)) {
        let text = graph_to_json(&g).unwrap();
        let back = graph_from_json(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(graph_to_json(&back).unwrap(), text);
    }

    #[test]
    fn rigid_motions_preserve_distances(theta in 0.0..6.3f64, dx in -5.0..5.0f64, dy in -5.0..5.0f64, angle in 0.0..6.3f64) {
        let cayley = cayley_graph(&GeneratorSet::parse(&make_cyclic(6).unwrap(), "2,3").unwrap().symmetric_closure()).unwrap();
        let coloring = generator_class_coloring(&cayley, &[GroupElement(2)]).unwrap();
        let flex = build_flex(&cayley.graph, &coloring).unwrap();
        let moved = flex.transformed(theta, [dx, dy]);
        let (a, b) = (evaluate(&flex, angle), evaluate(&moved, angle));
        for u in 0..6 {
            for v in 0..6 {
                let d = |p: &[[f64; 2]]| (p[u][0] - p[v][0]).hypot(p[u][1] - p[v][1]);
                prop_assert!((d(&a.positions) - d(&b.positions)).abs() < 1e-9);
            }
        }
    }
}

fn check_axioms(g: &FiniteGroup) {
    let e = g.identity();
    let elements: Vec<GroupElement> = g.elements().collect();
    for &a in &elements {
        assert_eq!(g.multiply(a, e), a);
        assert_eq!(g.multiply(e, a), a);
        assert_eq!(g.multiply(a, g.invert(a)), e);
        assert_eq!(g.power(a, g.element_order(a)), e);
    }
    // associativity on a deterministic sample of triples
    let step = (elements.len() / 17).max(1);
    for a in elements.iter().step_by(step) {
        for b in elements.iter().step_by(step) {
            for c in elements.iter().step_by(step) {
                assert_eq!(g.multiply(g.multiply(*a, *b), *c), g.multiply(*a, g.multiply(*b, *c)));
            }
        }
    }
}

#[test]
fn group_axioms() {
    check_axioms(&make_cyclic(30).unwrap());
    check_axioms(&make_sl(2, 3).unwrap());
    check_axioms(&make_sl(3, 2).unwrap());
    check_axioms(&make_sl(2, 5).unwrap());
    let product = direct_product_of(
        vec![make_cyclic(4).unwrap(), make_sl(2, 2).unwrap(), make_cyclic(3).unwrap()],
        Capacity::default(),
    )
    .unwrap();
    check_axioms(&product);
    assert!(!product.is_abelian());
}

#[test]
fn non_congruence_with_two_components_per_color() {
    // every NAC-coloring of these graphs with ≥ 2 red and ≥ 2 blue components gives a non-trivial flex
    for (n, gens) in [(6, "2,3"), (12, "2,3"), (15, "3,5")] {
        let g = make_cyclic(n).unwrap();
        let cayley = cayley_graph(&GeneratorSet::parse(&g, gens).unwrap().symmetric_closure()).unwrap();
        let all = search_nac(&cayley.graph, &SearchOptions::new(SearchMode::EnumerateAll)).unwrap();
        assert!(all.complete && !all.colorings.is_empty());
        for c in &all.colorings {
            let v = verdict(&cayley.graph, c).unwrap();
            if v.red_components >= 2 && v.blue_components >= 2 {
                let flex = build_flex(&cayley.graph, c).unwrap();
                assert!(flex.max_distance_change(0.0, std::f64::consts::PI / 3.0) > 1e-3);
            }
        }
    }
}
