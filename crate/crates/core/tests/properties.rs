mod common;

use common::arb_graph;
use girthcycles::census::{canonical_cycle, count_cycles, oracle_count_cycles, DEFAULT_BUDGET};
use girthcycles::graph::{parse_edge_list, write_edge_list};
use girthcycles::reduction::{bipartite_half, prune_min_degree, prune_min_degree_in_order};
use girthcycles::{Vertex, VertexSet};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn census_matches_oracle(g in arb_graph(9)) {
        let fast = count_cycles(&g, 9, DEFAULT_BUDGET).unwrap();
        let slow = oracle_count_cycles(&g, 9).unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn girth_is_shortest_census_length(g in arb_graph(10)) {
        let census = oracle_count_cycles(&g, 10).unwrap();
        prop_assert_eq!(g.girth(), census.counts.keys().next().copied());
    }

    #[test]
    fn peeling_postconditions(g in arb_graph(16), t in 0.0f64..5.0, seed in any::<u64>()) {
        let r = prune_min_degree(&g, t);
        if r.graph.num_vertices() > 0 {
            prop_assert!(r.graph.min_degree() as f64 >= t);
        }
        let floor = g.num_edges() as f64 - g.num_vertices() as f64 * t;
        prop_assert!(r.graph.num_edges() as f64 >= floor);

        let again = prune_min_degree(&r.graph, t);
        prop_assert_eq!(again.graph.num_vertices(), r.graph.num_vertices());
        prop_assert_eq!(again.stage.iterations, 0);

        let mut order: Vec<Vertex> = g.vertices().collect();
        let mut state = seed;
        for i in (1..order.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (state >> 33) as usize % (i + 1));
        }
        let kept = prune_min_degree_in_order(&g, t, &order);
        let expected = VertexSet::from_vertices(g.num_vertices(), r.new_to_old.iter().copied());
        prop_assert_eq!(kept, expected);
    }

    #[test]
    fn peeling_is_monotone(g in arb_graph(16), t1 in 0.0f64..4.0, dt in 0.0f64..2.0) {
        let low = prune_min_degree(&g, t1);
        let high = prune_min_degree(&g, t1 + dt);
        let low_set = VertexSet::from_vertices(g.num_vertices(), low.new_to_old.iter().copied());
        let high_set = VertexSet::from_vertices(g.num_vertices(), high.new_to_old.iter().copied());
        prop_assert!(high_set.is_subset(&low_set));
    }

    #[test]
    fn bipartite_half_keeps_half(g in arb_graph(16)) {
        let r = bipartite_half(&g);
        prop_assert!(r.graph.is_bipartite());
        prop_assert!(2 * r.graph.num_edges() >= g.num_edges());
        for (u, v) in r.graph.edges() {
            prop_assert!(g.has_edge(u, v));
        }
        if g.is_bipartite() {
            prop_assert_eq!(r.graph.num_edges(), g.num_edges());
        }
    }

    #[test]
    fn induced_subgraphs_never_lower_girth(g in arb_graph(14), mask in any::<u16>()) {
        let keep = VertexSet::from_vertices(
            g.num_vertices(),
            g.vertices().filter(|&v| mask >> (v % 16) & 1 == 1),
        );
        let sub = g.induced_subgraph(&keep).graph;
        if let Some(girth) = sub.girth() {
            prop_assert!(g.girth().is_some_and(|orig| orig <= girth));
        }
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph(20)) {
        let text = write_edge_list(&g, &["fixture".to_string()]);
        let parsed = parse_edge_list(&text).unwrap();
        prop_assert_eq!(&parsed.graph, &g);
        prop_assert_eq!(write_edge_list(&parsed.graph, &parsed.comments), text);
    }

    #[test]
    fn canonical_form_ignores_rotation_and_reflection(
        cycle in proptest::sample::subsequence((0..30u32).collect::<Vec<_>>(), 3..10).prop_shuffle(),
        shift in 0usize..10,
        reverse in any::<bool>(),
    ) {
        let mut moved = cycle.clone();
        moved.rotate_left(shift % cycle.len());
        if reverse {
            moved.reverse();
        }
        let canon = canonical_cycle(&cycle);
        prop_assert_eq!(canonical_cycle(&moved), canon.clone());
        prop_assert_eq!(canon[0], *cycle.iter().min().unwrap());
        prop_assert!(canon[1] < canon[canon.len() - 1]);
    }
}
