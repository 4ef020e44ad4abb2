use proptest::prelude::*;
use proptest::sample::subsequence;

use sizeramsey::arrowing::{arrows, arrows_with, brute_force_arrows, verify_colouring, ArrowDecision, EngineConfig};
use sizeramsey::formulas::{
    audit_one, choose2, formula_row, pikhurko_lower_bound, ramsey_star_clique, rhat_star, Grid, Inequality, NPolicy,
    Params,
};
use sizeramsey::graph::{canonical_form, parse_edge_list, parse_graph6, to_edge_list, to_graph6};
use sizeramsey::lemmas::{disjoint_packing, good_colouring, peel_t, Packing};
use sizeramsey::Graph;

fn all_pairs(order: usize) -> Vec<(usize, usize)> {
    (0..order).flat_map(|u| (u + 1..order).map(move |v| (u, v))).collect()
}

fn graph_on(order: usize) -> impl Strategy<Value = Graph> {
    let pairs = all_pairs(order);
    let len = pairs.len();
    subsequence(pairs, 0..=len).prop_map(move |edges| Graph::from_edges(order, &edges).unwrap())
}

fn small_graph(max_order: usize) -> impl Strategy<Value = Graph> {
    (1..=max_order).prop_flat_map(graph_on)
}

fn graph_with_edges(order: usize, min_edges: usize, max_edges: usize) -> impl Strategy<Value = Graph> {
    let pairs = all_pairs(order);
    let max_edges = max_edges.min(pairs.len());
    subsequence(pairs, min_edges.min(max_edges)..=max_edges).prop_map(move |edges| Graph::from_edges(order, &edges).unwrap())
}

fn relabelled(order: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    (graph_on(order), Just((0..order).collect::<Vec<_>>()).prop_shuffle())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn complement_is_an_involution(g in small_graph(12)) {
        let c = g.complement();
        prop_assert_eq!(c.edge_count() + g.edge_count(), g.order() * (g.order() - 1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn canonical_form_ignores_labels((g, perm) in (1usize..=10).prop_flat_map(relabelled)) {
        let h = g.permute(&perm).unwrap();
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
    }

    #[test]
    fn graph6_round_trip(g in small_graph(20)) {
        prop_assert_eq!(parse_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trip(g in small_graph(16)) {
        prop_assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn engine_agrees_with_oracle(g in (2usize..=7).prop_flat_map(|o| graph_with_edges(o, 0, 16)), pick in 0usize..3) {
        let (k, n) = [(2, 3), (3, 3), (2, 4)][pick];
        let d = arrows(&g, k, n).unwrap();
        prop_assert_eq!(d.arrows, brute_force_arrows(&g, k, n).unwrap());
        if let Some(c) = &d.certificate {
            prop_assert!(verify_colouring(c, k, n).unwrap().is_good());
        }
    }

    #[test]
    fn arrowing_is_monotone(g in graph_on(7), extra in prop::collection::vec((0usize..7, 0usize..7), 1..4)) {
        let mut big = g.clone();
        for (u, v) in extra {
            if u != v && !big.has_edge(u, v) {
                big.add_edge(u, v).unwrap();
            }
        }
        for (k, n) in [(2, 3), (3, 3)] {
            if arrows(&g, k, n).unwrap().arrows {
                prop_assert!(arrows(&big, k, n).unwrap().arrows);
            }
        }
    }

    #[test]
    fn isolated_vertices_do_not_matter(g in small_graph(7), extra in 1usize..4) {
        let padded = g.disjoint_union(&Graph::empty(extra).unwrap()).unwrap();
        for (k, n) in [(2, 3), (3, 3), (2, 4)] {
            prop_assert_eq!(arrows(&g, k, n).unwrap().arrows, arrows(&padded, k, n).unwrap().arrows);
        }
    }

    #[test]
    fn two_clique_rule(g in small_graph(9), k in 2usize..5) {
        let config = EngineConfig { max_edges: 64, ..EngineConfig::default() };
        prop_assert_eq!(arrows_with(&g, k, 2, &config).unwrap().arrows, g.max_degree() >= k);
    }

    #[test]
    fn arrowing_graphs_meet_edge_lower_bound(g in (4usize..=7).prop_flat_map(graph_on), pick in 0usize..3) {
        let (k, n) = [(2, 3), (3, 3), (2, 4)][pick];
        if arrows(&g, k, n).unwrap().arrows {
            prop_assert!(g.edge_count() as u64 >= pikhurko_lower_bound(k as u64, n as u64).unwrap());
        }
    }

    #[test]
    fn good_colouring_matches_oracle(g in (5usize..=6).prop_flat_map(|o| graph_with_edges(o, 4, 15))) {
        let built = good_colouring(&g, 2, 3).unwrap();
        let arrowing = brute_force_arrows(&g, 2, 3).unwrap();
        if let Some(c) = &built {
            prop_assert!(!arrowing);
            prop_assert!(verify_colouring(c, 2, 3).unwrap().is_good());
            prop_assert_eq!(c.host(), &g);
        }
        if arrowing {
            prop_assert!(built.is_none());
        }
    }

    #[test]
    fn peel_splits_the_graph(g in graph_on(8), k in 2usize..4) {
        if let Some(p) = peel_t(&g, k).unwrap() {
            prop_assert!(p.verify(&g, k));
            prop_assert!(p.t.union(p.b) == g.vertices());
            prop_assert!(p.t.iter().all(|v| g.degree_into(v, p.b) >= k));
            prop_assert!(p.b.iter().all(|v| g.degree_into(v, p.b) < k));
        }
    }

    #[test]
    fn rhat_star_below_complete_graph(k in 2u64..=12, n in 2u64..=12) {
        let p = Params::new(k, n).unwrap();
        prop_assert!(rhat_star(p).unwrap() <= choose2(ramsey_star_clique(p).unwrap()).unwrap());
    }

    #[test]
    fn formula_row_json_round_trip(k in 2u64..=40, n in 2u64..=400) {
        let row = formula_row(Params::new(k, n).unwrap()).unwrap();
        let text = serde_json::to_string(&row).unwrap();
        prop_assert_eq!(serde_json::from_str::<sizeramsey::formulas::FormulaRow>(&text).unwrap(), row);
    }

    #[test]
    fn decision_json_round_trip(g in small_graph(7)) {
        let d = arrows(&g, 2, 3).unwrap();
        let text = serde_json::to_string(&d).unwrap();
        prop_assert_eq!(serde_json::from_str::<ArrowDecision>(&text).unwrap(), d);
    }

    #[test]
    fn graph_json_round_trip(g in small_graph(20)) {
        let text = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<Graph>(&text).unwrap(), g);
    }
}

// Host on R + t vertices, k = 2, n = 11: R = 21, R' = 11, f = 1.
fn packing_host() -> impl Strategy<Value = (Graph, usize)> {
    (0usize..=1).prop_flat_map(|t| {
        let threshold = 21 * t + t * t.saturating_sub(1) / 2 + 11;
        graph_with_edges(21 + t, threshold, threshold + 40).prop_map(move |g| (g, t))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn packing_fuzz((h, t) in packing_host()) {
        let packing = disjoint_packing(&h, 2, 11, t).unwrap();
        prop_assert_eq!(packing.parts.len(), t + 1);
        prop_assert!(packing.verify());
        let text = serde_json::to_string(&packing).unwrap();
        prop_assert_eq!(serde_json::from_str::<Packing>(&text).unwrap(), packing);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn audit_report_json_round_trip(k_min in 2u64..6, span in 0u64..4, pick in 0usize..Inequality::ALL.len()) {
        let grid = Grid::new(k_min, k_min + span, NPolicy { window: 10, ..NPolicy::default() });
        let report = audit_one(Inequality::ALL[pick], &grid).unwrap();
        prop_assert!(report.is_clean());
        let text = serde_json::to_string(&report).unwrap();
        let back: sizeramsey::formulas::AuditReport = serde_json::from_str(&text).unwrap();
        prop_assert_eq!((back.inequality, back.points, back.violations), (report.inequality, report.points, report.violations));
    }
}
