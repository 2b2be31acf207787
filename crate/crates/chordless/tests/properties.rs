use std::collections::BTreeMap;

use proptest::prelude::*;

use chordless::contraction::matchings_from_edge_coloring;
use chordless::corpus::{random_chordless, random_matching};
use chordless::degeneracy::{degeneracy_ordering, greedy_color, PeelOutcome};
use chordless::edge_coloring::edge_color_vizing;
use chordless::graph::{full_subdivision, load_edge_list, Graph};
use chordless::strong_coloring::{conflict_graph, strong_color_chordless, verify_strong};
use chordless::structure::{blocks, is_chordless};
use chordless::{contract, DEFAULT_BUDGET_NODES};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |mask| {
            Graph::from_edges(
                n,
                pairs
                    .iter()
                    .zip(mask.iter())
                    .filter(|(_, &keep)| keep)
                    .map(|(&e, _)| e),
            )
        })
    })
}

proptest! {
    #[test]
    fn load_after_serialize_relabels_first_seen(g in arb_graph(10)) {
        // the loader assigns ids in first-seen order, so a reload equals
        // the original up to exactly that relabeling
        let reloaded = load_edge_list(&g.to_edge_list()).unwrap().graph.into_unlabelled();
        let mut relabel = BTreeMap::new();
        for e in g.edges() {
            for v in e.endpoints() {
                let next = relabel.len();
                relabel.entry(v).or_insert(next);
            }
        }
        let expected: Vec<(usize, usize)> = g
            .edges()
            .map(|e| {
                let (a, b) = (relabel[&e.u()], relabel[&e.v()]);
                (a.min(b), a.max(b))
            })
            .collect();
        let expected = Graph::from_edges(relabel.len(), expected);
        prop_assert_eq!(reloaded.to_edge_list(), expected.to_edge_list());
        prop_assert_eq!(reloaded.m(), g.m());
        // degree multiset survives the relabeling
        let mut d1: Vec<usize> = g.vertices().map(|v| g.degree(v)).filter(|&d| d > 0).collect();
        let mut d2: Vec<usize> = reloaded.vertices().map(|v| reloaded.degree(v)).collect();
        d1.sort_unstable();
        d2.sort_unstable();
        prop_assert_eq!(d1, d2);
    }

    #[test]
    fn full_subdivision_shape_and_chordlessness(g in arb_graph(9)) {
        let s = full_subdivision(&g);
        prop_assert_eq!(s.n(), g.n() + g.m());
        prop_assert_eq!(s.m(), 2 * g.m());
        prop_assert!(is_chordless(&s).is_ok());
        if g.m() > 0 {
            prop_assert_eq!(s.max_degree(), g.max_degree().max(2));
        }
    }

    #[test]
    fn blocks_partition_edges(g in arb_graph(10)) {
        let d = blocks(&g);
        let mut seen = BTreeMap::new();
        for b in &d.blocks {
            for e in &b.edges {
                *seen.entry(*e).or_insert(0usize) += 1;
            }
        }
        prop_assert_eq!(seen.len(), g.m());
        prop_assert!(seen.values().all(|&c| c == 1));
        prop_assert!(seen.keys().all(|e| g.contains(*e)));
    }

    #[test]
    fn greedy_respects_degeneracy_bound(g in arb_graph(10), k in 1usize..5) {
        if let PeelOutcome::Ordered(o) = degeneracy_ordering(&g, k) {
            let c = greedy_color(&g, &o).unwrap();
            prop_assert!(c.is_proper(&g));
            prop_assert!(c.colors_used <= k + 1);
        }
    }

    #[test]
    fn vizing_uses_at_most_delta_plus_one(g in arb_graph(9)) {
        if g.m() > 0 {
            let f = edge_color_vizing(&g);
            prop_assert!(f.validate(&g).is_ok());
            prop_assert!(f.colors_used() <= g.max_degree() + 1);
        }
    }

    #[test]
    fn coloring_classes_are_matchings(g in arb_graph(9)) {
        if g.m() > 0 {
            let f = edge_color_vizing(&g);
            let ms = matchings_from_edge_coloring(&g, &f).unwrap();
            let total: usize = ms.iter().map(|m| m.len()).sum();
            prop_assert_eq!(total, g.m());
        }
    }

    #[test]
    fn red_subgraph_is_sparse(seed in 0u64..200) {
        let g = random_chordless(8, 12, seed);
        let m = random_matching(&g, 700, seed);
        if !m.is_empty() {
            let cg = contract(&g, &m).unwrap();
            let red: Vec<_> = cg.classes().filter(|(_, c)| c.is_red()).collect();
            let mut verts = std::collections::BTreeSet::new();
            for (e, _) in &red {
                verts.insert(e.u());
                verts.insert(e.v());
            }
            prop_assert!(red.len() <= verts.len());
        }
    }

    #[test]
    fn pipeline_output_properly_colors_the_conflict_graph(seed in 0u64..60) {
        // two independent validations must agree: the definition-direct
        // verifier and proper vertex coloring of the conflict graph
        let g = random_chordless(7, 10, seed);
        if g.m() == 0 {
            return Ok(());
        }
        let out = strong_color_chordless(&g, DEFAULT_BUDGET_NODES).unwrap();
        prop_assert!(verify_strong(&g, &out.coloring).is_ok());
        let cg = conflict_graph(&g);
        for (i, &e1) in cg.edge_ids.iter().enumerate() {
            for (j, &e2) in cg.edge_ids.iter().enumerate().skip(i + 1) {
                if cg.graph.has_edge(i, j) {
                    let c1 = out.coloring.color_of(e1).unwrap().flat;
                    let c2 = out.coloring.color_of(e2).unwrap().flat;
                    prop_assert_ne!(c1, c2);
                }
            }
        }
    }
}
