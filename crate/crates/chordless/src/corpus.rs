//! Seeded instance generators for tests and the CLI `generate` subcommand.
//! Everything here is deterministic in the seed.

use rand::prelude::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::contraction::Matching;
use crate::graph::{full_subdivision, random_tree, Graph};
use crate::structure::is_chordless;

/// Erdős–Rényi-style random graph on `n` vertices with `target_m` edges,
/// sampled without replacement.
pub fn random_graph(n: usize, target_m: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let m = target_m.min(all.len());
    // partial Fisher-Yates
    for i in 0..m {
        let j = rng.random_range(i..all.len());
        all.swap(i, j);
    }
    Graph::from_edges(n, all[..m].iter().copied())
}

/// Full subdivision of a random base graph. Full subdivisions are always
/// chordless, so this is the workhorse chordless family; dense bases give
/// high maximum degree.
pub fn random_chordless(base_n: usize, base_m: usize, seed: u64) -> Graph {
    full_subdivision(&random_graph(base_n, base_m, seed))
}

/// Random tree with a few random ears attached, each ear subdivided so the
/// result stays chordless; retries until the chordless check passes.
pub fn tree_with_ears(n: usize, ears: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'outer: for attempt in 0..64 {
        let mut g = random_tree(n, seed.wrapping_add(attempt));
        for _ in 0..ears {
            let a = rng.random_range(0..n);
            let b = rng.random_range(0..n);
            if a == b || g.has_edge(a, b) {
                continue;
            }
            // attach a length-3 ear a - w1 - w2 - b
            let w1 = g.n();
            g.add_edge(a, w1);
            let w2 = g.n();
            g.add_edge(w1, w2);
            g.add_edge(w2, b);
        }
        if is_chordless(&g).is_ok() {
            return g;
        }
        continue 'outer;
    }
    // ears kept failing; the bare tree is always chordless
    random_tree(n, seed)
}

/// Random (possibly empty) matching in `g`: shuffle the edges, then greedily
/// keep disjoint ones with probability `keep_permille`/1000 each.
pub fn random_matching(g: &Graph, keep_permille: u32, seed: u64) -> Matching {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = g.edge_vec();
    for i in (1..edges.len()).rev() {
        let j = rng.random_range(0..=i);
        edges.swap(i, j);
    }
    let mut used = vec![false; g.n()];
    let mut chosen = Vec::new();
    for e in edges {
        if used[e.u()] || used[e.v()] {
            continue;
        }
        if rng.random_range(0..1000) < keep_permille {
            used[e.u()] = true;
            used[e.v()] = true;
            chosen.push((e.u(), e.v()));
        }
    }
    Matching::new(g, chosen).expect("greedy construction keeps edges disjoint")
}

/// Adds one chord to a chordless graph: picks a cycle (via two adjacent
/// degree->=2 vertices on a common cycle) and connects two non-adjacent
/// vertices on it. Returns `None` when `g` has no usable cycle.
pub fn add_chord(g: &Graph, seed: u64) -> Option<(Graph, (usize, usize))> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks = crate::structure::blocks(g);
    let cyclic: Vec<&crate::structure::Block> = blocks
        .blocks
        .iter()
        .filter(|b| b.vertices.len() >= 4)
        .collect();
    let block = cyclic.choose(&mut rng)?;
    let vs: Vec<usize> = block.vertices.iter().copied().collect();
    for _ in 0..200 {
        let a = *vs.choose(&mut rng).expect("block is nonempty");
        let b = *vs.choose(&mut rng).expect("block is nonempty");
        if a == b || g.has_edge(a, b) {
            continue;
        }
        // a and b share a 2-connected block, so g + ab has a chord
        let mut h = g.clone();
        h.add_edge(a, b);
        if is_chordless(&h).is_err() {
            return Some((h, (a.min(b), a.max(b))));
        }
    }
    None
}

/// Even cycle C_{2k} together with one of its perfect matchings, rotated by
/// `rot`. Contracting the matching yields the cycle C_k, which is
/// 2-connected with every edge blue.
pub fn even_cycle_with_perfect_matching(k: usize, rot: usize) -> (Graph, Matching) {
    assert!(k >= 3);
    let n = 2 * k;
    let g = Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)));
    let edges = (0..k).map(|i| {
        let a = (2 * i + rot % 2) % n;
        (a, (a + 1) % n)
    });
    let m = Matching::new(&g, edges).expect("alternate cycle edges are disjoint");
    (g, m)
}
