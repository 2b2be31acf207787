//! Corpus-driven audit suites: each check re-runs one structural claim
//! against a seeded corpus and reports pass/fail with a machine-verifiable
//! witness on failure.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::contraction::{
    contract, contracted_induced, expand_path, matchings_from_edge_coloring, ContractedGraph,
    Matching,
};
use crate::corpus::{
    add_chord, even_cycle_with_perfect_matching, random_chordless, random_matching, tree_with_ears,
};
use crate::degeneracy::{degeneracy_ordering, greedy_color, PeelOutcome};
use crate::edge_coloring::{edge_color_exact, ExactOutcome};
use crate::graph::{tightness, EdgePair, Graph};
use crate::strong_coloring::{
    exact_chi_s, strong_color_chordless, strong_color_paths_cycles, verify_strong,
};
use crate::structure::{blocks, check_property_p, is_biconnected, is_chordless, leafblocks};

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub checked: usize,
    pub witness: Option<serde_json::Value>,
}

impl CheckResult {
    fn pass(name: &'static str, checked: usize) -> Self {
        CheckResult {
            name,
            pass: true,
            checked,
            witness: None,
        }
    }

    fn fail(name: &'static str, checked: usize, witness: serde_json::Value) -> Self {
        CheckResult {
            name,
            pass: false,
            checked,
            witness: Some(witness),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct AuditConfig {
    pub count: usize,
    pub seed: u64,
    pub budget_nodes: u64,
    pub oracle_cap: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub config: AuditConfig,
    pub corpus_graphs: usize,
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
}

fn graph_witness(g: &Graph) -> serde_json::Value {
    g.to_json()
}

fn pair_witness(g: &Graph, m: &Matching) -> serde_json::Value {
    serde_json::json!({
        "graph": g.to_json(),
        "matching": m.edges().map(|e| [e.u(), e.v()]).collect::<Vec<_>>(),
    })
}

/// Seeded chordless corpus: full subdivisions of random base graphs, the
/// tightness family, and trees with subdivided ears.
pub fn chordless_corpus(count: usize, seed: u64) -> Vec<Graph> {
    let mut out = Vec::with_capacity(count);
    for delta in 3..8 {
        if out.len() >= count {
            break;
        }
        out.push(tightness(delta).expect("delta >= 2"));
    }
    let mut i = 0u64;
    while out.len() < count {
        let g = match i % 3 {
            0 => {
                let n = 5 + (i as usize % 26); // base up to 30 vertices
                let m = n + (i as usize % (2 * n));
                random_chordless(n, m, seed.wrapping_add(i))
            }
            1 => random_chordless(6 + (i as usize % 10), 9 + (i as usize % 14), seed ^ i),
            _ => tree_with_ears(
                6 + (i as usize % 12),
                1 + (i as usize % 3),
                seed.wrapping_add(i),
            ),
        };
        i += 1;
        if g.m() == 0 {
            continue;
        }
        out.push(g);
    }
    out
}

/// (graph, matching) pairs: edge-coloring classes plus uniform random
/// matchings over the corpus.
pub fn matching_pairs(corpus: &[Graph], seed: u64, want: usize) -> Vec<(usize, Matching)> {
    let mut pairs = Vec::new();
    'outer: loop {
        for (gi, g) in corpus.iter().enumerate() {
            if pairs.len() >= want {
                break 'outer;
            }
            if g.m() == 0 {
                continue;
            }
            let f = crate::edge_coloring::chromatic_index_coloring(g, 200_000);
            if let Ok(ms) = matchings_from_edge_coloring(g, &f.coloring) {
                for m in ms.into_iter().filter(|m| !m.is_empty()).take(2) {
                    pairs.push((gi, m));
                }
            }
            let r = random_matching(g, 650, seed.wrapping_add(pairs.len() as u64));
            if !r.is_empty() {
                pairs.push((gi, r));
            }
        }
        if pairs.is_empty() {
            break;
        }
    }
    pairs.truncate(want);
    pairs
}

/// Recognition: corpus accepted, chord mutants rejected with verifiable
/// witnesses, K4 and the 6-wheel rejected.
pub fn check_recognition(corpus: &[Graph], seed: u64, mutants: usize) -> CheckResult {
    const NAME: &str = "recognition";
    let mut checked = 0;
    for g in corpus {
        checked += 1;
        if is_chordless(g).is_err() {
            return CheckResult::fail(NAME, checked, graph_witness(g));
        }
    }
    let mut rejected = 0;
    let mut i = 0u64;
    while rejected < mutants && i < 50 * mutants as u64 {
        let g = &corpus[(i as usize) % corpus.len()];
        i += 1;
        let Some((h, chord)) = add_chord(g, seed.wrapping_add(i)) else {
            continue;
        };
        checked += 1;
        match is_chordless(&h) {
            Ok(()) => {
                return CheckResult::fail(
                    NAME,
                    checked,
                    serde_json::json!({"graph": h.to_json(), "planted_chord": chord}),
                );
            }
            Err(w) => {
                if !w.verify(&h) {
                    return CheckResult::fail(
                        NAME,
                        checked,
                        serde_json::json!({"graph": h.to_json(), "bad_witness": w}),
                    );
                }
                rejected += 1;
            }
        }
    }
    let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let wheel6 = Graph::from_edges(
        6,
        (1..6)
            .map(|i| (0, i))
            .chain((1..6).map(|i| (i, if i == 5 { 1 } else { i + 1 }))),
    );
    for g in [&k4, &wheel6] {
        checked += 1;
        if is_chordless(g).is_ok() {
            return CheckResult::fail(NAME, checked, graph_witness(g));
        }
    }
    if rejected < mutants {
        return CheckResult::fail(
            NAME,
            checked,
            serde_json::json!({"mutants_rejected": rejected, "wanted": mutants}),
        );
    }
    CheckResult::pass(NAME, checked)
}

/// 2-degeneracy of quotients: peeling at 2 succeeds, greedy uses <= 3
/// shades, and random induced quotient subgraphs with >= 2 vertices have
/// >= 2 vertices of degree <= 2.
pub fn check_degeneracy(
    corpus: &[Graph],
    pairs: &[(usize, Matching)],
    seed: u64,
    subgraphs: usize,
) -> CheckResult {
    const NAME: &str = "quotient-2-degeneracy";
    let mut checked = 0;
    let mut quotients: Vec<ContractedGraph> = Vec::new();
    for (gi, m) in pairs {
        let g = &corpus[*gi];
        checked += 1;
        let cg = match contract(g, m) {
            Ok(cg) => cg,
            Err(e) => {
                return CheckResult::fail(
                    NAME,
                    checked,
                    serde_json::json!({"error": e.to_string(), "pair": pair_witness(g, m)}),
                )
            }
        };
        match degeneracy_ordering(cg.quotient(), 2) {
            PeelOutcome::Ordered(o) => {
                let c = greedy_color(cg.quotient(), &o).expect("peel order is a permutation");
                if c.colors_used > 3 || !c.is_proper(cg.quotient()) {
                    return CheckResult::fail(NAME, checked, pair_witness(g, m));
                }
            }
            PeelOutcome::Stuck(core) => {
                return CheckResult::fail(
                    NAME,
                    checked,
                    serde_json::json!({"stuck_core": core, "pair": pair_witness(g, m)}),
                );
            }
        }
        quotients.push(cg);
    }
    // random induced quotient subgraphs: >= 2 vertices of degree <= 2
    let mut rng_state = seed | 1;
    let mut next = move || {
        // xorshift is plenty for subset sampling
        rng_state ^= rng_state << 13;
        rng_state ^= rng_state >> 7;
        rng_state ^= rng_state << 17;
        rng_state
    };
    let mut done = 0;
    let mut qi = 0;
    while done < subgraphs && !quotients.is_empty() {
        let cg = &quotients[qi % quotients.len()];
        qi += 1;
        let q = cg.quotient();
        if q.n() < 2 {
            continue;
        }
        let keep: BTreeSet<usize> = q.vertices().filter(|_| next() % 100 < 70).collect();
        if keep.len() < 2 {
            continue;
        }
        let (h, remap) = q.induced_subgraph(&keep).expect("vertices of the quotient");
        checked += 1;
        done += 1;
        let low = h.vertices().filter(|&v| h.degree(v) <= 2).count();
        if low < 2 {
            return CheckResult::fail(
                NAME,
                checked,
                serde_json::json!({
                    "subgraph": h.to_json(),
                    "quotient_vertices": remap,
                    "low_degree_vertices": low,
                }),
            );
        }
    }
    CheckResult::pass(NAME, checked)
}

fn red_subgraph(cg: &ContractedGraph) -> (Graph, usize) {
    let q = cg.quotient();
    let mut h = Graph::empty(q.n());
    for (e, c) in cg.classes() {
        if c.is_red() {
            h.add_edge(e.u(), e.v());
        }
    }
    let occupied = h.vertices().filter(|&v| h.degree(v) > 0).count();
    (h, occupied)
}

/// Red-edge structure: the red subgraph H has ||H|| <= |H| (counting only
/// non-isolated vertices), and when nonempty it is a single edge or has
/// >= 3 vertices of degree <= 2 among its non-isolated vertices.
pub fn check_red_edges(corpus: &[Graph], pairs: &[(usize, Matching)]) -> CheckResult {
    const NAME: &str = "red-edge-structure";
    let mut checked = 0;
    for (gi, m) in pairs {
        let g = &corpus[*gi];
        let cg = match contract(g, m) {
            Ok(cg) => cg,
            Err(e) => {
                return CheckResult::fail(
                    NAME,
                    checked,
                    serde_json::json!({"error": e.to_string(), "pair": pair_witness(g, m)}),
                )
            }
        };
        checked += 1;
        let (h, occupied) = red_subgraph(&cg);
        if h.m() > occupied {
            return CheckResult::fail(
                NAME,
                checked,
                serde_json::json!({"red_edges": h.m(), "red_vertices": occupied,
                    "pair": pair_witness(g, m)}),
            );
        }
        if h.m() > 1 {
            let low = h
                .vertices()
                .filter(|&v| h.degree(v) >= 1 && h.degree(v) <= 2)
                .count();
            if low < 3 {
                return CheckResult::fail(
                    NAME,
                    checked,
                    serde_json::json!({"low_degree_red": low, "pair": pair_witness(g, m)}),
                );
            }
        }
    }
    CheckResult::pass(NAME, checked)
}

/// Blue-edge structure under property P: when the quotient is 2-connected and
/// larger than a single edge, deleting any blue edge leaves a graph that is
/// not 2-connected and has exactly two leafblocks, each holding a
/// non-cutvertex of quotient degree <= 2.
pub fn check_blue_edges(
    corpus: &[Graph],
    pairs: &[(usize, Matching)],
    min_qualifying: usize,
) -> CheckResult {
    const NAME: &str = "blue-edge-structure";
    let mut qualifying = 0;
    let mut checked = 0;

    let mut candidates: Vec<(Graph, Matching)> = pairs
        .iter()
        .map(|(gi, m)| (corpus[*gi].clone(), m.clone()))
        .collect();
    // even cycles with perfect matchings always qualify; they guarantee the
    // instance quota regardless of what the random pairs contribute
    let mut k = 3;
    while candidates.len() < pairs.len() + 2 * min_qualifying {
        for rot in 0..2 {
            let (g, m) = even_cycle_with_perfect_matching(k, rot);
            candidates.push((g, m));
        }
        k += 1;
    }

    for (g, m) in &candidates {
        if qualifying >= min_qualifying.max(pairs.len()) {
            break;
        }
        let report = match check_property_p(g, m) {
            Ok(r) => r,
            Err(e) => {
                return CheckResult::fail(
                    NAME,
                    checked,
                    serde_json::json!({"error": e.to_string(), "pair": pair_witness(g, m)}),
                )
            }
        };
        if !report.holds {
            continue;
        }
        let cg = contract(g, m).expect("property P check already contracted");
        let q = cg.quotient();
        if !is_biconnected(q) || q.m() <= 1 {
            continue;
        }
        qualifying += 1;
        for (e, class) in cg.classes() {
            if class.is_red() {
                continue;
            }
            checked += 1;
            let q2 = q.without_edge(e).expect("iterating quotient edges");
            if is_biconnected(&q2) {
                return CheckResult::fail(
                    NAME,
                    checked,
                    serde_json::json!({"blue_edge": [e.u(), e.v()],
                        "pair": pair_witness(g, m),
                        "reason": "quotient minus blue edge is still 2-connected"}),
                );
            }
            let d = blocks(&q2);
            let leaves = leafblocks(&d);
            if leaves.len() != 2 {
                return CheckResult::fail(
                    NAME,
                    checked,
                    serde_json::json!({"blue_edge": [e.u(), e.v()],
                        "leafblocks": leaves.len(),
                        "pair": pair_witness(g, m)}),
                );
            }
            for leaf in &leaves {
                let block = &d.blocks[leaf.block];
                let ok = block
                    .vertices
                    .iter()
                    .any(|&v| v != leaf.cutvertex && q.degree(v) <= 2);
                if !ok {
                    return CheckResult::fail(
                        NAME,
                        checked,
                        serde_json::json!({"blue_edge": [e.u(), e.v()],
                            "leafblock": block,
                            "pair": pair_witness(g, m)}),
                    );
                }
            }
        }
    }
    if qualifying < min_qualifying {
        return CheckResult::fail(
            NAME,
            checked,
            serde_json::json!({"qualifying": qualifying, "wanted": min_qualifying}),
        );
    }
    CheckResult::pass(NAME, checked)
}

/// The 3Δ bound at corpus scale: the pipeline verifies and stays within
/// 3Δ colors on every corpus graph.
pub fn check_pipeline(corpus: &[Graph], budget_nodes: u64) -> CheckResult {
    const NAME: &str = "pipeline-3delta";
    let mut checked = 0;
    for g in corpus {
        if g.m() == 0 {
            continue;
        }
        checked += 1;
        let out = match strong_color_chordless(g, budget_nodes) {
            Ok(o) => o,
            Err(e) => {
                return CheckResult::fail(
                    NAME,
                    checked,
                    serde_json::json!({"error": e.to_string(), "graph": g.to_json()}),
                )
            }
        };
        let delta = g.max_degree();
        let within = if delta >= 3 {
            out.report.colors_used <= 3 * delta
        } else {
            out.report.colors_used <= 5
        };
        if verify_strong(g, &out.coloring).is_err() || !within {
            return CheckResult::fail(
                NAME,
                checked,
                serde_json::json!({"graph": g.to_json(),
                    "colors_used": out.report.colors_used, "delta": delta}),
            );
        }
    }
    CheckResult::pass(NAME, checked)
}

/// Edge-coloring exactness: Δ colors suffice for corpus graphs up to an
/// edge limit; infeasibility answers on tiny graphs match exhaustive
/// enumeration.
pub fn check_edge_coloring(corpus: &[Graph], budget_nodes: u64, edge_limit: usize) -> CheckResult {
    const NAME: &str = "edge-coloring-exact";
    let mut checked = 0;
    for g in corpus {
        let delta = g.max_degree();
        if delta < 3 || g.m() > edge_limit {
            continue;
        }
        checked += 1;
        match edge_color_exact(g, delta, budget_nodes) {
            ExactOutcome::Colored(f) => {
                if f.validate(g).is_err() || f.colors_used() > delta {
                    return CheckResult::fail(NAME, checked, graph_witness(g));
                }
            }
            other => {
                return CheckResult::fail(
                    NAME,
                    checked,
                    serde_json::json!({"graph": g.to_json(),
                        "outcome": format!("{other:?}")}),
                );
            }
        }
        if g.m() <= 12 {
            for k in 1..=delta {
                checked += 1;
                let fast = matches!(
                    edge_color_exact(g, k, budget_nodes),
                    ExactOutcome::Colored(_)
                );
                let slow = crate::edge_coloring::edge_colorable_exhaustive(g, k);
                if fast != slow {
                    return CheckResult::fail(
                        NAME,
                        checked,
                        serde_json::json!({"graph": g.to_json(), "k": k,
                            "search": fast, "exhaustive": slow}),
                    );
                }
            }
        }
    }
    CheckResult::pass(NAME, checked)
}

/// Oracle cross-checks on small graphs: the exact value never exceeds the
/// pipeline's count or 3Δ, and equals the path/cycle count exactly.
pub fn check_oracle(corpus: &[Graph], budget_nodes: u64) -> CheckResult {
    const NAME: &str = "oracle-crosscheck";
    let mut checked = 0;
    for g in corpus {
        if g.m() == 0 || g.m() > 12 {
            continue;
        }
        let Some(exact) = exact_chi_s(g, 12, budget_nodes).exact().map(|r| r.chi_s) else {
            return CheckResult::fail(NAME, checked, graph_witness(g));
        };
        checked += 1;
        if is_chordless(g).is_ok() {
            let out = strong_color_chordless(g, budget_nodes).expect("chordless with edges");
            let delta = g.max_degree();
            let bound_ok = exact <= out.report.colors_used && (delta < 3 || exact <= 3 * delta);
            if !bound_ok {
                return CheckResult::fail(
                    NAME,
                    checked,
                    serde_json::json!({"graph": g.to_json(), "exact": exact,
                        "pipeline": out.report.colors_used}),
                );
            }
            if g.max_degree() <= 2 {
                let pc = strong_color_paths_cycles(g).expect("max degree checked");
                if pc.colors_used() != exact || pc.colors_used() > 5 {
                    return CheckResult::fail(
                        NAME,
                        checked,
                        serde_json::json!({"graph": g.to_json(), "exact": exact,
                            "pattern": pc.colors_used()}),
                    );
                }
            }
        }
    }
    CheckResult::pass(NAME, checked)
}

/// Structural observations: restricting a contraction equals a fresh
/// contraction of the restricted matching, and expanded quotient paths obey
/// the vertex and edge constraints.
pub fn check_observations(
    corpus: &[Graph],
    pairs: &[(usize, Matching)],
    seed: u64,
    triples: usize,
) -> CheckResult {
    const NAME: &str = "contraction-observations";
    let mut checked = 0;
    let mut rng_state = seed | 1;
    let mut next = move || {
        rng_state ^= rng_state << 13;
        rng_state ^= rng_state >> 7;
        rng_state ^= rng_state << 17;
        rng_state
    };
    let mut done_restrict = 0;
    let mut done_expand = 0;
    let mut round = 0usize;
    while (done_restrict < triples || done_expand < triples) && round < 50 * triples {
        let (gi, m) = &pairs[round % pairs.len()];
        round += 1;
        let g = &corpus[*gi];
        let cg = contract(g, m).expect("pairs were validated");

        if done_restrict < triples && !cg.pairs().is_empty() {
            let keep: BTreeSet<usize> = (0..cg.pairs().len())
                .filter(|_| next() % 100 < 60)
                .collect();
            if !keep.is_empty() {
                done_restrict += 1;
                checked += 1;
                let restricted = contracted_induced(&cg, &keep).expect("valid quotient ids");
                let m2 = Matching::new(
                    g,
                    keep.iter().map(|&q| {
                        let p = cg.pair_of(q);
                        (p.u(), p.v())
                    }),
                )
                .expect("subset of a matching");
                let fresh = contract(g, &m2).expect("valid restricted matching");
                if restricted.quotient().to_edge_list() != fresh.quotient().to_edge_list()
                    || restricted.pairs() != fresh.pairs()
                {
                    return CheckResult::fail(
                        NAME,
                        checked,
                        serde_json::json!({"pair": pair_witness(g, m), "keep": keep}),
                    );
                }
            }
        }

        if done_expand < triples && cg.quotient().m() > 0 {
            // random walk in the quotient without repeats
            let q = cg.quotient();
            let start = (next() as usize) % q.n();
            let mut qpath = vec![start];
            loop {
                let last = *qpath.last().expect("nonempty");
                let options: Vec<usize> =
                    q.neighbors(last).filter(|v| !qpath.contains(v)).collect();
                if options.is_empty() || next() % 100 < 25 {
                    break;
                }
                qpath.push(options[(next() as usize) % options.len()]);
            }
            done_expand += 1;
            checked += 1;
            let hpath = match expand_path(&cg, &qpath) {
                Ok(p) => p,
                Err(e) => {
                    return CheckResult::fail(
                        NAME,
                        checked,
                        serde_json::json!({"error": e.to_string(), "qpath": qpath,
                            "pair": pair_witness(g, m)}),
                    )
                }
            };
            if let Err(w) = expansion_constraints(&cg, &qpath, &hpath) {
                return CheckResult::fail(
                    NAME,
                    checked,
                    serde_json::json!({"qpath": qpath, "hpath": hpath, "reason": w,
                        "pair": pair_witness(g, m)}),
                );
            }
        }
    }
    if done_restrict < triples || done_expand < triples {
        return CheckResult::fail(
            NAME,
            checked,
            serde_json::json!({"restrictions": done_restrict, "expansions": done_expand,
                "wanted": triples}),
        );
    }
    CheckResult::pass(NAME, checked)
}

/// The expansion constraints: a simple host path from the first pair to the
/// last, every vertex inside the path's pairs, every edge either a matched
/// edge of those pairs or a host edge between consecutive pairs.
fn expansion_constraints(
    cg: &ContractedGraph,
    qpath: &[usize],
    hpath: &[usize],
) -> Result<(), String> {
    if hpath.is_empty() {
        return Err("empty host path".into());
    }
    let mut seen = BTreeSet::new();
    for &v in hpath {
        if !seen.insert(v) {
            return Err(format!("repeated host vertex {v}"));
        }
    }
    let allowed_vertices: BTreeSet<usize> = qpath
        .iter()
        .flat_map(|&q| cg.pair_of(q).endpoints())
        .collect();
    for &v in hpath {
        if !allowed_vertices.contains(&v) {
            return Err(format!("host vertex {v} outside the path's pairs"));
        }
    }
    let first = cg.pair_of(qpath[0]);
    let last = cg.pair_of(*qpath.last().expect("nonempty"));
    if !first.touches(hpath[0]) || !last.touches(*hpath.last().expect("nonempty")) {
        return Err("endpoints not on the terminal pairs".into());
    }
    let mut allowed_edges: BTreeSet<EdgePair> = qpath.iter().map(|&q| cg.pair_of(q)).collect();
    for w in qpath.windows(2) {
        let (pa, pb) = (cg.pair_of(w[0]), cg.pair_of(w[1]));
        for x in pa.endpoints() {
            for y in pb.endpoints() {
                if x != y && cg.host().has_edge(x, y) {
                    allowed_edges.insert(EdgePair::new(x, y));
                }
            }
        }
    }
    for w in hpath.windows(2) {
        let e = EdgePair::new(w[0], w[1]);
        if !allowed_edges.contains(&e) {
            return Err(format!("edge {}-{} not allowed", e.u(), e.v()));
        }
    }
    Ok(())
}

pub fn run_audit(cfg: AuditConfig) -> AuditReport {
    if cfg.count == 0 {
        return AuditReport {
            config: cfg,
            corpus_graphs: 0,
            checks: vec![],
            all_pass: true,
        };
    }
    let corpus = chordless_corpus(cfg.count, cfg.seed);
    let pairs = matching_pairs(&corpus, cfg.seed, 3 * cfg.count);
    let checks = vec![
        check_recognition(&corpus, cfg.seed, cfg.count.min(100)),
        check_degeneracy(&corpus, &pairs, cfg.seed, 2 * cfg.count),
        check_red_edges(&corpus, &pairs),
        check_blue_edges(&corpus, &pairs, cfg.count.min(100)),
        check_pipeline(&corpus, cfg.budget_nodes),
        check_edge_coloring(&corpus, cfg.budget_nodes, 60),
        check_oracle(&corpus, cfg.budget_nodes),
        check_observations(&corpus, &pairs, cfg.seed, cfg.count),
    ];
    let all_pass = checks.iter().all(|c| c.pass);
    AuditReport {
        config: cfg,
        corpus_graphs: corpus.len(),
        checks,
        all_pass,
    }
}
