//! One test per acceptance criterion; each prints a single pass/fail line.

use std::time::Instant;

use chordless::audit::{
    check_blue_edges, check_degeneracy, check_edge_coloring, check_observations, check_oracle,
    check_recognition, check_red_edges, chordless_corpus, matching_pairs, CheckResult,
};
use chordless::graph::{generate, tightness, GeneratorSpec, Graph};
use chordless::strong_coloring::{
    conflict_graph, exact_chi_s, strong_color_chordless, strong_color_paths_cycles, verify_strong,
};
use chordless::structure::is_minimally_2connected;
use chordless::DEFAULT_BUDGET_NODES;

const SEED: u64 = 7;

fn report(criterion: usize, label: &str, pass: bool) {
    println!(
        "criterion {criterion} ({label}): {}",
        if pass { "pass" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} ({label}) failed");
}

fn report_check(criterion: usize, label: &str, result: &CheckResult) {
    if !result.pass {
        eprintln!("witness: {:?}", result.witness);
    }
    report(criterion, label, result.pass);
}

fn high_degree_corpus(want: usize) -> Vec<Graph> {
    let mut out: Vec<Graph> = chordless_corpus(3 * want, SEED)
        .into_iter()
        .filter(|g| g.max_degree() >= 3)
        .collect();
    out.truncate(want);
    assert!(
        out.len() == want,
        "corpus builder fell short: {}",
        out.len()
    );
    out
}

#[test]
fn criterion_01_three_delta_bound_at_scale() {
    let corpus = high_degree_corpus(200);
    let mut pass = true;
    for g in &corpus {
        let delta = g.max_degree();
        let t = Instant::now();
        let out = strong_color_chordless(g, DEFAULT_BUDGET_NODES).expect("chordless corpus");
        let elapsed = t.elapsed();
        if verify_strong(g, &out.coloring).is_err()
            || out.report.colors_used > 3 * delta
            || elapsed.as_secs_f64() >= 5.0
        {
            eprintln!(
                "graph n={} m={} delta={} colors={} time={elapsed:?}",
                g.n(),
                g.m(),
                delta,
                out.report.colors_used
            );
            pass = false;
            break;
        }
    }
    report(1, "3Δ coloring over 200 graphs", pass);
}

#[test]
fn criterion_02_c5_exactness() {
    let c5 = generate(&GeneratorSpec::Cycle { n: 5 }).unwrap();
    let exact = exact_chi_s(&c5, 30, DEFAULT_BUDGET_NODES)
        .exact()
        .map(|r| r.chi_s);
    let pattern = strong_color_paths_cycles(&c5).unwrap().colors_used();
    report(2, "C5 needs exactly 5", exact == Some(5) && pattern == 5);
}

#[test]
fn criterion_03_tightness_family() {
    let t = Instant::now();
    let mut pass = true;
    for delta in 2..6 {
        let g = tightness(delta).unwrap();
        let m = g.m();
        let cg = conflict_graph(&g);
        if m != 3 * delta - 2 || cg.graph.m() != m * (m - 1) / 2 {
            pass = false;
            break;
        }
        if delta <= 4 {
            let exact = exact_chi_s(&g, 30, DEFAULT_BUDGET_NODES)
                .exact()
                .map(|r| r.chi_s);
            if exact != Some(3 * delta - 2) {
                pass = false;
                break;
            }
        }
    }
    pass = pass && t.elapsed().as_secs() < 30;
    report(3, "tightness family hits 3Δ−2", pass);
}

#[test]
fn criterion_04_quotient_2_degeneracy() {
    let corpus = chordless_corpus(200, SEED);
    let pairs = matching_pairs(&corpus, SEED, 500);
    assert!(pairs.len() >= 500);
    let result = check_degeneracy(&corpus, &pairs, SEED, 1000);
    report_check(4, "quotients peel at 2, greedy ≤ 3", &result);
}

#[test]
fn criterion_05_red_edge_structure() {
    let corpus = chordless_corpus(200, SEED);
    let pairs = matching_pairs(&corpus, SEED, 500);
    let result = check_red_edges(&corpus, &pairs);
    report_check(5, "red subgraphs sparse with low-degree vertices", &result);
}

#[test]
fn criterion_06_blue_edge_structure() {
    let corpus = chordless_corpus(200, SEED);
    let pairs = matching_pairs(&corpus, SEED, 500);
    let result = check_blue_edges(&corpus, &pairs, 100);
    report_check(6, "blue edge removal leaves two leafblocks", &result);
}

#[test]
fn criterion_07_edge_coloring_exactness() {
    let corpus = high_degree_corpus(200);
    let result = check_edge_coloring(&corpus, DEFAULT_BUDGET_NODES, 60);
    report_check(7, "Δ edge colors found, tiny cases exhaustive", &result);
}

#[test]
fn criterion_08_oracle_crosscheck() {
    let mut corpus = chordless_corpus(150, SEED);
    for n in 3..=12 {
        corpus.push(generate(&GeneratorSpec::Cycle { n }).unwrap());
        corpus.push(generate(&GeneratorSpec::Path { n }).unwrap());
    }
    let result = check_oracle(&corpus, DEFAULT_BUDGET_NODES);
    report_check(8, "oracle agrees with pipeline bounds", &result);
}

#[test]
fn criterion_09_recognition() {
    let corpus = chordless_corpus(200, SEED);
    let result = check_recognition(&corpus, SEED, 100);
    let c5 = generate(&GeneratorSpec::Cycle { n: 5 }).unwrap();
    let extras = is_minimally_2connected(&c5) && !is_minimally_2connected(&tightness(3).unwrap());
    if !result.pass {
        eprintln!("witness: {:?}", result.witness);
    }
    report(
        9,
        "chordless recognition and mutants",
        result.pass && extras,
    );
}

#[test]
fn criterion_10_structural_observations() {
    let corpus = chordless_corpus(200, SEED);
    let pairs = matching_pairs(&corpus, SEED, 500);
    let result = check_observations(&corpus, &pairs, SEED, 200);
    report_check(10, "restriction and path expansion observations", &result);
}
