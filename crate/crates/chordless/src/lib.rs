//! Strong edge coloring of chordless graphs.
//!
//! A strong edge coloring assigns colors to edges so that every color class
//! is an induced matching: two edges with the same color neither share an
//! endpoint nor are linked by a third edge. This crate colors chordless
//! graphs (graphs where no cycle has a chord) with at most 3Δ colors by
//! composing a proper Δ-edge-coloring with a 3-coloring of each color
//! class's contraction, and ships the structural machinery (block
//! decompositions, edge classification on contractions, degeneracy
//! orderings) plus an exact exponential oracle for cross-checking.

pub mod audit;
pub mod contraction;
pub mod corpus;
pub mod degeneracy;
pub mod edge_coloring;
pub mod graph;
pub mod strong_coloring;
pub mod structure;

pub use contraction::{contract, ContractedGraph, EdgeClass, Matching};
pub use degeneracy::{degeneracy_ordering, greedy_color, PeelOutcome};
pub use edge_coloring::{
    chromatic_index_coloring, edge_color_exact, edge_color_vizing, ProperEdgeColoring,
    DEFAULT_BUDGET_NODES,
};
pub use graph::{load_edge_list, EdgePair, Graph, GraphError};
pub use strong_coloring::{
    conflict_graph, exact_chi_s, strong_color_chordless, strong_color_paths_cycles,
    tightness_audit, verify_strong, OracleOutcome, StrongEdgeColoring, DEFAULT_ORACLE_EDGE_CAP,
};
pub use structure::{blocks, is_biconnected, is_chordless, BlockDecomposition, ChordWitness};
