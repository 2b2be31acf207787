//! Simple undirected graphs with dense vertex ids, edge-list I/O and the
//! generator families used by the test corpora.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Canonical unordered edge: `u < v` always holds.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgePair {
    u: usize,
    v: usize,
}

impl EdgePair {
    /// Panics on a self-loop; callers validate input edges before this point.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "self-loop {a}-{b} is not a valid edge");
        EdgePair {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn endpoints(&self) -> [usize; 2] {
        [self.u, self.v]
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            assert_eq!(x, self.v);
            self.u
        }
    }
}

impl fmt::Debug for EdgePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown vertex id {0}")]
    UnknownVertex(usize),
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("edge {0:?} not in graph")]
    MissingEdge(EdgePair),
}

/// Simple undirected graph. Immutable once built (construction goes through
/// `GraphBuilder` or the loaders/generators).
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    edges: BTreeSet<EdgePair>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, m={}, edges={:?})",
            self.n(),
            self.m(),
            self.edges
        )
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
            edges: BTreeSet::new(),
            labels: None,
        }
    }

    /// Builds a graph from canonicalized edges; duplicates collapse silently.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::empty(n);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    /// Inserts an edge, growing the vertex range if needed.
    /// Returns false if the edge was already present.
    pub fn add_edge(&mut self, a: usize, b: usize) -> bool {
        let e = EdgePair::new(a, b);
        if e.v >= self.adj.len() {
            self.adj.resize(e.v + 1, BTreeSet::new());
        }
        if !self.edges.insert(e) {
            return false;
        }
        self.adj[e.u].insert(e.v);
        self.adj[e.v].insert(e.u);
        true
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.n());
        self.labels = Some(labels);
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        0..self.n()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgePair> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_vec(&self) -> Vec<EdgePair> {
        self.edges.iter().copied().collect()
    }

    pub fn has_vertex(&self, v: usize) -> bool {
        v < self.n()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && a < self.n() && self.adj[a].contains(&b)
    }

    pub fn contains(&self, e: EdgePair) -> bool {
        self.edges.contains(&e)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    /// Copy of the graph with one edge removed (vertex set unchanged).
    pub fn without_edge(&self, e: EdgePair) -> Result<Graph, GraphError> {
        if !self.contains(e) {
            return Err(GraphError::MissingEdge(e));
        }
        let mut g = self.clone();
        g.edges.remove(&e);
        g.adj[e.u].remove(&e.v);
        g.adj[e.v].remove(&e.u);
        Ok(g)
    }

    /// Copy with one vertex's incident edges removed (the vertex itself stays
    /// as an isolated id so indices remain stable).
    pub fn without_vertex(&self, x: usize) -> Graph {
        let mut g = self.clone();
        for w in self.adj[x].iter() {
            g.adj[*w].remove(&x);
            g.edges.remove(&EdgePair::new(x, *w));
        }
        g.adj[x].clear();
        g
    }

    /// Induced subgraph on `keep`, plus the remap table `new id -> old id`.
    pub fn induced_subgraph(
        &self,
        keep: &BTreeSet<usize>,
    ) -> Result<(Graph, Vec<usize>), GraphError> {
        for &v in keep {
            if !self.has_vertex(v) {
                return Err(GraphError::UnknownVertex(v));
            }
        }
        let remap: Vec<usize> = keep.iter().copied().collect();
        let mut old_to_new = vec![usize::MAX; self.n()];
        for (new, &old) in remap.iter().enumerate() {
            old_to_new[old] = new;
        }
        let mut g = Graph::empty(remap.len());
        for e in self.edges() {
            if keep.contains(&e.u) && keep.contains(&e.v) {
                g.add_edge(old_to_new[e.u], old_to_new[e.v]);
            }
        }
        Ok((g, remap))
    }

    /// Connected components as sorted vertex sets. Isolated vertices form
    /// singleton components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Canonical edge-list text: `(min,max)` pairs sorted lexicographically,
    /// one per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in self.edges() {
            out.push_str(&format!("{} {}\n", e.u, e.v));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n(),
            "edges": self.edges().map(|e| [e.u, e.v]).collect::<Vec<_>>(),
            "labels": self.labels,
        })
    }
}

/// Result of parsing an edge list: the graph plus a count of duplicate edge
/// lines that were collapsed.
#[derive(Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub duplicate_edges: usize,
}

/// Parses whitespace-separated edge-list text. Tokens become vertex ids in
/// first-seen order; `#` starts a comment line; duplicate edges collapse.
pub fn load_edge_list(text: &str) -> Result<LoadedGraph, GraphError> {
    let mut ids: std::collections::HashMap<String, usize> = std::collections::HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut duplicates = 0usize;
    let mut seen: BTreeSet<EdgePair> = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(GraphError::Parse {
                line,
                msg: format!("expected two vertex tokens, found {}", toks.len()),
            });
        }
        if toks[0] == toks[1] {
            return Err(GraphError::Parse {
                line,
                msg: format!("self-loop on token '{}'", toks[0]),
            });
        }
        let mut id_of = |t: &str| -> usize {
            *ids.entry(t.to_string()).or_insert_with(|| {
                labels.push(t.to_string());
                labels.len() - 1
            })
        };
        let a = id_of(toks[0]);
        let b = id_of(toks[1]);
        if seen.insert(EdgePair::new(a, b)) {
            edges.push((a, b));
        } else {
            duplicates += 1;
        }
    }
    let mut graph = Graph::from_edges(labels.len(), edges);
    graph.set_labels(labels);
    Ok(LoadedGraph {
        graph,
        duplicate_edges: duplicates,
    })
}

/// Generator families for test corpora.
#[derive(Clone, Debug)]
pub enum GeneratorSpec {
    Path { n: usize },
    Cycle { n: usize },
    Star { leaves: usize },
    Tightness { delta: usize },
    FullSubdivision { base: Box<Graph> },
    RandomTree { n: usize, seed: u64 },
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph, GraphError> {
    match spec {
        GeneratorSpec::Path { n } => Ok(Graph::from_edges(*n, (1..*n).map(|i| (i - 1, i)))),
        GeneratorSpec::Cycle { n } => {
            if *n < 3 {
                return Err(GraphError::InvalidSpec(format!(
                    "cycle needs n >= 3, got {n}"
                )));
            }
            Ok(Graph::from_edges(*n, (0..*n).map(|i| (i, (i + 1) % n))))
        }
        GeneratorSpec::Star { leaves } => {
            Ok(Graph::from_edges(leaves + 1, (1..=*leaves).map(|i| (0, i))))
        }
        GeneratorSpec::Tightness { delta } => tightness(*delta),
        GeneratorSpec::FullSubdivision { base } => Ok(full_subdivision(base)),
        GeneratorSpec::RandomTree { n, seed } => Ok(random_tree(*n, *seed)),
    }
}

/// The K_{2,Δ}-plus-pendants family: parts {a,b}, Δ middle vertices, and Δ−2
/// pendants on one middle vertex c, so a, b and c all reach degree Δ.
/// 2Δ vertices, 3Δ−2 edges.
pub fn tightness(delta: usize) -> Result<Graph, GraphError> {
    if delta < 2 {
        return Err(GraphError::InvalidSpec(format!(
            "tightness family needs delta >= 2, got {delta}"
        )));
    }
    let a = 0;
    let b = 1;
    let mut g = Graph::empty(2 * delta);
    for i in 0..delta {
        let mid = 2 + i;
        g.add_edge(a, mid);
        g.add_edge(b, mid);
    }
    let c = 2;
    for j in 0..delta - 2 {
        g.add_edge(c, 2 + delta + j);
    }
    Ok(g)
}

/// Replaces every edge uv of `base` by a path u–w–v with a fresh vertex w.
pub fn full_subdivision(base: &Graph) -> Graph {
    let mut g = Graph::empty(base.n() + base.m());
    for (i, e) in base.edges().enumerate() {
        let w = base.n() + i;
        g.add_edge(e.u(), w);
        g.add_edge(w, e.v());
    }
    g
}

/// Uniform random labelled tree via a Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    if n <= 1 {
        return Graph::empty(n);
    }
    if n == 2 {
        return Graph::from_edges(2, [(0, 1)]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<usize> = (0..n).collect();
    let pruefer: Vec<usize> = (0..n - 2)
        .map(|_| *all.choose(&mut rng).expect("nonempty"))
        .collect();
    let mut degree = vec![1usize; n];
    for &v in &pruefer {
        degree[v] += 1;
    }
    let mut g = Graph::empty(n);
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    for &v in &pruefer {
        let leaf = *leaves.iter().next().expect("tree invariant");
        leaves.remove(&leaf);
        g.add_edge(leaf, v);
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let mut rest = leaves.into_iter();
    let (x, y) = (rest.next().unwrap(), rest.next().unwrap());
    g.add_edge(x, y);
    g
}

pub fn max_degree(g: &Graph) -> usize {
    g.max_degree()
}

impl Graph {
    /// Same graph without the label table (labels do not affect equality
    /// semantics in tests that compare structure only).
    pub fn into_unlabelled(mut self) -> Graph {
        self.labels = None;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn load_two_edge_path() {
        let lg = load_edge_list("0 1\n1 2").unwrap();
        assert_eq!(lg.graph.n(), 3);
        assert_eq!(lg.graph.m(), 2);
        let degs: Vec<usize> = lg.graph.vertices().map(|v| lg.graph.degree(v)).collect();
        assert_eq!(degs, vec![1, 2, 1]);
    }

    #[test]
    fn load_duplicate_collapses() {
        let lg = load_edge_list("a b\nb a").unwrap();
        assert_eq!(lg.graph.n(), 2);
        assert_eq!(lg.graph.m(), 1);
        assert_eq!(lg.duplicate_edges, 1);
    }

    #[test]
    fn load_rejects_self_loop() {
        let err = load_edge_list("0 0").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 1"), "{msg}");
    }

    #[test]
    fn load_rejects_malformed_line() {
        let err = load_edge_list("1 2 3").unwrap_err();
        assert!(err.to_string().contains("line 1"));
    }

    #[test]
    fn comments_and_blank_lines_skipped() {
        let lg = load_edge_list("# header\n\n0 1\n").unwrap();
        assert_eq!(lg.graph.m(), 1);
    }

    #[test]
    fn max_degree_cases() {
        let c5 = generate(&GeneratorSpec::Cycle { n: 5 }).unwrap();
        assert_eq!(c5.max_degree(), 2);
        let star = generate(&GeneratorSpec::Star { leaves: 4 }).unwrap();
        assert_eq!(star.max_degree(), 4);
        assert_eq!(Graph::empty(3).max_degree(), 0);
    }

    #[test]
    fn tightness_shape() {
        for delta in 2..=10 {
            let g = tightness(delta).unwrap();
            assert_eq!(g.n(), 2 * delta);
            assert_eq!(g.m(), 3 * delta - 2);
            let high = g.vertices().filter(|&v| g.degree(v) == delta).count();
            if delta == 2 {
                // C4: every vertex has degree 2 = delta
                assert_eq!(high, 4);
            } else {
                assert_eq!(high, 3, "exactly a, b, c reach degree delta");
            }
        }
        assert!(tightness(1).is_err());
    }

    #[test]
    fn full_subdivision_counts() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let s = full_subdivision(&k4);
        assert_eq!(s.n(), 10);
        assert_eq!(s.m(), 12);
        assert!(s.vertices().skip(4).all(|v| s.degree(v) == 2));
    }

    #[test]
    fn induced_subgraph_cases() {
        let c5 = generate(&GeneratorSpec::Cycle { n: 5 }).unwrap();
        let (p, remap) = c5
            .induced_subgraph(&[0usize, 1, 2].into_iter().collect())
            .unwrap();
        assert_eq!(p.n(), 3);
        assert_eq!(p.m(), 2);
        assert_eq!(remap, vec![0, 1, 2]);

        let full: BTreeSet<usize> = c5.vertices().collect();
        let (copy, _) = c5.induced_subgraph(&full).unwrap();
        assert_eq!(copy, c5.clone().into_unlabelled());

        assert!(c5
            .induced_subgraph(&[9usize].into_iter().collect())
            .is_err());
    }

    #[test]
    fn random_tree_is_tree() {
        for seed in 0..5 {
            for n in [1usize, 2, 3, 7, 20] {
                let t = random_tree(n, seed);
                assert_eq!(t.m(), n.saturating_sub(1));
                assert!(t.is_connected());
            }
        }
        // deterministic for a fixed seed
        assert_eq!(random_tree(12, 42), random_tree(12, 42));
    }

    #[test]
    fn degree_sum_is_twice_edges() {
        let g = tightness(5).unwrap();
        let sum: usize = g.vertices().map(|v| g.degree(v)).sum();
        assert_eq!(sum, 2 * g.m());
    }
}
