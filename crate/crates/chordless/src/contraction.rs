//! Matchings, the contracted graph G_M with per-edge red/blue
//! classification, and path expansion back into the host.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::edge_coloring::ProperEdgeColoring;
use crate::graph::{EdgePair, Graph, GraphError};

#[derive(Debug, thiserror::Error)]
pub enum MatchingError {
    #[error("edge {0:?} is not in the host graph")]
    EdgeNotInHost(EdgePair),
    #[error("edges {0:?} and {1:?} share an endpoint")]
    SharedEndpoint(EdgePair, EdgePair),
}

#[derive(Debug, thiserror::Error)]
pub enum ContractionError {
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("unknown contracted vertex id {0}")]
    UnknownQuotientVertex(usize),
    #[error("sequence is not a path in the quotient: {0}")]
    NotAQuotientPath(String),
    #[error("edge coloring is not proper: {0:?} and {1:?} share an endpoint and a color")]
    ImproperColoring(EdgePair, EdgePair),
}

/// Set of pairwise vertex-disjoint edges of a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edges: BTreeSet<EdgePair>,
}

impl Matching {
    pub fn new(
        host: &Graph,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, MatchingError> {
        let edges: BTreeSet<EdgePair> = edges
            .into_iter()
            .map(|(a, b)| EdgePair::new(a, b))
            .collect();
        let mut seen: BTreeMap<usize, EdgePair> = BTreeMap::new();
        for &e in &edges {
            if !host.contains(e) {
                return Err(MatchingError::EdgeNotInHost(e));
            }
            for x in e.endpoints() {
                if let Some(prev) = seen.insert(x, e) {
                    if prev != e {
                        return Err(MatchingError::SharedEndpoint(prev, e));
                    }
                }
            }
        }
        Ok(Matching { edges })
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgePair> + '_ {
        self.edges.iter().copied()
    }

    pub fn contains(&self, e: EdgePair) -> bool {
        self.edges.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// All matched endpoints, sorted.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        // BTreeSet of edges is sorted by (u, v); collect endpoints into order
        let mut vs: Vec<usize> = self.edges.iter().flat_map(|e| e.endpoints()).collect();
        vs.sort_unstable();
        vs.into_iter()
    }
}

/// Witness that an edge of the quotient is red: pq and rs are the matched
/// pairs, pr is a host edge, p has degree 2 in G[M] and q degree > 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RedWitness {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub s: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EdgeClass {
    Red(RedWitness),
    Blue,
}

impl EdgeClass {
    pub fn is_red(&self) -> bool {
        matches!(self, EdgeClass::Red(_))
    }
}

/// G_M: the quotient of G[M] under contraction of all matched edges, with
/// provenance and red/blue classification.
#[derive(Debug, Clone)]
pub struct ContractedGraph {
    host: Graph,
    quotient: Graph,
    /// quotient vertex id -> matched host edge (sorted canonically)
    pairs: Vec<EdgePair>,
    /// host vertex -> quotient vertex, for matched vertices only
    vertex_to_quotient: HashMap<usize, usize>,
    /// per-quotient-edge classification
    classes: BTreeMap<EdgePair, EdgeClass>,
    /// d_{G[M]}: degree of each matched host vertex in the induced graph
    /// G[M] (non-matching edges among matched vertices included)
    induced_degree: HashMap<usize, usize>,
}

impl ContractedGraph {
    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn quotient(&self) -> &Graph {
        &self.quotient
    }

    pub fn pairs(&self) -> &[EdgePair] {
        &self.pairs
    }

    pub fn pair_of(&self, quotient_vertex: usize) -> EdgePair {
        self.pairs[quotient_vertex]
    }

    pub fn quotient_vertex_of(&self, host_vertex: usize) -> Option<usize> {
        self.vertex_to_quotient.get(&host_vertex).copied()
    }

    pub fn class_of(&self, e: EdgePair) -> Option<EdgeClass> {
        self.classes.get(&e).copied()
    }

    pub fn classes(&self) -> impl Iterator<Item = (EdgePair, EdgeClass)> + '_ {
        self.classes.iter().map(|(e, c)| (*e, *c))
    }

    pub fn induced_degree(&self, host_vertex: usize) -> Option<usize> {
        self.induced_degree.get(&host_vertex).copied()
    }

    pub fn matching(&self) -> Matching {
        Matching {
            edges: self.pairs.iter().copied().collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<serde_json::Value> = self
            .classes
            .iter()
            .map(|(e, c)| {
                let (color, witness) = match c {
                    EdgeClass::Red(w) => ("red", Some([w.p, w.q, w.r, w.s])),
                    EdgeClass::Blue => ("blue", None),
                };
                serde_json::json!({
                    "quotient_edge": [e.u(), e.v()],
                    "pairs": [
                        self.pairs[e.u()].endpoints(),
                        self.pairs[e.v()].endpoints(),
                    ],
                    "color": color,
                    "witness": witness,
                })
            })
            .collect();
        serde_json::json!({
            "matching": self.pairs.iter().map(|p| p.endpoints()).collect::<Vec<_>>(),
            "quotient_vertices": self.pairs.len(),
            "edges": edges,
        })
    }
}

/// G[M]: the subgraph induced by the endpoints of the matching.
pub fn induced_by_matching(g: &Graph, m: &Matching) -> Graph {
    let keep: BTreeSet<usize> = m.vertices().collect();
    // keep original ids by building directly instead of remapping
    let mut out = Graph::empty(g.n());
    for e in g.edges() {
        if keep.contains(&e.u()) && keep.contains(&e.v()) {
            out.add_edge(e.u(), e.v());
        }
    }
    out
}

/// Contracts every matched edge of `m` to a single quotient vertex and
/// classifies each quotient edge red or blue. Quotient ids follow the
/// canonical sort order of the matched pairs.
pub fn contract(g: &Graph, m: &Matching) -> Result<ContractedGraph, ContractionError> {
    let pairs: Vec<EdgePair> = m.edges().collect(); // already sorted
    let mut vertex_to_quotient = HashMap::new();
    for (qid, pair) in pairs.iter().enumerate() {
        vertex_to_quotient.insert(pair.u(), qid);
        vertex_to_quotient.insert(pair.v(), qid);
    }

    let matched: BTreeSet<usize> = m.vertices().collect();
    let mut induced_degree: HashMap<usize, usize> = HashMap::new();
    for &v in &matched {
        let d = g.neighbors(v).filter(|w| matched.contains(w)).count();
        induced_degree.insert(v, d);
    }

    let mut quotient = Graph::empty(pairs.len());
    for e in g.edges() {
        let (Some(&qa), Some(&qb)) = (
            vertex_to_quotient.get(&e.u()),
            vertex_to_quotient.get(&e.v()),
        ) else {
            continue;
        };
        if qa != qb {
            quotient.add_edge(qa, qb);
        }
    }

    let mut classes = BTreeMap::new();
    for qe in quotient.edges() {
        let class = classify(g, &induced_degree, pairs[qe.u()], pairs[qe.v()]);
        classes.insert(qe, class);
    }

    Ok(ContractedGraph {
        host: g.clone(),
        quotient,
        pairs,
        vertex_to_quotient,
        classes,
        induced_degree,
    })
}

/// Exhausts the eight assignments of {{p,q},{r,s}} = {{a,b},{c,d}} in a
/// deterministic order and keeps the first red witness.
fn classify(
    g: &Graph,
    induced_degree: &HashMap<usize, usize>,
    ab: EdgePair,
    cd: EdgePair,
) -> EdgeClass {
    for (pq, rs) in [(ab, cd), (cd, ab)] {
        for p in pq.endpoints() {
            let q = pq.other(p);
            for r in rs.endpoints() {
                let s = rs.other(r);
                if g.has_edge(p, r) && induced_degree[&p] == 2 && induced_degree[&q] > 2 {
                    return EdgeClass::Red(RedWitness { p, q, r, s });
                }
            }
        }
    }
    EdgeClass::Blue
}

/// Restriction of a contracted graph to a subset of its quotient vertices,
/// computed as a fresh contraction of the restricted matching.
pub fn contracted_induced(
    cg: &ContractedGraph,
    keep: &BTreeSet<usize>,
) -> Result<ContractedGraph, ContractionError> {
    for &q in keep {
        if q >= cg.pairs.len() {
            return Err(ContractionError::UnknownQuotientVertex(q));
        }
    }
    let m = Matching {
        edges: keep.iter().map(|&q| cg.pairs[q]).collect(),
    };
    contract(&cg.host, &m)
}

/// Expands a quotient path back into a shortest compliant host path: the
/// host path runs between the first and last matched pairs, stays inside
/// the pairs of the quotient path, and uses only matched edges of those
/// pairs plus host edges between consecutive pairs.
pub fn expand_path(cg: &ContractedGraph, qpath: &[usize]) -> Result<Vec<usize>, ContractionError> {
    if qpath.is_empty() {
        return Err(ContractionError::NotAQuotientPath("empty sequence".into()));
    }
    let mut distinct: Vec<usize> = qpath.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != qpath.len() {
        return Err(ContractionError::NotAQuotientPath(
            "repeated quotient vertex".into(),
        ));
    }
    for &q in qpath {
        if q >= cg.pairs.len() {
            return Err(ContractionError::UnknownQuotientVertex(q));
        }
    }
    for w in qpath.windows(2) {
        if !cg.quotient.has_edge(w[0], w[1]) {
            return Err(ContractionError::NotAQuotientPath(format!(
                "{} and {} are not adjacent in the quotient",
                w[0], w[1]
            )));
        }
    }

    if qpath.len() == 1 {
        return Ok(vec![cg.pairs[qpath[0]].u()]);
    }

    // allowed edges: matched edges of the path's pairs, and host edges
    // between consecutive pairs
    let mut allowed: BTreeSet<EdgePair> = qpath.iter().map(|&q| cg.pairs[q]).collect();
    for w in qpath.windows(2) {
        let (pa, pb) = (cg.pairs[w[0]], cg.pairs[w[1]]);
        for x in pa.endpoints() {
            for y in pb.endpoints() {
                if g_has(&cg.host, x, y) {
                    allowed.insert(EdgePair::new(x, y));
                }
            }
        }
    }
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for e in &allowed {
        adj.entry(e.u()).or_default().insert(e.v());
        adj.entry(e.v()).or_default().insert(e.u());
    }

    let first = cg.pairs[*qpath.first().expect("nonempty")];
    let last = cg.pairs[*qpath.last().expect("nonempty")];
    let sources = [first.u(), first.v()];
    let targets: BTreeSet<usize> = last.endpoints().into_iter().collect();

    // multi-source BFS, deterministic by sorted adjacency
    let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &s in &sources {
        if let std::collections::btree_map::Entry::Vacant(e) = prev.entry(s) {
            e.insert(s);
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        if targets.contains(&v) {
            let mut path = vec![v];
            let mut x = v;
            while prev[&x] != x {
                x = prev[&x];
                path.push(x);
            }
            path.reverse();
            return Ok(path);
        }
        if let Some(ns) = adj.get(&v) {
            for &w in ns {
                if let std::collections::btree_map::Entry::Vacant(e) = prev.entry(w) {
                    e.insert(v);
                    queue.push_back(w);
                }
            }
        }
    }
    unreachable!("a quotient path always expands to a host path");
}

fn g_has(g: &Graph, x: usize, y: usize) -> bool {
    x != y && g.has_edge(x, y)
}

/// Splits a proper edge coloring into its color classes, each a matching.
pub fn matchings_from_edge_coloring(
    g: &Graph,
    f: &ProperEdgeColoring,
) -> Result<Vec<Matching>, ContractionError> {
    if let Err((e1, e2)) = f.validate(g) {
        return Err(ContractionError::ImproperColoring(e1, e2));
    }
    let mut classes: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (e, c) in f.entries() {
        classes.entry(c).or_default().push((e.u(), e.v()));
    }
    classes
        .into_values()
        .map(|es| Matching::new(g, es).map_err(ContractionError::from))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};

    fn cycle(n: usize) -> Graph {
        generate(&GeneratorSpec::Cycle { n }).unwrap()
    }

    fn path(n: usize) -> Graph {
        generate(&GeneratorSpec::Path { n }).unwrap()
    }

    #[test]
    fn matching_validation() {
        let c6 = cycle(6);
        assert!(Matching::new(&c6, [(0, 1), (2, 3)]).is_ok());
        assert!(matches!(
            Matching::new(&c6, [(0, 2)]),
            Err(MatchingError::EdgeNotInHost(_))
        ));
        assert!(matches!(
            Matching::new(&c6, [(0, 1), (1, 2)]),
            Err(MatchingError::SharedEndpoint(_, _))
        ));
    }

    #[test]
    fn induced_by_matching_examples() {
        let p4 = path(4);
        let m = Matching::new(&p4, [(0, 1), (2, 3)]).unwrap();
        let gm = induced_by_matching(&p4, &m);
        assert_eq!(gm.m(), 3, "whole path induced");

        let c6 = cycle(6);
        let m = Matching::new(&c6, [(0, 1), (3, 4)]).unwrap();
        let gm = induced_by_matching(&c6, &m);
        assert_eq!(gm.m(), 2);
        assert!(gm.has_edge(0, 1) && gm.has_edge(3, 4));

        let m = Matching::new(&c6, std::iter::empty()).unwrap();
        assert_eq!(induced_by_matching(&c6, &m).m(), 0);
    }

    #[test]
    fn contract_path_is_blue_k2() {
        let p4 = path(4);
        let m = Matching::new(&p4, [(0, 1), (2, 3)]).unwrap();
        let cg = contract(&p4, &m).unwrap();
        assert_eq!(cg.quotient().n(), 2);
        assert_eq!(cg.quotient().m(), 1);
        let (_, class) = cg.classes().next().unwrap();
        assert_eq!(class, EdgeClass::Blue);
    }

    #[test]
    fn contract_c6_perfect_matching_is_blue_triangle() {
        let c6 = cycle(6);
        let m = Matching::new(&c6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        let cg = contract(&c6, &m).unwrap();
        assert_eq!(cg.quotient().n(), 3);
        assert_eq!(cg.quotient().m(), 3);
        assert!(cg.classes().all(|(_, c)| c == EdgeClass::Blue));
    }

    #[test]
    fn contract_red_edge_example() {
        // host on {p,q,r,s,t,u,w,x} = 0..8, M = {pq, rs, tu, wx},
        // extra host edges pr, qt, qw make d(p) = 2 and d(q) = 3 in G[M]
        let (p, q, r, s, t, u, w, x) = (0, 1, 2, 3, 4, 5, 6, 7);
        let host = Graph::from_edges(8, [(p, q), (r, s), (t, u), (w, x), (p, r), (q, t), (q, w)]);
        let m = Matching::new(&host, [(p, q), (r, s), (t, u), (w, x)]).unwrap();
        let cg = contract(&host, &m).unwrap();
        assert_eq!(cg.induced_degree(p), Some(2));
        assert_eq!(cg.induced_degree(q), Some(3));
        let qa = cg.quotient_vertex_of(p).unwrap();
        let qb = cg.quotient_vertex_of(r).unwrap();
        match cg.class_of(EdgePair::new(qa, qb)).unwrap() {
            EdgeClass::Red(wit) => {
                assert_eq!((wit.p, wit.q), (p, q));
                assert_eq!(EdgePair::new(wit.r, wit.s), EdgePair::new(r, s));
                assert!(host.has_edge(wit.p, wit.r));
            }
            EdgeClass::Blue => panic!("v_pq-v_rs must be red"),
        }
    }

    #[test]
    fn contracted_induced_identity_and_restriction() {
        let c6 = cycle(6);
        let m = Matching::new(&c6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        let cg = contract(&c6, &m).unwrap();

        let all: BTreeSet<usize> = (0..3).collect();
        let same = contracted_induced(&cg, &all).unwrap();
        assert_eq!(same.quotient(), cg.quotient());

        let sub: BTreeSet<usize> = [
            cg.quotient_vertex_of(0).unwrap(),
            cg.quotient_vertex_of(2).unwrap(),
        ]
        .into_iter()
        .collect();
        let small = contracted_induced(&cg, &sub).unwrap();
        assert_eq!(small.quotient().n(), 2);
        assert_eq!(small.quotient().m(), 1);
        assert!(small.classes().all(|(_, c)| c == EdgeClass::Blue));

        assert!(contracted_induced(&cg, &[9usize].into_iter().collect()).is_err());
    }

    /// Constraint set from the path-expansion observation, used as the
    /// oracle for expand_path outputs.
    pub(crate) fn assert_expansion_valid(cg: &ContractedGraph, qpath: &[usize], hpath: &[usize]) {
        assert!(!hpath.is_empty());
        let pairs: Vec<EdgePair> = qpath.iter().map(|&q| cg.pair_of(q)).collect();
        let first = pairs.first().unwrap();
        let last = pairs.last().unwrap();
        assert!(first.touches(hpath[0]), "must start in the first pair");
        assert!(
            last.touches(*hpath.last().unwrap()),
            "must end in the last pair"
        );
        let vertex_pool: BTreeSet<usize> = pairs.iter().flat_map(|p| p.endpoints()).collect();
        for &v in hpath {
            assert!(vertex_pool.contains(&v), "vertex {v} outside the pairs");
        }
        let mut d: Vec<usize> = hpath.to_vec();
        d.sort_unstable();
        d.dedup();
        assert_eq!(d.len(), hpath.len(), "host path must be simple");
        for w in hpath.windows(2) {
            let e = EdgePair::new(w[0], w[1]);
            let matched = pairs.contains(&e);
            let between_consecutive = pairs.windows(2).any(|pp| {
                (pp[0].touches(w[0]) && pp[1].touches(w[1]))
                    || (pp[0].touches(w[1]) && pp[1].touches(w[0]))
            });
            assert!(
                matched || (between_consecutive && cg.host().contains(e)),
                "edge {e:?} not allowed by the expansion rules"
            );
        }
    }

    #[test]
    fn expand_path_examples() {
        let c6 = cycle(6);
        let m = Matching::new(&c6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        let cg = contract(&c6, &m).unwrap();
        let q01 = cg.quotient_vertex_of(0).unwrap();
        let q23 = cg.quotient_vertex_of(2).unwrap();
        let q45 = cg.quotient_vertex_of(4).unwrap();

        let h = expand_path(&cg, &[q01, q23]).unwrap();
        assert_expansion_valid(&cg, &[q01, q23], &h);
        assert_eq!(h, vec![1, 2], "shortest compliant path");

        let h = expand_path(&cg, &[q01]).unwrap();
        assert_eq!(h.len(), 1);
        assert!(cg.pair_of(q01).touches(h[0]));

        let h = expand_path(&cg, &[q01, q23, q45]).unwrap();
        assert_expansion_valid(&cg, &[q01, q23, q45], &h);

        assert!(expand_path(&cg, &[q01, q45, q01]).is_err());
    }

    #[test]
    fn matchings_from_coloring_partition() {
        let c4 = cycle(4);
        let f = crate::edge_coloring::edge_color_vizing(&c4);
        let ms = matchings_from_edge_coloring(&c4, &f).unwrap();
        let total: usize = ms.iter().map(|m| m.len()).sum();
        assert_eq!(total, c4.m());
        for m in &ms {
            assert!(!m.is_empty());
        }
    }
}
