//! Block decomposition, leafblocks, local 2-connectivity, chordless
//! recognition and the structural checks built on them.
//!
//! Witnesses (separators, chords, cycles) are always materialized so that a
//! failing downstream check can be replayed against the definitions.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::contraction::{contract, Matching, MatchingError};
use crate::graph::{EdgePair, Graph, GraphError};

#[derive(Debug, thiserror::Error)]
pub enum StructureError {
    #[error("vertices must be distinct (got {0} twice)")]
    EqualVertices(usize),
    #[error("graph is not 2-connected")]
    NotBiconnected,
    #[error("target vertices y and z must differ")]
    EqualTargets,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Contraction(#[from] crate::contraction::ContractionError),
    #[error("report does not describe a leafblock of this graph")]
    InvalidLeafblockReport,
}

/// One block (maximal 2-connected subgraph, single edges included).
#[derive(Debug, Clone, Serialize)]
pub struct Block {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<EdgePair>,
}

/// Blocks, cutvertices and the bipartite block-cut tree.
#[derive(Debug, Clone, Serialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cutvertices: BTreeSet<usize>,
    /// block id -> cutvertices it contains
    pub tree_block_to_cut: Vec<BTreeSet<usize>>,
}

impl BlockDecomposition {
    pub fn blocks_containing(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.blocks
            .iter()
            .enumerate()
            .filter(move |(_, b)| b.vertices.contains(&v))
            .map(|(i, _)| i)
    }
}

/// Tarjan biconnected components, iterative. Isolated vertices produce no
/// blocks; every edge lands in exactly one block.
pub fn blocks(g: &Graph) -> BlockDecomposition {
    const UNSET: usize = usize::MAX;
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut disc = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![UNSET; n];
    let mut ptr = vec![0usize; n];
    let mut timer = 0usize;
    let mut estack: Vec<EdgePair> = Vec::new();
    let mut raw_blocks: Vec<Vec<EdgePair>> = Vec::new();

    for root in 0..n {
        if disc[root] != UNSET {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut dfs = vec![root];
        while let Some(&u) = dfs.last() {
            if ptr[u] < adj[u].len() {
                let w = adj[u][ptr[u]];
                ptr[u] += 1;
                if disc[w] == UNSET {
                    parent[w] = u;
                    estack.push(EdgePair::new(u, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    dfs.push(w);
                } else if w != parent[u] && disc[w] < disc[u] {
                    estack.push(EdgePair::new(u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                dfs.pop();
                if let Some(&p) = dfs.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let stop = EdgePair::new(p, u);
                        let mut block = Vec::new();
                        while let Some(e) = estack.pop() {
                            block.push(e);
                            if e == stop {
                                break;
                            }
                        }
                        raw_blocks.push(block);
                    }
                }
            }
        }
    }

    let blocks: Vec<Block> = raw_blocks
        .into_iter()
        .map(|es| Block {
            vertices: es.iter().flat_map(|e| e.endpoints()).collect(),
            edges: es.into_iter().collect(),
        })
        .collect();

    let mut membership = vec![0usize; n];
    for b in &blocks {
        for &v in &b.vertices {
            membership[v] += 1;
        }
    }
    let cutvertices: BTreeSet<usize> = (0..n).filter(|&v| membership[v] >= 2).collect();
    let tree_block_to_cut = blocks
        .iter()
        .map(|b| b.vertices.intersection(&cutvertices).copied().collect())
        .collect();

    BlockDecomposition {
        blocks,
        cutvertices,
        tree_block_to_cut,
    }
}

/// A leafblock together with its unique cutvertex.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LeafblockReport {
    pub block: usize,
    pub cutvertex: usize,
}

/// Blocks containing exactly one cutvertex. A block that is a whole
/// component (no cutvertex in it) is not reported.
pub fn leafblocks(d: &BlockDecomposition) -> Vec<LeafblockReport> {
    d.tree_block_to_cut
        .iter()
        .enumerate()
        .filter(|(_, cuts)| cuts.len() == 1)
        .map(|(block, cuts)| LeafblockReport {
            block,
            cutvertex: *cuts.iter().next().expect("len checked"),
        })
        .collect()
}

/// Vertex 2-connectivity, with a single edge (K2) counting as 2-connected
/// and an isolated vertex not.
pub fn is_biconnected(g: &Graph) -> bool {
    match g.n() {
        0 | 1 => false,
        2 => g.m() == 1,
        _ => {
            let d = blocks(g);
            g.is_connected() && d.blocks.len() == 1 && d.blocks[0].vertices.len() == g.n()
        }
    }
}

/// Answer to "is there a cycle through both a and b", with a witness when the
/// answer is no.
#[derive(Debug, Clone, Serialize)]
pub enum CycleAnswer {
    /// Some cycle contains both vertices.
    Together,
    /// ab is not an edge and removing `cut` separates a from b.
    Separated { cut: usize },
    /// a and b already lie in different components.
    Disconnected,
    /// ab is an edge but lies in no cycle (bridge or pendant edge).
    BridgeOnly,
}

impl CycleAnswer {
    pub fn together(&self) -> bool {
        matches!(self, CycleAnswer::Together)
    }
}

/// True iff some cycle of g contains both a and b, answered from the block
/// decomposition: equivalent to a shared block on >= 3 vertices. The witness
/// separator (ab not an edge) is found by direct removal.
pub fn in_common_cycle(g: &Graph, a: usize, b: usize) -> Result<CycleAnswer, StructureError> {
    if a == b {
        return Err(StructureError::EqualVertices(a));
    }
    let d = blocks(g);
    let shared = d.blocks.iter().any(|blk| {
        blk.vertices.len() >= 3 && blk.vertices.contains(&a) && blk.vertices.contains(&b)
    });
    if shared {
        return Ok(CycleAnswer::Together);
    }
    if g.has_edge(a, b) {
        return Ok(CycleAnswer::BridgeOnly);
    }
    // not in a common cycle and nonadjacent: produce the separator
    if !same_component(g, a, b) {
        return Ok(CycleAnswer::Disconnected);
    }
    for x in g.vertices() {
        if x == a || x == b {
            continue;
        }
        if !same_component(&g.without_vertex(x), a, b) {
            return Ok(CycleAnswer::Separated { cut: x });
        }
    }
    unreachable!("nonadjacent vertices in no common cycle must have a separator");
}

fn same_component(g: &Graph, a: usize, b: usize) -> bool {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![a];
    seen[a] = true;
    while let Some(v) = stack.pop() {
        if v == b {
            return true;
        }
        for w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

/// Flow-based count of internally vertex-disjoint a-b paths, capped at
/// `want`. Kept independent of the block decomposition so the two can be
/// cross-checked.
pub fn internally_disjoint_paths(g: &Graph, a: usize, b: usize, want: usize) -> Vec<Vec<usize>> {
    // node splitting: v_in = 2v, v_out = 2v + 1; endpoints get unbounded
    // vertex capacity.
    let n = g.n();
    let nodes = 2 * n;
    struct Arc {
        to: usize,
        cap: i64,
        init: i64,
        rev: usize,
    }
    let mut arcs: Vec<Vec<Arc>> = (0..nodes).map(|_| Vec::new()).collect();
    fn add(arcs: &mut [Vec<Arc>], from: usize, to: usize, cap: i64) {
        let rf = arcs[to].len();
        let rt = arcs[from].len();
        arcs[from].push(Arc {
            to,
            cap,
            init: cap,
            rev: rf,
        });
        arcs[to].push(Arc {
            to: from,
            cap: 0,
            init: 0,
            rev: rt,
        });
    }
    for v in 0..n {
        let cap = if v == a || v == b { i64::MAX / 4 } else { 1 };
        add(&mut arcs, 2 * v, 2 * v + 1, cap);
    }
    for e in g.edges() {
        add(&mut arcs, 2 * e.u() + 1, 2 * e.v(), 1);
        add(&mut arcs, 2 * e.v() + 1, 2 * e.u(), 1);
    }
    let source = 2 * a + 1;
    let sink = 2 * b;
    let mut flow = 0usize;
    while flow < want {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; nodes];
        let mut queue = std::collections::VecDeque::from([source]);
        let mut reached = false;
        'bfs: while let Some(x) = queue.pop_front() {
            for (i, arc) in arcs[x].iter().enumerate() {
                if arc.cap > 0 && prev[arc.to].is_none() && arc.to != source {
                    prev[arc.to] = Some((x, i));
                    if arc.to == sink {
                        reached = true;
                        break 'bfs;
                    }
                    queue.push_back(arc.to);
                }
            }
        }
        if !reached {
            break;
        }
        let mut x = sink;
        while x != source {
            let (px, pi) = prev[x].expect("path recorded");
            let rev = arcs[px][pi].rev;
            arcs[px][pi].cap -= 1;
            arcs[x][rev].cap += 1;
            x = px;
        }
        flow += 1;
    }
    // decompose: an original arc carries (init - cap) units; walk them off
    // one unit at a time from the source.
    let mut paths = Vec::new();
    for _ in 0..flow {
        let mut path = vec![a];
        let mut x = source;
        while x != sink {
            let i = (0..arcs[x].len())
                .find(|&i| arcs[x][i].init > 0 && arcs[x][i].init - arcs[x][i].cap > 0)
                .expect("flow conservation");
            arcs[x][i].cap += 1;
            let (to, rev) = (arcs[x][i].to, arcs[x][i].rev);
            arcs[to][rev].cap -= 1;
            x = to;
            if x.is_multiple_of(2) && x / 2 != *path.last().expect("nonempty") {
                path.push(x / 2);
            }
        }
        paths.push(path);
    }
    paths
}

/// A chord edge together with a cycle through its endpoints in G − e.
#[derive(Debug, Clone, Serialize)]
pub struct ChordWitness {
    pub chord: EdgePair,
    /// Closed cycle as a vertex sequence (implicitly wrapping around).
    pub cycle: Vec<usize>,
}

impl ChordWitness {
    /// Checks the witness against the graph: the cycle is a real cycle of
    /// g avoiding the chord edge, and the chord connects two non-adjacent
    /// cycle vertices.
    pub fn verify(&self, g: &Graph) -> bool {
        let c = &self.cycle;
        let k = c.len();
        if k < 4 || !g.contains(self.chord) {
            return false;
        }
        if c.iter().collect::<BTreeSet<_>>().len() != k {
            return false;
        }
        for i in 0..k {
            let e = EdgePair::new(c[i], c[(i + 1) % k]);
            if e == self.chord || !g.contains(e) {
                return false;
            }
        }
        let pos_u = c.iter().position(|&v| v == self.chord.u());
        let pos_v = c.iter().position(|&v| v == self.chord.v());
        match (pos_u, pos_v) {
            (Some(i), Some(j)) => {
                let d = i.abs_diff(j);
                d != 1 && d != k - 1
            }
            _ => false,
        }
    }
}

/// Builds a cycle through a and b, assuming one exists, by joining two
/// internally disjoint paths.
fn cycle_through(g: &Graph, a: usize, b: usize) -> Vec<usize> {
    let paths = internally_disjoint_paths(g, a, b, 2);
    assert!(paths.len() >= 2, "no cycle through {a} and {b}");
    let mut cycle = paths[0].clone();
    for &v in paths[1][1..paths[1].len() - 1].iter().rev() {
        cycle.push(v);
    }
    cycle
}

/// True iff G−e has a cycle through both endpoints of e, i.e. e is a chord
/// of some cycle of g.
pub fn is_chord_edge(g: &Graph, e: EdgePair) -> Result<bool, StructureError> {
    let g2 = g.without_edge(e)?;
    Ok(in_common_cycle(&g2, e.u(), e.v())?.together())
}

/// Sweeps every edge with `is_chord_edge`; returns the first chord found
/// (canonical edge order) with a containing cycle.
pub fn is_chordless(g: &Graph) -> Result<(), ChordWitness> {
    for e in g.edges() {
        let g2 = g.without_edge(e).expect("iterating own edges");
        if in_common_cycle(&g2, e.u(), e.v())
            .expect("distinct endpoints")
            .together()
        {
            let cycle = cycle_through(&g2, e.u(), e.v());
            return Err(ChordWitness { chord: e, cycle });
        }
    }
    Ok(())
}

/// Minimally 2-connected = 2-connected and chordless.
pub fn is_minimally_2connected(g: &Graph) -> bool {
    is_biconnected(g) && is_chordless(g).is_ok()
}

/// Two paths out of x meeting only in x.
#[derive(Debug, Clone, Serialize)]
pub struct MengerPathPair {
    pub shared: usize,
    pub p1: Vec<usize>,
    pub p2: Vec<usize>,
}

fn shortest_path(g: &Graph, from: usize, to: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; g.n()];
    let mut queue = std::collections::VecDeque::from([from]);
    prev[from] = from;
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![to];
            let mut x = to;
            while x != from {
                x = prev[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        for w in g.neighbors(v) {
            if prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Paths P1: x→y and P2: x→z sharing only x. Requires a 2-connected graph
/// and y ≠ z; when y = x (or z = x) the corresponding path degenerates to
/// the single vertex x.
pub fn menger_pair(
    g: &Graph,
    x: usize,
    y: usize,
    z: usize,
) -> Result<MengerPathPair, StructureError> {
    if y == z {
        return Err(StructureError::EqualTargets);
    }
    if !is_biconnected(g) {
        return Err(StructureError::NotBiconnected);
    }
    if y == x || z == x {
        let target = if y == x { z } else { y };
        let path = shortest_path(g, x, target).expect("2-connected graphs are connected");
        let (p1, p2) = if y == x {
            (vec![x], path)
        } else {
            (path, vec![x])
        };
        return Ok(MengerPathPair { shared: x, p1, p2 });
    }
    // attach a temporary apex adjacent to y and z; two internally disjoint
    // x-apex paths hit y and z once each
    let mut h = g.clone().into_unlabelled();
    let t = h.n();
    h.add_edge(y, t);
    h.add_edge(z, t);
    let mut paths = internally_disjoint_paths(&h, x, t, 2);
    assert_eq!(paths.len(), 2, "2-connected graph must yield two paths");
    for p in paths.iter_mut() {
        assert_eq!(p.pop(), Some(t));
    }
    let (p1, p2) = if *paths[0].last().expect("nonempty") == y {
        (paths[0].clone(), paths[1].clone())
    } else {
        (paths[1].clone(), paths[0].clone())
    };
    assert_eq!(*p1.last().unwrap(), y);
    assert_eq!(*p2.last().unwrap(), z);
    Ok(MengerPathPair { shared: x, p1, p2 })
}

/// Why property P failed.
#[derive(Debug, Clone, Serialize)]
pub enum PropertyPViolation {
    QuotientNotBiconnected,
    Chord { edge: EdgePair, cycle: Vec<usize> },
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyPReport {
    pub holds: bool,
    pub violation: Option<PropertyPViolation>,
}

/// Property P: (i) the contracted graph is 2-connected, and (ii) no edge of
/// E(G)\M with both endpoints among matched vertices is a chord of a cycle
/// of g.
pub fn check_property_p(g: &Graph, m: &Matching) -> Result<PropertyPReport, StructureError> {
    let cg = contract(g, m)?;
    if !is_biconnected(cg.quotient()) {
        return Ok(PropertyPReport {
            holds: false,
            violation: Some(PropertyPViolation::QuotientNotBiconnected),
        });
    }
    let matched: BTreeSet<usize> = m.vertices().collect();
    for e in g.edges() {
        if m.contains(e) || !matched.contains(&e.u()) || !matched.contains(&e.v()) {
            continue;
        }
        if is_chord_edge(g, e)? {
            let g2 = g.without_edge(e)?;
            let cycle = cycle_through(&g2, e.u(), e.v());
            return Ok(PropertyPReport {
                holds: false,
                violation: Some(PropertyPViolation::Chord { edge: e, cycle }),
            });
        }
    }
    Ok(PropertyPReport {
        holds: true,
        violation: None,
    })
}

/// Removes the interiors of the given leafblocks (block vertices minus the
/// cutvertex). Returns the surviving induced subgraph and its id remap
/// (new id -> old id).
pub fn remove_leafblock_interiors(
    g: &Graph,
    reports: &[LeafblockReport],
) -> Result<(Graph, Vec<usize>), StructureError> {
    let d = blocks(g);
    let valid = leafblocks(&d);
    let mut interior: BTreeSet<usize> = BTreeSet::new();
    for r in reports {
        let ok = valid
            .iter()
            .any(|v| v.block == r.block && v.cutvertex == r.cutvertex);
        if !ok {
            return Err(StructureError::InvalidLeafblockReport);
        }
        for &v in &d.blocks[r.block].vertices {
            if v != r.cutvertex {
                interior.insert(v);
            }
        }
    }
    let keep: BTreeSet<usize> = g.vertices().filter(|v| !interior.contains(v)).collect();
    Ok(g.induced_subgraph(&keep)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};

    fn path(n: usize) -> Graph {
        generate(&GeneratorSpec::Path { n }).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        generate(&GeneratorSpec::Cycle { n }).unwrap()
    }

    fn k4() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    fn two_triangles_sharing(v: usize) -> Graph {
        // triangles {v,1,2} and {v,3,4} with v = 0
        assert_eq!(v, 0);
        Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
    }

    #[test]
    fn blocks_of_path() {
        let d = blocks(&path(3));
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.cutvertices, [1].into_iter().collect());
    }

    #[test]
    fn blocks_of_c5() {
        let d = blocks(&cycle(5));
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.blocks[0].edges.len(), 5);
        assert!(d.cutvertices.is_empty());
    }

    #[test]
    fn blocks_of_two_triangles() {
        let d = blocks(&two_triangles_sharing(0));
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.cutvertices, [0].into_iter().collect());
    }

    #[test]
    fn blocks_partition_edges() {
        for g in [path(6), cycle(7), k4(), two_triangles_sharing(0)] {
            let d = blocks(&g);
            let total: usize = d.blocks.iter().map(|b| b.edges.len()).sum();
            assert_eq!(total, g.m());
        }
    }

    #[test]
    fn isolated_vertices_produce_no_blocks() {
        let d = blocks(&Graph::empty(4));
        assert!(d.blocks.is_empty());
    }

    #[test]
    fn leafblock_examples() {
        let d = blocks(&path(4));
        let lb = leafblocks(&d);
        assert_eq!(lb.len(), 2);
        assert!(leafblocks(&blocks(&cycle(5))).is_empty());
        assert_eq!(leafblocks(&blocks(&two_triangles_sharing(0))).len(), 2);
    }

    #[test]
    fn common_cycle_examples() {
        assert!(in_common_cycle(&cycle(5), 0, 2).unwrap().together());
        match in_common_cycle(&path(3), 0, 2).unwrap() {
            CycleAnswer::Separated { cut } => assert_eq!(cut, 1),
            other => panic!("expected separator, got {other:?}"),
        }
        match in_common_cycle(&two_triangles_sharing(0), 1, 3).unwrap() {
            CycleAnswer::Separated { cut } => assert_eq!(cut, 0),
            other => panic!("expected separator, got {other:?}"),
        }
        assert!(in_common_cycle(&path(3), 0, 0).is_err());
    }

    #[test]
    fn common_cycle_edge_cases() {
        // adjacent endpoints answer on g directly
        match in_common_cycle(&path(2), 0, 1).unwrap() {
            CycleAnswer::BridgeOnly => {}
            other => panic!("bridge expected, got {other:?}"),
        }
        let mut g = cycle(4);
        g.add_edge(4, 5); // far-away component
        match in_common_cycle(&g, 0, 4).unwrap() {
            CycleAnswer::Disconnected => {}
            other => panic!("disconnected expected, got {other:?}"),
        }
    }

    #[test]
    fn chord_edge_examples() {
        for e in k4().edges() {
            assert!(is_chord_edge(&k4(), e).unwrap());
        }
        for e in cycle(5).edges() {
            assert!(!is_chord_edge(&cycle(5), e).unwrap());
        }
        let t3 = crate::graph::tightness(3).unwrap();
        for e in t3.edges() {
            assert!(!is_chord_edge(&t3, e).unwrap(), "tightness(3) is chordless");
        }
    }

    #[test]
    fn chordless_examples() {
        assert!(is_chordless(&cycle(5)).is_ok());
        let w = is_chordless(&k4()).unwrap_err();
        let g2 = k4().without_edge(w.chord).unwrap();
        verify_cycle_witness(&g2, &w);
        assert!(w.verify(&k4()), "witness must check out against the graph");
        let k5 = Graph::from_edges(5, (0..5).flat_map(|i| ((i + 1)..5).map(move |j| (i, j))));
        let s = crate::graph::full_subdivision(&k5);
        assert!(is_chordless(&s).is_ok());
    }

    pub(crate) fn verify_cycle_witness(g_minus_chord: &Graph, w: &ChordWitness) {
        let c = &w.cycle;
        assert!(c.len() >= 3);
        assert!(c.contains(&w.chord.u()) && c.contains(&w.chord.v()));
        let mut distinct = c.clone();
        distinct.sort_unstable();
        distinct.dedup();
        assert_eq!(distinct.len(), c.len(), "cycle must be simple");
        for i in 0..c.len() {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            assert!(g_minus_chord.has_edge(a, b), "cycle edge {a}-{b} missing");
        }
    }

    #[test]
    fn minimally_2connected_examples() {
        assert!(is_minimally_2connected(&cycle(5)));
        assert!(!is_minimally_2connected(&k4()));
        assert!(!is_minimally_2connected(
            &crate::graph::tightness(3).unwrap()
        ));
    }

    fn assert_menger_valid(g: &Graph, pair: &MengerPathPair, x: usize, y: usize, z: usize) {
        assert_eq!(pair.p1.first(), Some(&x));
        assert_eq!(pair.p1.last(), Some(&y));
        assert_eq!(pair.p2.first(), Some(&x));
        assert_eq!(pair.p2.last(), Some(&z));
        for p in [&pair.p1, &pair.p2] {
            for w in p.windows(2) {
                assert!(g.has_edge(w[0], w[1]));
            }
            let mut d = p.clone();
            d.sort_unstable();
            d.dedup();
            assert_eq!(d.len(), p.len(), "paths must be simple");
        }
        let s1: BTreeSet<usize> = pair.p1.iter().copied().collect();
        let s2: BTreeSet<usize> = pair.p2.iter().copied().collect();
        let shared: Vec<usize> = s1.intersection(&s2).copied().collect();
        assert_eq!(shared, vec![x]);
    }

    #[test]
    fn menger_pair_examples() {
        let c5 = cycle(5);
        let p = menger_pair(&c5, 0, 2, 3).unwrap();
        assert_menger_valid(&c5, &p, 0, 2, 3);

        let p = menger_pair(&c5, 0, 0, 1).unwrap();
        assert_eq!(p.p1, vec![0]);
        assert_menger_valid(&c5, &p, 0, 0, 1);

        let p = menger_pair(&k4(), 0, 1, 2).unwrap();
        assert_menger_valid(&k4(), &p, 0, 1, 2);

        assert!(menger_pair(&path(4), 0, 1, 2).is_err());
        assert!(menger_pair(&c5, 0, 1, 1).is_err());
    }

    #[test]
    fn property_p_examples() {
        let c6 = cycle(6);
        let m = Matching::new(&c6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        assert!(check_property_p(&c6, &m).unwrap().holds);

        let m = Matching::new(&k4(), [(0, 1), (2, 3)]).unwrap();
        let rep = check_property_p(&k4(), &m).unwrap();
        assert!(!rep.holds);
        match rep.violation.unwrap() {
            PropertyPViolation::Chord { edge, .. } => {
                assert_eq!(edge, EdgePair::new(0, 2));
            }
            other => panic!("chord violation expected, got {other:?}"),
        }

        let p4 = path(4);
        let m = Matching::new(&p4, [(0, 1), (2, 3)]).unwrap();
        assert!(
            check_property_p(&p4, &m).unwrap().holds,
            "K2 quotient counts"
        );
    }

    #[test]
    fn remove_leafblock_interiors_examples() {
        let p4 = path(4);
        let lb = leafblocks(&blocks(&p4));
        let (g, remap) = remove_leafblock_interiors(&p4, &lb).unwrap();
        assert_eq!(remap, vec![1, 2]);
        assert_eq!(g.m(), 1);
        assert!(g.is_connected());

        let tt = two_triangles_sharing(0);
        let lb = leafblocks(&blocks(&tt));
        let (g, remap) = remove_leafblock_interiors(&tt, &lb).unwrap();
        assert_eq!(remap, vec![0]);
        assert_eq!(g.m(), 0);

        let p3 = path(3);
        let lb = leafblocks(&blocks(&p3));
        let first: Vec<LeafblockReport> = lb
            .iter()
            .copied()
            .filter(|r| blocks(&p3).blocks[r.block].vertices.contains(&0))
            .collect();
        let (g, remap) = remove_leafblock_interiors(&p3, &first).unwrap();
        assert_eq!(remap, vec![1, 2]);
        assert_eq!(g.m(), 1);

        let bogus = [LeafblockReport {
            block: 0,
            cutvertex: 99,
        }];
        assert!(remove_leafblock_interiors(&p3, &bogus).is_err());
    }

    #[test]
    fn flow_oracle_agrees_with_blocks() {
        // cross-check in_common_cycle against the flow-based count on a
        // few mixed graphs
        let graphs = [
            path(6),
            cycle(8),
            k4(),
            two_triangles_sharing(0),
            crate::graph::tightness(4).unwrap(),
        ];
        for g in &graphs {
            for a in g.vertices() {
                for b in g.vertices().filter(|&b| b > a) {
                    let fast = in_common_cycle(g, a, b).unwrap().together();
                    let slow = if g.has_edge(a, b) {
                        // edge ab plus a second internally disjoint path
                        internally_disjoint_paths(g, a, b, 2).len() >= 2
                    } else {
                        internally_disjoint_paths(g, a, b, 2).len() >= 2
                    };
                    assert_eq!(fast, slow, "disagreement at ({a},{b}) in {g:?}");
                }
            }
        }
    }
}
