//! k-degeneracy peeling and greedy coloring in reverse peeling order.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::graph::Graph;

/// A peeling order certifying k-degeneracy: each vertex has at most k
/// neighbors later in the order.
#[derive(Debug, Clone, Serialize)]
pub struct DegeneracyOrdering {
    pub order: Vec<usize>,
    pub k: usize,
}

/// Peeling failure: a nonempty vertex set whose minimum induced degree
/// exceeds k (the maximal stuck core).
#[derive(Debug, Clone, Serialize)]
pub struct StuckCore {
    pub vertices: BTreeSet<usize>,
    pub min_degree: usize,
}

#[derive(Debug, Clone, Serialize)]
pub enum PeelOutcome {
    Ordered(DegeneracyOrdering),
    Stuck(StuckCore),
}

impl PeelOutcome {
    pub fn ordering(&self) -> Option<&DegeneracyOrdering> {
        match self {
            PeelOutcome::Ordered(o) => Some(o),
            PeelOutcome::Stuck(_) => None,
        }
    }
}

/// Repeatedly removes a vertex of current degree <= k, smallest id first on
/// ties. Failure is a value: the remaining core once no vertex qualifies.
pub fn degeneracy_ordering(g: &Graph, k: usize) -> PeelOutcome {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    // (degree, vertex) set gives smallest-degree-then-smallest-id removal
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (degree[v], v)).collect();
    while let Some(&(d, v)) = queue.iter().next() {
        if d > k {
            break;
        }
        queue.remove(&(d, v));
        alive[v] = false;
        order.push(v);
        for w in g.neighbors(v) {
            if alive[w] {
                queue.remove(&(degree[w], w));
                degree[w] -= 1;
                queue.insert((degree[w], w));
            }
        }
    }
    if order.len() == n {
        PeelOutcome::Ordered(DegeneracyOrdering { order, k })
    } else {
        let vertices: BTreeSet<usize> = (0..n).filter(|&v| alive[v]).collect();
        let min_degree = vertices
            .iter()
            .map(|&v| g.neighbors(v).filter(|w| alive[*w]).count())
            .min()
            .expect("stuck core is nonempty");
        debug_assert!(min_degree > k);
        PeelOutcome::Stuck(StuckCore {
            vertices,
            min_degree,
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ColoringError {
    #[error("ordering is not a permutation of the vertex set")]
    NotAPermutation,
}

/// Proper vertex coloring; colors are 1-based.
#[derive(Debug, Clone, Serialize)]
pub struct VertexColoring {
    pub colors: Vec<usize>,
    pub colors_used: usize,
}

impl VertexColoring {
    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges().all(|e| self.colors[e.u()] != self.colors[e.v()])
    }
}

/// Colors vertices in reverse peeling order, smallest color not used by an
/// already colored neighbor. A k-degeneracy ordering yields <= k+1 colors.
pub fn greedy_color(g: &Graph, ord: &DegeneracyOrdering) -> Result<VertexColoring, ColoringError> {
    let n = g.n();
    if ord.order.len() != n {
        return Err(ColoringError::NotAPermutation);
    }
    let mut seen = vec![false; n];
    for &v in &ord.order {
        if v >= n || seen[v] {
            return Err(ColoringError::NotAPermutation);
        }
        seen[v] = true;
    }
    let mut colors = vec![0usize; n];
    for &v in ord.order.iter().rev() {
        let neighbor_colors: BTreeSet<usize> = g
            .neighbors(v)
            .map(|w| colors[w])
            .filter(|&c| c > 0)
            .collect();
        let mut c = 1;
        while neighbor_colors.contains(&c) {
            c += 1;
        }
        colors[v] = c;
    }
    let colors_used = colors.iter().copied().max().unwrap_or(0);
    Ok(VertexColoring {
        colors,
        colors_used,
    })
}

/// All vertices of degree at most 2, with their degrees.
pub fn min_degree_witness(g: &Graph) -> Vec<(usize, usize)> {
    g.vertices()
        .map(|v| (v, g.degree(v)))
        .filter(|&(_, d)| d <= 2)
        .collect()
}
