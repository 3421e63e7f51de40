//! Graph families used by the examples, benchmarks and test suites.
//! Nodes are numbered `0..n`; grids use `row * cols + col`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Edge, Graph, NodeId, Sign};

fn build(n: usize, pairs: impl IntoIterator<Item = (NodeId, NodeId)>) -> Graph {
    Graph::unweighted(0..n as NodeId, pairs).expect("generator produced an invalid graph")
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n as NodeId).map(|i| (i - 1, i)))
}

/// Cycle on `n >= 3` nodes; smaller `n` degrade to a path.
pub fn cycle(n: usize) -> Graph {
    if n < 3 {
        return path(n);
    }
    build(n, (0..n as NodeId).map(|i| (i, (i + 1) % n as NodeId)))
}

/// Star with centre 0 and leaves `1..=leaves`.
pub fn star(leaves: usize) -> Graph {
    build(leaves + 1, (1..=leaves as NodeId).map(|i| (0, i)))
}

pub fn complete(n: usize) -> Graph {
    let n = n as NodeId;
    build(n as usize, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
}

pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut pairs = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let id = (r * cols + c) as NodeId;
            if c + 1 < cols {
                pairs.push((id, id + 1));
            }
            if r + 1 < rows {
                pairs.push((id, id + cols as NodeId));
            }
        }
    }
    build(rows * cols, pairs)
}

/// Uniform random recursive tree: node `i` attaches to a random earlier node.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    build(n, (1..n as NodeId).map(|i| (rng.gen_range(0..i), i)))
}

/// `edges` distinct pairs drawn uniformly (capped at the number of pairs).
pub fn random_graph<R: Rng + ?Sized>(n: usize, edges: usize, rng: &mut R) -> Graph {
    let n = n as NodeId;
    let mut all: Vec<(NodeId, NodeId)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    all.shuffle(rng);
    all.truncate(edges);
    all.sort_unstable();
    build(n as usize, all)
}

/// Same graph with integer weights drawn from `lo..=hi` and random signs.
pub fn with_random_attributes<R: Rng + ?Sized>(g: &Graph, lo: i32, hi: i32, rng: &mut R) -> Graph {
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .map(|e| {
            let w = rng.gen_range(lo..=hi) as f64;
            let s = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            Edge::new(e.u, e.v).weighted(w).labeled(s)
        })
        .collect();
    Graph::new(g.node_ids().iter().copied(), edges).expect("relabeling keeps the graph valid")
}

/// Same graph with every edge weighted `w` and labeled `+`.
pub fn with_uniform_weight(g: &Graph, w: f64) -> Graph {
    let edges = g
        .edges()
        .iter()
        .map(|e| Edge::new(e.u, e.v).weighted(w).labeled(Sign::Plus));
    Graph::new(g.node_ids().iter().copied(), edges).expect("relabeling keeps the graph valid")
}
