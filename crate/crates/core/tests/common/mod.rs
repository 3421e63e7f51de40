//! Fixtures and brute-force reference computations shared by the
//! integration tests. Nothing here calls the library's solvers or
//! enumerators; values are computed straight from edge lists.
#![allow(dead_code)]

use std::collections::HashSet;

use gcsg::generators;
use gcsg::graph::{Edge, Graph, NodeId, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Triangle with weights (0,1)=2, (1,2)=3, (0,2)=-4; optimum {{0},{1,2}} = 3.
pub fn t3() -> Graph {
    Graph::new(
        [0, 1, 2],
        [
            Edge::new(0, 1).weighted(2.0),
            Edge::new(1, 2).weighted(3.0),
            Edge::new(0, 2).weighted(-4.0),
        ],
    )
    .unwrap()
}

pub const T3_JSON: &str = r#"{
  "graph": {
    "nodes": [0, 1, 2],
    "edges": [
      { "u": 0, "v": 1, "weight": 2 },
      { "u": 1, "v": 2, "weight": 3 },
      { "u": 0, "v": 2, "weight": -4 }
    ]
  },
  "valuation": { "kind": "edge_sum" }
}"#;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected random graph: a random tree plus extra edges, at most `2n` in total.
pub fn connected_random(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let tree = generators::random_tree(n, rng);
    let mut pairs: HashSet<(NodeId, NodeId)> = tree.edges().iter().map(Edge::endpoints).collect();
    let max_pairs = n * n.saturating_sub(1) / 2;
    let target = rng.gen_range(pairs.len()..=(2 * n).min(max_pairs).max(pairs.len()));
    while pairs.len() < target {
        let a = rng.gen_range(0..n as NodeId);
        let b = rng.gen_range(0..n as NodeId);
        if a != b {
            pairs.insert((a.min(b), a.max(b)));
        }
    }
    let mut pairs: Vec<_> = pairs.into_iter().collect();
    pairs.sort_unstable();
    Graph::unweighted(0..n as NodeId, pairs).unwrap()
}

/// Unattributed shapes from the test families with at most `max_n` nodes:
/// paths, cycles, stars, grids and `randoms_per_n` random graphs per size
/// (`e <= 2n`, possibly disconnected unless `connected`).
pub fn family_shapes(
    max_n: usize,
    randoms_per_n: usize,
    connected: bool,
    rng: &mut ChaCha8Rng,
) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.push((format!("path{n}"), generators::path(n)));
    }
    for n in 3..=max_n {
        out.push((format!("cycle{n}"), generators::cycle(n)));
    }
    for leaves in 2..max_n {
        out.push((format!("star{leaves}"), generators::star(leaves)));
    }
    for rows in 2..=max_n {
        for cols in rows..=max_n {
            if rows * cols <= max_n {
                out.push((format!("grid{rows}x{cols}"), generators::grid(rows, cols)));
            }
        }
    }
    for n in 2..=max_n {
        for k in 0..randoms_per_n {
            let g = if connected {
                connected_random(n, rng)
            } else {
                let e = rng.gen_range(0..=2 * n);
                generators::random_graph(n, e, rng)
            };
            out.push((format!("random{n}_{k}"), g));
        }
    }
    out
}

/// Family shapes with integer weights in [-5, 5] and random signs.
pub fn family_graphs(max_n: usize, randoms_per_n: usize, connected: bool, seed: u64) -> Vec<(String, Graph)> {
    let mut r = rng(seed);
    family_shapes(max_n, randoms_per_n, connected, &mut r)
        .into_iter()
        .map(|(name, g)| (name, generators::with_random_attributes(&g, -5, 5, &mut r)))
        .collect()
}

pub fn ref_edge_sum(g: &Graph, c: &[NodeId]) -> f64 {
    g.edges()
        .iter()
        .filter(|e| c.contains(&e.u) && c.contains(&e.v))
        .map(|e| e.weight.unwrap())
        .sum()
}

pub fn ref_correlation(g: &Graph, c: &[NodeId]) -> f64 {
    g.edges()
        .iter()
        .filter(|e| {
            let (a, b) = (c.contains(&e.u), c.contains(&e.v));
            match e.label.unwrap() {
                Sign::Plus => a && b,
                Sign::Minus => a != b,
            }
        })
        .count() as f64
}

pub fn ref_coordination(g: &Graph, c: &[NodeId]) -> f64 {
    let mut total = 0;
    for &i in c {
        for &j in g.node_ids() {
            for &k in g.node_ids() {
                if c.contains(&j) && !c.contains(&k) && g.is_adjacent(i, j) && g.is_adjacent(i, k) {
                    total += 1;
                }
            }
        }
    }
    total as f64
}

/// Every set partition of `items`, built by inserting each element into an
/// existing block or a new one.
pub fn set_partitions(items: &[NodeId]) -> Vec<Vec<Vec<NodeId>>> {
    let Some((&last, rest)) = items.split_last() else {
        return vec![vec![]];
    };
    let mut out = Vec::new();
    for p in set_partitions(rest) {
        for k in 0..p.len() {
            let mut q = p.clone();
            q[k].push(last);
            out.push(q);
        }
        let mut q = p;
        q.push(vec![last]);
        out.push(q);
    }
    out
}

/// Best total of `f` over all partitions of the node set.
pub fn brute_optimum(g: &Graph, f: impl Fn(&Graph, &[NodeId]) -> f64) -> f64 {
    set_partitions(g.node_ids())
        .iter()
        .map(|p| p.iter().map(|b| f(g, b)).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Number of acyclic edge subsets, by testing all `2^e` subsets.
pub fn count_forests(g: &Graph) -> u64 {
    let ids = g.node_ids();
    let idx = |x: NodeId| ids.iter().position(|&y| y == x).unwrap();
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (idx(e.u), idx(e.v))).collect();
    let mut count = 0;
    for mask in 0u64..1 << edges.len() {
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn root(p: &[usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        let mut acyclic = true;
        for (t, &(a, b)) in edges.iter().enumerate() {
            if mask >> t & 1 == 1 {
                let (ra, rb) = (root(&parent, a), root(&parent, b));
                if ra == rb {
                    acyclic = false;
                    break;
                }
                parent[ra] = rb;
            }
        }
        count += acyclic as u64;
    }
    count
}

/// Smallest width over all elimination orderings (n small).
pub fn brute_treewidth(g: &Graph) -> usize {
    let n = g.node_count();
    let ids = g.node_ids();
    let mut adj = vec![vec![false; n]; n];
    for e in g.edges() {
        let (a, b) = (
            ids.iter().position(|&x| x == e.u).unwrap(),
            ids.iter().position(|&x| x == e.v).unwrap(),
        );
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut best = usize::MAX;
    let mut order: Vec<usize> = (0..n).collect();
    permute(&mut order, 0, &mut |ord| {
        let mut a = adj.clone();
        let mut gone = vec![false; n];
        let mut width = 0;
        for &v in ord {
            let nbrs: Vec<usize> = (0..n).filter(|&u| !gone[u] && a[v][u]).collect();
            width = width.max(nbrs.len());
            for &x in &nbrs {
                for &y in &nbrs {
                    if x != y {
                        a[x][y] = true;
                    }
                }
            }
            gone[v] = true;
        }
        best = best.min(width);
    });
    best
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}
