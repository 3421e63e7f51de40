use std::collections::BTreeSet;

use super::TreeDecomposition;
use crate::graph::{Graph, NodeSet};

type Key = (usize, usize, usize); // (fill-in, degree, node index)

fn fill_in(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let nbrs: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (k, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[k + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

/// Tree decomposition from a greedy min-fill elimination ordering.
///
/// Ties go to the smaller degree, then to the smaller node id. One bag is
/// produced per node (the node plus its neighbours at elimination time),
/// hung below the bag of its earliest-eliminated neighbour. Separate
/// components are chained together.
pub fn min_fill_decompose(graph: &Graph) -> TreeDecomposition {
    let n = graph.node_count();
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|i| graph.adjacency_at(i).iter().map(|&(j, _)| j).collect())
        .collect();
    let mut key: Vec<Key> = (0..n).map(|v| (fill_in(&adj, v), adj[v].len(), v)).collect();
    let mut queue: BTreeSet<Key> = key.iter().copied().collect();
    let mut eliminated_at = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut bag_nbrs: Vec<Vec<usize>> = Vec::with_capacity(n);

    while let Some((_, _, v)) = queue.pop_first() {
        eliminated_at[v] = order.len();
        order.push(v);
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for (k, &a) in nbrs.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &nbrs[k + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj[v].clear();
        let mut touched: BTreeSet<usize> = BTreeSet::new();
        for &a in &nbrs {
            touched.insert(a);
            touched.extend(adj[a].iter().copied());
        }
        for w in touched {
            if eliminated_at[w] != usize::MAX {
                continue;
            }
            let fresh = (fill_in(&adj, w), adj[w].len(), w);
            if fresh != key[w] {
                queue.remove(&key[w]);
                queue.insert(fresh);
                key[w] = fresh;
            }
        }
        bag_nbrs.push(nbrs);
    }

    let ids = graph.node_ids();
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut roots = Vec::new();
    for (k, (&v, nbrs)) in order.iter().zip(&bag_nbrs).enumerate() {
        bags.push(std::iter::once(v).chain(nbrs.iter().copied()).map(|i| ids[i]).collect::<NodeSet>());
        match nbrs.iter().map(|&u| eliminated_at[u]).min() {
            Some(p) => edges.push((k, p)),
            None => roots.push(k),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition::new(bags, edges)
}
