//! Undirected simple graphs over sparse integer node ids.
//!
//! A [`Graph`] is immutable once built. Node ids are kept sorted and every
//! edge is stored once as `(min, max)`, so iteration order is deterministic.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Identifier of a graph node. Ids need not be dense.
pub type NodeId = u32;

/// Absolute tolerance used when values are compared in floating-point mode.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("node {id} is declared more than once (nodes[{index}])")]
    DuplicateNode { index: usize, id: NodeId },
    #[error("edge ({u}, {v}) at edges[{index}] references unknown node {missing}")]
    UnknownEndpoint {
        index: usize,
        u: NodeId,
        v: NodeId,
        missing: NodeId,
    },
    #[error("edge at edges[{index}] is a self-loop on node {id}")]
    SelfLoop { index: usize, id: NodeId },
    #[error("edge ({u}, {v}) at edges[{index}] is declared more than once")]
    DuplicateEdge { index: usize, u: NodeId, v: NodeId },
    #[error("edge ({u}, {v}) at edges[{index}] has no weight but other edges do")]
    PartialWeights { index: usize, u: NodeId, v: NodeId },
    #[error("edge ({u}, {v}) at edges[{index}] has no label but other edges do")]
    PartialLabels { index: usize, u: NodeId, v: NodeId },
    #[error("edge ({u}, {v}) at edges[{index}] has a non-finite weight")]
    NonFiniteWeight { index: usize, u: NodeId, v: NodeId },
    #[error("node {0} is not in the graph")]
    UnknownNode(NodeId),
}

/// Sign carried by an edge of a signed (similarity) graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => f.write_str("+"),
            Sign::Minus => f.write_str("-"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub weight: Option<f64>,
    pub label: Option<Sign>,
}

impl Edge {
    pub fn new(u: NodeId, v: NodeId) -> Self {
        Edge {
            u,
            v,
            weight: None,
            label: None,
        }
    }

    pub fn weighted(mut self, weight: f64) -> Self {
        self.weight = Some(weight);
        self
    }

    pub fn labeled(mut self, label: Sign) -> Self {
        self.label = Some(label);
        self
    }

    /// The endpoints as `(min, max)`.
    pub fn endpoints(&self) -> (NodeId, NodeId) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// A sorted, duplicate-free set of node ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeSet(Vec<NodeId>);

impl NodeSet {
    pub fn new() -> Self {
        NodeSet(Vec::new())
    }

    /// Wraps a vector that is already sorted and free of duplicates.
    pub(crate) fn from_sorted_unchecked(members: Vec<NodeId>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        NodeSet(members)
    }

    pub fn singleton(id: NodeId) -> Self {
        NodeSet(vec![id])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[NodeId] {
        &self.0
    }

    pub fn first(&self) -> Option<NodeId> {
        self.0.first().copied()
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.len() <= other.len() && self.iter().all(|x| other.contains(x))
    }

    pub fn is_disjoint(&self, other: &NodeSet) -> bool {
        self.intersection(other).is_empty()
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            if a < b {
                out.push(a);
                i += 1;
            } else if b < a {
                out.push(b);
                j += 1;
            } else {
                out.push(a);
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        NodeSet(out)
    }

    pub fn intersection(&self, other: &NodeSet) -> NodeSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            if a < b {
                i += 1;
            } else if b < a {
                j += 1;
            } else {
                out.push(a);
                i += 1;
                j += 1;
            }
        }
        NodeSet(out)
    }

    pub fn difference(&self, other: &NodeSet) -> NodeSet {
        NodeSet(self.iter().filter(|&x| !other.contains(x)).collect())
    }

    pub fn with(&self, id: NodeId) -> NodeSet {
        self.union(&NodeSet::singleton(id))
    }

    pub fn into_vec(self) -> Vec<NodeId> {
        self.0
    }
}

impl FromIterator<NodeId> for NodeSet {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> Self {
        let mut v: Vec<NodeId> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        NodeSet(v)
    }
}

impl From<Vec<NodeId>> for NodeSet {
    fn from(v: Vec<NodeId>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[NodeId; N]> for NodeSet {
    fn from(v: [NodeId; N]) -> Self {
        v.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a NodeSet {
    type Item = NodeId;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, NodeId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Undirected simple graph with optional per-edge weights and signs.
#[derive(Debug, Clone)]
pub struct Graph {
    nodes: Vec<NodeId>,
    index: HashMap<NodeId, usize>,
    edges: Vec<Edge>,
    // (neighbour index, edge index), sorted by neighbour index
    adjacency: Vec<Vec<(usize, usize)>>,
    weighted: bool,
    labeled: bool,
    integral: bool,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.edges == other.edges
    }
}

impl Graph {
    /// Builds and validates a graph. Edge endpoints are normalized to
    /// `(min, max)`; weights and labels must be given on all edges or none.
    pub fn new<N, E>(nodes: N, edges: E) -> Result<Graph, GraphError>
    where
        N: IntoIterator<Item = NodeId>,
        E: IntoIterator<Item = Edge>,
    {
        let declared: Vec<NodeId> = nodes.into_iter().collect();
        let mut seen = HashMap::with_capacity(declared.len());
        for (index, &id) in declared.iter().enumerate() {
            if seen.insert(id, index).is_some() {
                return Err(GraphError::DuplicateNode { index, id });
            }
        }
        let mut sorted = declared;
        sorted.sort_unstable();
        let index: HashMap<NodeId, usize> =
            sorted.iter().enumerate().map(|(i, &id)| (id, i)).collect();

        let raw: Vec<Edge> = edges.into_iter().collect();
        let weighted = raw.iter().any(|e| e.weight.is_some());
        let labeled = raw.iter().any(|e| e.label.is_some());
        let mut normalized: Vec<(Edge, usize)> = Vec::with_capacity(raw.len());
        for (i, e) in raw.into_iter().enumerate() {
            let (u, v) = e.endpoints();
            if u == v {
                return Err(GraphError::SelfLoop { index: i, id: u });
            }
            for id in [e.u, e.v] {
                if !index.contains_key(&id) {
                    return Err(GraphError::UnknownEndpoint {
                        index: i,
                        u: e.u,
                        v: e.v,
                        missing: id,
                    });
                }
            }
            if weighted && e.weight.is_none() {
                return Err(GraphError::PartialWeights { index: i, u, v });
            }
            if labeled && e.label.is_none() {
                return Err(GraphError::PartialLabels { index: i, u, v });
            }
            if e.weight.is_some_and(|w| !w.is_finite()) {
                return Err(GraphError::NonFiniteWeight { index: i, u, v });
            }
            normalized.push((Edge { u, v, ..e }, i));
        }
        normalized.sort_by_key(|(e, _)| (e.u, e.v));
        for w in normalized.windows(2) {
            if w[0].0.endpoints() == w[1].0.endpoints() {
                let (u, v) = w[1].0.endpoints();
                let index = w[0].1.max(w[1].1);
                return Err(GraphError::DuplicateEdge { index, u, v });
            }
        }
        let edges: Vec<Edge> = normalized.into_iter().map(|(e, _)| e).collect();

        let mut adjacency = vec![Vec::new(); sorted.len()];
        for (k, e) in edges.iter().enumerate() {
            let (a, b) = (index[&e.u], index[&e.v]);
            adjacency[a].push((b, k));
            adjacency[b].push((a, k));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let integral = edges
            .iter()
            .all(|e| e.weight.is_none_or(|w| w.fract() == 0.0));

        Ok(Graph {
            nodes: sorted,
            index,
            edges,
            adjacency,
            weighted,
            labeled,
            integral,
        })
    }

    /// Graph with the given nodes and unweighted, unlabeled edges.
    pub fn unweighted<N, E>(nodes: N, edges: E) -> Result<Graph, GraphError>
    where
        N: IntoIterator<Item = NodeId>,
        E: IntoIterator<Item = (NodeId, NodeId)>,
    {
        Graph::new(nodes, edges.into_iter().map(|(u, v)| Edge::new(u, v)))
    }

    pub fn node_ids(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn node_set(&self) -> NodeSet {
        NodeSet::from_sorted_unchecked(self.nodes.clone())
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Edges in ascending `(u, v)` order with `u < v`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_weights(&self) -> bool {
        self.weighted
    }

    pub fn has_labels(&self) -> bool {
        self.labeled
    }

    /// True when every edge weight (if any) is an integer. Values derived
    /// from such a graph are compared exactly.
    pub fn is_integral(&self) -> bool {
        self.integral
    }

    pub fn contains_node(&self, id: NodeId) -> bool {
        self.index.contains_key(&id)
    }

    pub fn index_of(&self, id: NodeId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub(crate) fn checked_index(&self, id: NodeId) -> Result<usize, GraphError> {
        self.index_of(id).ok_or(GraphError::UnknownNode(id))
    }

    pub(crate) fn id_at(&self, index: usize) -> NodeId {
        self.nodes[index]
    }

    pub(crate) fn adjacency_at(&self, index: usize) -> &[(usize, usize)] {
        &self.adjacency[index]
    }

    pub(crate) fn edge_at(&self, k: usize) -> &Edge {
        &self.edges[k]
    }

    pub fn degree(&self, id: NodeId) -> Option<usize> {
        self.index_of(id).map(|i| self.adjacency[i].len())
    }

    /// Neighbours of `id` in ascending order (empty for unknown ids).
    pub fn neighbors(&self, id: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        let list: &[(usize, usize)] = match self.index_of(id) {
            Some(i) => &self.adjacency[i],
            None => &[],
        };
        list.iter().map(move |&(j, _)| self.nodes[j])
    }

    pub fn edge_between(&self, a: NodeId, b: NodeId) -> Option<&Edge> {
        let ia = self.index_of(a)?;
        let ib = self.index_of(b)?;
        let list = &self.adjacency[ia];
        list.binary_search_by_key(&ib, |&(j, _)| j)
            .ok()
            .map(|pos| &self.edges[list[pos].1])
    }

    pub fn is_adjacent(&self, a: NodeId, b: NodeId) -> bool {
        self.edge_between(a, b).is_some()
    }

    fn check_subset(&self, s: &NodeSet) -> Result<(), GraphError> {
        match s.iter().find(|&x| !self.contains_node(x)) {
            Some(x) => Err(GraphError::UnknownNode(x)),
            None => Ok(()),
        }
    }

    /// Maximal connected node sets, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<NodeSet> {
        let n = self.nodes.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut members = Vec::new();
            while let Some(x) = queue.pop_front() {
                members.push(self.nodes[x]);
                for &(y, _) in &self.adjacency[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            out.push(members.into_iter().collect());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// The subgraph on `s` with every edge of `self` whose endpoints both lie in `s`.
    pub fn induced_subgraph(&self, s: &NodeSet) -> Result<Graph, GraphError> {
        self.check_subset(s)?;
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| s.contains(e.u) && s.contains(e.v))
            .cloned()
            .collect();
        let index: HashMap<NodeId, usize> =
            s.iter().enumerate().map(|(i, id)| (id, i)).collect();
        let mut adjacency = vec![Vec::new(); s.len()];
        for (k, e) in edges.iter().enumerate() {
            let (a, b) = (index[&e.u], index[&e.v]);
            adjacency[a].push((b, k));
            adjacency[b].push((a, k));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            nodes: s.as_slice().to_vec(),
            index,
            edges,
            adjacency,
            weighted: self.weighted,
            labeled: self.labeled,
            integral: self.integral,
        })
    }

    /// Whether `s` induces a connected subgraph. Empty sets and singletons do.
    pub fn is_coalition_connected(&self, s: &NodeSet) -> Result<bool, GraphError> {
        self.check_subset(s)?;
        Ok(self.components_within(s).len() <= 1)
    }

    /// Connected components of the subgraph induced by `s` (assumed to be a
    /// subset of the node set), ordered by smallest member.
    pub(crate) fn components_within(&self, s: &NodeSet) -> Vec<NodeSet> {
        let remaining = s.as_slice();
        let mut assigned = vec![false; remaining.len()];
        let pos = |id: NodeId, r: &[NodeId]| r.binary_search(&id).ok();
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for k in 0..remaining.len() {
            if assigned[k] {
                continue;
            }
            assigned[k] = true;
            stack.push(remaining[k]);
            let mut members = Vec::new();
            while let Some(x) = stack.pop() {
                members.push(x);
                for y in self.neighbors(x) {
                    if let Some(p) = pos(y, remaining) {
                        if !assigned[p] {
                            assigned[p] = true;
                            stack.push(y);
                        }
                    }
                }
            }
            out.push(members.into_iter().collect());
        }
        out
    }

    /// Compares two values derived from this graph: exactly when all weights
    /// are integral, otherwise within [`TOLERANCE`].
    pub fn values_equal(&self, a: f64, b: f64) -> bool {
        values_equal(self.integral, a, b)
    }
}

pub(crate) fn values_equal(exact: bool, a: f64, b: f64) -> bool {
    if exact {
        a == b
    } else {
        (a - b).abs() <= TOLERANCE
    }
}
