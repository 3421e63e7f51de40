//! Tree decompositions: the data type and its validation, the BFS scaffold
//! consumed by the dynamic program, and two ways of building one
//! (min-fill elimination and recursive vertex separators).

mod minfill;
mod scaffold;
mod separator;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError, NodeId, NodeSet};

pub use minfill::min_fill_decompose;
pub use scaffold::{build_scaffold, DpScaffold};
pub use separator::{
    grid_separator, greedy_separator, separator_decompose, GreedySeparator, GridSeparator,
    Separator, SeparatorDecomposition, SeparatorFinder, SeparatorParams,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecompError {
    #[error("decomposition has no bags")]
    EmptyDecomposition,
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("invalid separator: {0}")]
    InvalidSeparator(String),
    #[error("not a grid: {0}")]
    NotAGrid(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One failed decomposition property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    /// A graph node lies in no bag.
    UncoveredNode { node: NodeId },
    /// No bag holds both endpoints of a graph edge.
    UncoveredEdge { u: NodeId, v: NodeId },
    /// The bags holding `node` do not form a connected subtree.
    DisconnectedOccurrence { node: NodeId },
    /// A bag holds a node the graph does not have.
    UnknownNode { bag: usize, node: NodeId },
    /// The tree edges do not form a tree over the bags.
    NotATree { reason: String },
    /// More bags than graph nodes.
    TooManyBags { bags: usize, nodes: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UncoveredNode { node } => write!(f, "node {node} is in no bag"),
            Violation::UncoveredEdge { u, v } => write!(f, "edge ({u}, {v}) is in no bag"),
            Violation::DisconnectedOccurrence { node } => {
                write!(f, "bags containing node {node} are not connected in the tree")
            }
            Violation::UnknownNode { bag, node } => {
                write!(f, "bag {bag} contains node {node}, which is not in the graph")
            }
            Violation::NotATree { reason } => write!(f, "tree edges do not form a tree: {reason}"),
            Violation::TooManyBags { bags, nodes } => {
                write!(f, "{bags} bags for {nodes} nodes")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Bags plus a tree over bag indices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TreeDecomposition {
    bags: Vec<NodeSet>,
    tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Tree edges are normalized to `(min, max)` and sorted; no other checks
    /// are made here (see [`TreeDecomposition::validate`]).
    pub fn new(bags: Vec<NodeSet>, tree_edges: Vec<(usize, usize)>) -> Self {
        let mut tree_edges: Vec<(usize, usize)> =
            tree_edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        tree_edges.sort_unstable();
        TreeDecomposition { bags, tree_edges }
    }

    /// A single bag holding every node of `graph`.
    pub fn trivial(graph: &Graph) -> Self {
        TreeDecomposition::new(vec![graph.node_set()], vec![])
    }

    pub fn bags(&self) -> &[NodeSet] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree_edges
    }

    pub fn bag_count(&self) -> usize {
        self.bags.len()
    }

    /// Largest bag size minus one.
    pub fn width(&self) -> Result<usize, DecompError> {
        self.bags
            .iter()
            .map(|b| b.len().saturating_sub(1))
            .max()
            .ok_or(DecompError::EmptyDecomposition)
    }

    /// Index of the first bag containing the smallest node id.
    pub fn default_root(&self) -> Option<usize> {
        let smallest = self.bags.iter().filter_map(NodeSet::first).min()?;
        self.bags.iter().position(|b| b.contains(smallest))
    }

    pub(crate) fn neighbor_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.tree_edges {
            if a < self.bags.len() && b < self.bags.len() {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Why the tree edges fail to form a tree, if they do.
    pub(crate) fn tree_defect(&self) -> Option<String> {
        let m = self.bags.len();
        if let Some(&(a, b)) = self.tree_edges.iter().find(|&&(a, b)| a >= m || b >= m) {
            return Some(format!("edge ({a}, {b}) references a missing bag"));
        }
        if let Some(&(a, _)) = self.tree_edges.iter().find(|&&(a, b)| a == b) {
            return Some(format!("self-loop on bag {a}"));
        }
        if self.tree_edges.windows(2).any(|w| w[0] == w[1]) {
            return Some("repeated tree edge".into());
        }
        if m == 0 {
            return (!self.tree_edges.is_empty()).then(|| "edges without bags".into());
        }
        if self.tree_edges.len() != m - 1 {
            return Some(format!(
                "{} bags need {} tree edges, found {}",
                m,
                m - 1,
                self.tree_edges.len()
            ));
        }
        let adj = self.neighbor_lists();
        let mut seen = vec![false; m];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        (reached != m).then(|| format!("only {reached} of {m} bags are connected"))
    }

    /// Checks node coverage, edge coverage, running intersection and
    /// tree-ness. Violations are returned as data.
    pub fn validate(&self, graph: &Graph) -> ValidationReport {
        let mut violations = Vec::new();
        let tree_defect = self.tree_defect();
        if let Some(reason) = tree_defect.clone() {
            violations.push(Violation::NotATree { reason });
        }
        if self.bags.len() > graph.node_count().max(1) {
            violations.push(Violation::TooManyBags {
                bags: self.bags.len(),
                nodes: graph.node_count(),
            });
        }

        let mut occurrences: HashMap<NodeId, Vec<usize>> = HashMap::new();
        for (k, bag) in self.bags.iter().enumerate() {
            for x in bag.iter() {
                if !graph.contains_node(x) {
                    violations.push(Violation::UnknownNode { bag: k, node: x });
                }
                occurrences.entry(x).or_default().push(k);
            }
        }
        for &x in graph.node_ids() {
            if !occurrences.contains_key(&x) {
                violations.push(Violation::UncoveredNode { node: x });
            }
        }
        for e in graph.edges() {
            let (Some(bu), Some(bv)) = (occurrences.get(&e.u), occurrences.get(&e.v)) else {
                violations.push(Violation::UncoveredEdge { u: e.u, v: e.v });
                continue;
            };
            if !sorted_lists_meet(bu, bv) {
                violations.push(Violation::UncoveredEdge { u: e.u, v: e.v });
            }
        }

        if tree_defect.is_none() {
            // in a tree, a vertex set is connected iff it spans |set| - 1 edges
            let mut spanned: HashMap<NodeId, usize> = HashMap::new();
            for &(a, b) in &self.tree_edges {
                for x in self.bags[a].intersection(&self.bags[b]).iter() {
                    *spanned.entry(x).or_default() += 1;
                }
            }
            let mut nodes: Vec<NodeId> = occurrences.keys().copied().collect();
            nodes.sort_unstable();
            for x in nodes {
                let count = occurrences[&x].len();
                if spanned.get(&x).copied().unwrap_or(0) + 1 != count {
                    violations.push(Violation::DisconnectedOccurrence { node: x });
                }
            }
        }
        ValidationReport { violations }
    }

    /// Keeps the bags meeting `s`, intersected with `s`, and the tree edges
    /// between kept bags. For a connected `s` the result stays a tree.
    pub fn restrict_to(&self, s: &NodeSet) -> TreeDecomposition {
        let mut new_index = vec![usize::MAX; self.bags.len()];
        let mut bags = Vec::new();
        for (k, bag) in self.bags.iter().enumerate() {
            let cut = bag.intersection(s);
            if !cut.is_empty() {
                new_index[k] = bags.len();
                bags.push(cut);
            }
        }
        let edges = self
            .tree_edges
            .iter()
            .filter(|&&(a, b)| new_index[a] != usize::MAX && new_index[b] != usize::MAX)
            .map(|&(a, b)| (new_index[a], new_index[b]))
            .collect();
        TreeDecomposition::new(bags, edges)
    }

    /// Places `other`'s bags after ours and joins bag `ours` to `other`'s
    /// bag `theirs` (when both sides are non-empty).
    pub(crate) fn attach(&mut self, other: TreeDecomposition, ours: usize, theirs: usize) {
        let offset = self.bags.len();
        let joined = !self.bags.is_empty() && !other.bags.is_empty();
        self.bags.extend(other.bags);
        self.tree_edges
            .extend(other.tree_edges.into_iter().map(|(a, b)| (a + offset, b + offset)));
        if joined {
            self.tree_edges.push((ours.min(theirs + offset), ours.max(theirs + offset)));
        }
        self.tree_edges.sort_unstable();
    }
}

fn sorted_lists_meet(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::unweighted([0, 1, 2], [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn textbook_decomposition_is_valid() {
        let td = TreeDecomposition::new(vec![NodeSet::from([0, 1]), NodeSet::from([1, 2])], vec![(0, 1)]);
        assert!(td.validate(&path3()).is_valid());
        assert_eq!(td.width().unwrap(), 1);
    }

    #[test]
    fn missing_tree_edge() {
        let td = TreeDecomposition::new(vec![NodeSet::from([0, 1]), NodeSet::from([1, 2])], vec![]);
        let report = td.validate(&path3());
        assert!(matches!(report.violations[0], Violation::NotATree { .. }));
    }

    #[test]
    fn uncovered_edge() {
        let td = TreeDecomposition::new(vec![NodeSet::from([0, 1]), NodeSet::from([2])], vec![(0, 1)]);
        let report = td.validate(&path3());
        assert_eq!(report.violations, vec![Violation::UncoveredEdge { u: 1, v: 2 }]);
    }

    #[test]
    fn broken_running_intersection() {
        let g = Graph::unweighted([0, 1, 2, 3], [(0, 1), (1, 2), (2, 3)]).unwrap();
        let td = TreeDecomposition::new(
            vec![NodeSet::from([0, 1]), NodeSet::from([2, 3]), NodeSet::from([1, 2])],
            vec![(0, 1), (1, 2)],
        );
        let report = td.validate(&g);
        assert_eq!(report.violations, vec![Violation::DisconnectedOccurrence { node: 1 }]);
    }

    #[test]
    fn uncovered_and_unknown_nodes() {
        let td = TreeDecomposition::new(vec![NodeSet::from([0, 1, 9])], vec![]);
        let report = td.validate(&path3());
        assert!(report.violations.contains(&Violation::UnknownNode { bag: 0, node: 9 }));
        assert!(report.violations.contains(&Violation::UncoveredNode { node: 2 }));
    }

    #[test]
    fn widths() {
        let single = TreeDecomposition::new(vec![(0..5).collect()], vec![]);
        assert_eq!(single.width().unwrap(), 4);
        let singletons = TreeDecomposition::new(
            (0..3).map(NodeSet::singleton).collect(),
            vec![(0, 1), (1, 2)],
        );
        assert_eq!(singletons.width().unwrap(), 0);
        assert_eq!(
            TreeDecomposition::default().width(),
            Err(DecompError::EmptyDecomposition)
        );
    }

    #[test]
    fn restriction_to_component() {
        let g = Graph::unweighted([0, 1, 2, 3], [(0, 1), (2, 3)]).unwrap();
        let td = TreeDecomposition::new(
            vec![NodeSet::from([0, 1]), NodeSet::from([2, 3])],
            vec![(0, 1)],
        );
        assert!(td.validate(&g).is_valid());
        let part = td.restrict_to(&NodeSet::from([2, 3]));
        assert_eq!(part.bags(), &[NodeSet::from([2, 3])]);
        assert!(part.tree_edges().is_empty());
    }
}
