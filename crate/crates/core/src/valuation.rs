//! Coalition valuation functions and executable checks of the
//! independence-of-disconnected-members (IDM) property.
//!
//! The built-in families are evaluated against the *whole* graph: a
//! coalition's value may depend on edges leaving it (correlation,
//! coordination, modularity), so callers always pass the full graph even
//! when they only care about part of it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{values_equal, Graph, GraphError, NodeId, NodeSet, Sign};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValuationError {
    #[error("edge_sum valuation needs a weight on every edge")]
    MissingWeights,
    #[error("correlation valuation needs a +/- label on every edge")]
    MissingLabels,
    #[error("modularity is undefined on a graph without edges")]
    EmptyEdgeSet,
    #[error("no table entry for coalition {0}")]
    MissingEntry(NodeSet),
    #[error("valuation is not table-backed")]
    NotATable,
    #[error("invalid value table: {0}")]
    InvalidTable(String),
    #[error("exhaustive check over {n} nodes exceeds the cap of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("edge ({u}, {v}) joins the two sides, so the separation precondition fails")]
    SeparationViolated { u: NodeId, v: NodeId },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A set function over the nodes of a graph.
pub trait Valuation {
    fn value(&self, graph: &Graph, coalition: &NodeSet) -> Result<f64, ValuationError>;

    /// Whether the function is known to be independent of disconnected
    /// members. Solvers only split disconnected graphs when this holds.
    fn is_idm(&self) -> bool;

    /// Whether every value is an integer, so results can be compared exactly.
    fn is_integral(&self, graph: &Graph) -> bool;
}

impl<V: Valuation + ?Sized> Valuation for &V {
    fn value(&self, graph: &Graph, coalition: &NodeSet) -> Result<f64, ValuationError> {
        (**self).value(graph, coalition)
    }

    fn is_idm(&self) -> bool {
        (**self).is_idm()
    }

    fn is_integral(&self, graph: &Graph) -> bool {
        (**self).is_integral(graph)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ValuationKind {
    EdgeSum,
    Correlation,
    Coordination,
    Modularity,
    Table,
}

impl ValuationKind {
    pub const ALL: [ValuationKind; 5] = [
        ValuationKind::EdgeSum,
        ValuationKind::Correlation,
        ValuationKind::Coordination,
        ValuationKind::Modularity,
        ValuationKind::Table,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ValuationKind::EdgeSum => "edge_sum",
            ValuationKind::Correlation => "correlation",
            ValuationKind::Coordination => "coordination",
            ValuationKind::Modularity => "modularity",
            ValuationKind::Table => "table",
        }
    }
}

impl fmt::Display for ValuationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ValuationKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ValuationKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| {
                format!(
                    "unknown valuation kind {s:?} (expected one of edge_sum, correlation, coordination, modularity, table)"
                )
            })
    }
}

/// Explicit set function: one value per subset of the node set.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValueTable {
    entries: BTreeMap<NodeSet, f64>,
}

impl ValueTable {
    pub fn new<I>(entries: I) -> Result<ValueTable, ValuationError>
    where
        I: IntoIterator<Item = (NodeSet, f64)>,
    {
        let mut map = BTreeMap::new();
        for (set, value) in entries {
            if !value.is_finite() {
                return Err(ValuationError::InvalidTable(format!(
                    "value for {set} is not finite"
                )));
            }
            if map.insert(set.clone(), value).is_some() {
                return Err(ValuationError::InvalidTable(format!(
                    "coalition {set} appears more than once"
                )));
            }
        }
        Ok(ValueTable { entries: map })
    }

    pub fn get(&self, set: &NodeSet) -> Option<f64> {
        self.entries.get(set).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in ascending coalition order.
    pub fn iter(&self) -> impl Iterator<Item = (&NodeSet, f64)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    /// Checks that the domain is exactly the power set of the graph's nodes
    /// and that the empty coalition is worth 0.
    pub fn validate_for(&self, graph: &Graph) -> Result<(), ValuationError> {
        match self.get(&NodeSet::new()) {
            Some(0.0) => {}
            _ => {
                return Err(ValuationError::InvalidTable(
                    "table must define the empty set with value 0".into(),
                ))
            }
        }
        for set in self.entries.keys() {
            if let Some(x) = set.iter().find(|&x| !graph.contains_node(x)) {
                return Err(ValuationError::InvalidTable(format!(
                    "coalition {set} contains node {x}, which is not in the graph"
                )));
            }
        }
        let n = graph.node_count();
        let expected = 1u128.checked_shl(n as u32).unwrap_or(u128::MAX);
        if self.entries.len() as u128 != expected {
            return Err(ValuationError::InvalidTable(format!(
                "table has {} entries but the graph has 2^{n} subsets",
                self.entries.len()
            )));
        }
        Ok(())
    }
}

/// Declarative description of a valuation.
#[derive(Debug, Clone, PartialEq)]
pub enum ValuationSpec {
    EdgeSum,
    Correlation,
    Coordination,
    Modularity,
    Table(ValueTable),
}

impl ValuationSpec {
    pub fn kind(&self) -> ValuationKind {
        match self {
            ValuationSpec::EdgeSum => ValuationKind::EdgeSum,
            ValuationSpec::Correlation => ValuationKind::Correlation,
            ValuationSpec::Coordination => ValuationKind::Coordination,
            ValuationSpec::Modularity => ValuationKind::Modularity,
            ValuationSpec::Table(_) => ValuationKind::Table,
        }
    }

    /// Checks the graph carries what this valuation reads.
    pub fn validate_for(&self, graph: &Graph) -> Result<(), ValuationError> {
        match self {
            ValuationSpec::EdgeSum if !graph.has_weights() && graph.edge_count() > 0 => {
                Err(ValuationError::MissingWeights)
            }
            ValuationSpec::Correlation if !graph.has_labels() && graph.edge_count() > 0 => {
                Err(ValuationError::MissingLabels)
            }
            ValuationSpec::Modularity if graph.edge_count() == 0 => {
                Err(ValuationError::EmptyEdgeSet)
            }
            ValuationSpec::Table(t) => t.validate_for(graph),
            _ => Ok(()),
        }
    }
}

impl Valuation for ValuationSpec {
    fn value(&self, graph: &Graph, coalition: &NodeSet) -> Result<f64, ValuationError> {
        match self {
            ValuationSpec::EdgeSum => edge_sum_value(graph, coalition),
            ValuationSpec::Correlation => correlation_value(graph, coalition),
            ValuationSpec::Coordination => coordination_value(graph, coalition),
            ValuationSpec::Modularity => modularity_value(graph, coalition),
            ValuationSpec::Table(_) => table_value(self, coalition),
        }
    }

    // Coordination is excluded: on the path a-b-c with C = {b} the marginal
    // value of a changes from 1 to -1 once c joins (see `check_idm` tests).
    fn is_idm(&self) -> bool {
        matches!(self, ValuationSpec::EdgeSum | ValuationSpec::Correlation)
    }

    fn is_integral(&self, graph: &Graph) -> bool {
        match self {
            ValuationSpec::EdgeSum => graph.is_integral(),
            ValuationSpec::Correlation | ValuationSpec::Coordination => true,
            ValuationSpec::Modularity => false,
            ValuationSpec::Table(t) => t.iter().all(|(_, v)| v.fract() == 0.0),
        }
    }
}

fn indices(graph: &Graph, c: &NodeSet) -> Result<Vec<usize>, ValuationError> {
    c.iter()
        .map(|x| graph.checked_index(x).map_err(ValuationError::from))
        .collect()
}

/// Sum of the weights of edges with both endpoints in `c`.
pub fn edge_sum_value(graph: &Graph, c: &NodeSet) -> Result<f64, ValuationError> {
    if !graph.has_weights() && graph.edge_count() > 0 {
        return Err(ValuationError::MissingWeights);
    }
    let mut total = 0.0;
    for (x, i) in c.iter().zip(indices(graph, c)?) {
        for &(j, k) in graph.adjacency_at(i) {
            let y = graph.id_at(j);
            if y > x && c.contains(y) {
                total += graph.edge_at(k).weight.unwrap_or(0.0);
            }
        }
    }
    Ok(total)
}

/// Positive edges inside `c` plus negative edges with exactly one end in `c`.
pub fn correlation_value(graph: &Graph, c: &NodeSet) -> Result<f64, ValuationError> {
    if !graph.has_labels() && graph.edge_count() > 0 {
        return Err(ValuationError::MissingLabels);
    }
    let mut count = 0u64;
    for (x, i) in c.iter().zip(indices(graph, c)?) {
        for &(j, k) in graph.adjacency_at(i) {
            let y = graph.id_at(j);
            let inside = c.contains(y);
            match graph.edge_at(k).label {
                Some(Sign::Plus) if inside && y > x => count += 1,
                Some(Sign::Minus) if !inside => count += 1,
                _ => {}
            }
        }
    }
    Ok(count as f64)
}

/// `sum_{i in c} n_i(c)`, where `n_i(c)` counts ordered pairs `(j, k)` of
/// neighbours of `i` with `j` inside `c` and `k` outside.
pub fn coordination_value(graph: &Graph, c: &NodeSet) -> Result<f64, ValuationError> {
    let mut total = 0u64;
    for i in indices(graph, c)? {
        let (mut inside, mut outside) = (0u64, 0u64);
        for &(j, _) in graph.adjacency_at(i) {
            if c.contains(graph.id_at(j)) {
                inside += 1;
            } else {
                outside += 1;
            }
        }
        total += inside * outside;
    }
    Ok(total as f64)
}

/// `|E(c)|/|E| - ((|E(c)| + |cut(c)|) / (2|E|))^2`, evaluated as written
/// (the squared term uses `|E(c)|`, not the degree sum `2|E(c)|`).
pub fn modularity_value(graph: &Graph, c: &NodeSet) -> Result<f64, ValuationError> {
    let m = graph.edge_count();
    if m == 0 {
        return Err(ValuationError::EmptyEdgeSet);
    }
    let (mut internal, mut cut) = (0usize, 0usize);
    for (x, i) in c.iter().zip(indices(graph, c)?) {
        for &(j, _) in graph.adjacency_at(i) {
            let y = graph.id_at(j);
            if !c.contains(y) {
                cut += 1;
            } else if y > x {
                internal += 1;
            }
        }
    }
    let m = m as f64;
    let share = (internal + cut) as f64 / (2.0 * m);
    Ok(internal as f64 / m - share * share)
}

pub fn table_value(spec: &ValuationSpec, c: &NodeSet) -> Result<f64, ValuationError> {
    match spec {
        ValuationSpec::Table(t) => t
            .get(c)
            .ok_or_else(|| ValuationError::MissingEntry(c.clone())),
        _ => Err(ValuationError::NotATable),
    }
}

/// Default node cap for [`check_idm`].
pub const IDM_CHECK_MAX_NODES: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdmViolation {
    pub i: NodeId,
    pub j: NodeId,
    pub coalition: NodeSet,
    /// `v(C + i) - v(C)`
    pub lhs: f64,
    /// `v(C + i + j) - v(C + j)`
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "idm", rename_all = "snake_case")]
pub enum IdmReport {
    Pass {
        pairs_checked: usize,
        coalitions_checked: u64,
    },
    Violation(IdmViolation),
}

impl IdmReport {
    pub fn passed(&self) -> bool {
        matches!(self, IdmReport::Pass { .. })
    }
}

/// Exhaustively checks the IDM identity
/// `v(C + i) - v(C) = v(C + i + j) - v(C + j)` for every non-adjacent pair
/// `(i, j)` and every `C` avoiding both. Coalitions are visited in
/// increasing size, so a reported violation is a smallest one.
pub fn check_idm<V: Valuation + ?Sized>(
    graph: &Graph,
    v: &V,
    max_n: usize,
) -> Result<IdmReport, ValuationError> {
    let n = graph.node_count();
    if n > max_n {
        return Err(ValuationError::TooLarge { n, max: max_n });
    }
    let exact = v.is_integral(graph);
    let nodes = graph.node_ids();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !graph.is_adjacent(nodes[a], nodes[b]) {
                pairs.push((a, b));
            }
        }
    }
    if pairs.is_empty() {
        return Ok(IdmReport::Pass {
            pairs_checked: 0,
            coalitions_checked: 0,
        });
    }
    // subsets of the n-2 remaining nodes, by cardinality then mask
    let rest = n - 2;
    let mut masks: Vec<u32> = (0..1u32 << rest).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));

    let mut checked = 0u64;
    let mut start = 0;
    while start < masks.len() {
        let size = masks[start].count_ones();
        let end = start + masks[start..].iter().take_while(|m| m.count_ones() == size).count();
        for &(a, b) in &pairs {
            let others: Vec<NodeId> = (0..n).filter(|&k| k != a && k != b).map(|k| nodes[k]).collect();
            for &mask in &masks[start..end] {
                let c: NodeSet = others
                    .iter()
                    .enumerate()
                    .filter(|(bit, _)| mask >> bit & 1 == 1)
                    .map(|(_, &x)| x)
                    .collect();
                let (i, j) = (nodes[a], nodes[b]);
                let ci = c.with(i);
                let cj = c.with(j);
                let cij = ci.with(j);
                let lhs = v.value(graph, &ci)? - v.value(graph, &c)?;
                let rhs = v.value(graph, &cij)? - v.value(graph, &cj)?;
                checked += 1;
                if !values_equal(exact, lhs, rhs) {
                    return Ok(IdmReport::Violation(IdmViolation {
                        i,
                        j,
                        coalition: c,
                        lhs,
                        rhs,
                    }));
                }
            }
        }
        start = end;
    }
    Ok(IdmReport::Pass {
        pairs_checked: pairs.len(),
        coalitions_checked: checked,
    })
}

/// Checks `v(a) - v(a & b) = v(a | b) - v(b)` for node sets with no edge
/// between `a - b` and `b - a`.
pub fn check_separator_additivity<V: Valuation + ?Sized>(
    graph: &Graph,
    v: &V,
    a: &NodeSet,
    b: &NodeSet,
) -> Result<bool, ValuationError> {
    let only_a = a.difference(b);
    let only_b = b.difference(a);
    for x in only_a.iter() {
        graph.checked_index(x)?;
        if let Some(y) = graph.neighbors(x).find(|&y| only_b.contains(y)) {
            return Err(ValuationError::SeparationViolated { u: x.min(y), v: x.max(y) });
        }
    }
    let lhs = v.value(graph, a)? - v.value(graph, &a.intersection(b))?;
    let rhs = v.value(graph, &a.union(b))? - v.value(graph, b)?;
    Ok(values_equal(v.is_integral(graph), lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn t3() -> Graph {
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

    fn signed_pair(sign: Sign) -> Graph {
        Graph::new([0, 1], [Edge::new(0, 1).labeled(sign)]).unwrap()
    }

    fn path3() -> Graph {
        Graph::unweighted([0, 1, 2], [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn edge_sum_on_triangle() {
        let g = t3();
        assert_eq!(edge_sum_value(&g, &NodeSet::from([0, 1, 2])).unwrap(), 1.0);
        assert_eq!(edge_sum_value(&g, &NodeSet::new()).unwrap(), 0.0);
        assert_eq!(edge_sum_value(&g, &NodeSet::from([1, 2])).unwrap(), 3.0);
        let unweighted = path3();
        assert_eq!(
            edge_sum_value(&unweighted, &NodeSet::from([0])),
            Err(ValuationError::MissingWeights)
        );
    }

    #[test]
    fn correlation_counts() {
        assert_eq!(
            correlation_value(&signed_pair(Sign::Plus), &NodeSet::from([0, 1])).unwrap(),
            1.0
        );
        assert_eq!(
            correlation_value(&signed_pair(Sign::Minus), &NodeSet::from([0])).unwrap(),
            1.0
        );
        assert_eq!(
            correlation_value(&signed_pair(Sign::Minus), &NodeSet::from([0, 1])).unwrap(),
            0.0
        );
        assert_eq!(
            correlation_value(&path3(), &NodeSet::from([0])),
            Err(ValuationError::MissingLabels)
        );
    }

    #[test]
    fn coordination_counts_ordered_pairs() {
        // path a-b-c as 0-1-2
        assert_eq!(coordination_value(&path3(), &NodeSet::from([0, 1])).unwrap(), 1.0);
        assert_eq!(coordination_value(&path3(), &NodeSet::from([0, 1, 2])).unwrap(), 0.0);
        let star = Graph::unweighted([0, 1, 2, 3], [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(coordination_value(&star, &NodeSet::from([0, 1])).unwrap(), 2.0);
    }

    #[test]
    fn modularity_as_written() {
        let g = Graph::unweighted([0, 1], [(0, 1)]).unwrap();
        assert_eq!(modularity_value(&g, &NodeSet::from([0, 1])).unwrap(), 0.75);
        assert_eq!(modularity_value(&g, &NodeSet::new()).unwrap(), 0.0);
        assert_eq!(modularity_value(&g, &NodeSet::from([0])).unwrap(), -0.25);
        let edgeless = Graph::unweighted([0], []).unwrap();
        assert_eq!(
            modularity_value(&edgeless, &NodeSet::new()),
            Err(ValuationError::EmptyEdgeSet)
        );
    }

    #[test]
    fn table_lookup() {
        let table = ValueTable::new([
            (NodeSet::new(), 0.0),
            (NodeSet::from([0]), 1.0),
            (NodeSet::from([1]), 2.0),
            (NodeSet::from([0, 1]), 5.0),
        ])
        .unwrap();
        let spec = ValuationSpec::Table(table);
        assert_eq!(table_value(&spec, &NodeSet::from([0, 1])).unwrap(), 5.0);
        assert_eq!(table_value(&spec, &NodeSet::new()).unwrap(), 0.0);
        assert_eq!(
            table_value(&spec, &NodeSet::from([2])),
            Err(ValuationError::MissingEntry(NodeSet::from([2])))
        );
        let g = Graph::unweighted([0, 1], [(0, 1)]).unwrap();
        spec.validate_for(&g).unwrap();
        assert_eq!(
            table_value(&ValuationSpec::EdgeSum, &NodeSet::new()),
            Err(ValuationError::NotATable)
        );
    }

    #[test]
    fn table_must_cover_empty_set() {
        let table = ValueTable::new([(NodeSet::from([0]), 1.0)]).unwrap();
        let g = Graph::unweighted([0], []).unwrap();
        let err = table.validate_for(&g).unwrap_err();
        assert!(err.to_string().contains("empty set with value 0"));
    }

    #[test]
    fn empty_coalition_is_worth_zero() {
        let g = Graph::new(
            [0, 1, 2],
            [
                Edge::new(0, 1).weighted(1.0).labeled(Sign::Minus),
                Edge::new(1, 2).weighted(2.0).labeled(Sign::Plus),
            ],
        )
        .unwrap();
        for spec in [
            ValuationSpec::EdgeSum,
            ValuationSpec::Correlation,
            ValuationSpec::Coordination,
            ValuationSpec::Modularity,
        ] {
            assert_eq!(spec.value(&g, &NodeSet::new()).unwrap(), 0.0, "{:?}", spec.kind());
        }
    }

    #[test]
    fn idm_checks() {
        let report = check_idm(&t3(), &ValuationSpec::EdgeSum, 12).unwrap();
        assert!(report.passed());
        // K3 has no non-adjacent pair
        assert_eq!(
            report,
            IdmReport::Pass {
                pairs_checked: 0,
                coalitions_checked: 0
            }
        );
        let report = check_idm(&path3(), &ValuationSpec::Modularity, 12).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn coordination_is_not_idm_on_a_path() {
        // v({1}) = 0, v({0,1}) = 1, v({1,2}) = 1, v({0,1,2}) = 0
        let report = check_idm(&path3(), &ValuationSpec::Coordination, 12).unwrap();
        assert_eq!(
            report,
            IdmReport::Violation(IdmViolation {
                i: 0,
                j: 2,
                coalition: NodeSet::from([1]),
                lhs: 1.0,
                rhs: -1.0,
            })
        );
    }

    #[test]
    fn idm_check_size_guard() {
        let g = Graph::unweighted(0..13, []).unwrap();
        assert_eq!(
            check_idm(&g, &ValuationSpec::Coordination, 12),
            Err(ValuationError::TooLarge { n: 13, max: 12 })
        );
    }

    #[test]
    fn separator_additivity() {
        let g = Graph::new(
            [0, 1, 2],
            [Edge::new(0, 1).weighted(4.0), Edge::new(1, 2).weighted(-1.0)],
        )
        .unwrap();
        let v = ValuationSpec::EdgeSum;
        let a = NodeSet::from([0, 1]);
        let b = NodeSet::from([1, 2]);
        assert!(check_separator_additivity(&g, &v, &a, &b).unwrap());
        assert!(check_separator_additivity(&g, &v, &a, &a).unwrap());
        assert!(check_separator_additivity(&g, &v, &NodeSet::from([1]), &b).unwrap());
        assert_eq!(
            check_separator_additivity(&g, &v, &NodeSet::from([0]), &NodeSet::from([1])),
            Err(ValuationError::SeparationViolated { u: 0, v: 1 })
        );
    }
}
