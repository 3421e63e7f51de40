//! JSON file formats.
//!
//! A problem file holds the graph, the valuation and optional grid shape:
//!
//! ```json
//! {
//!   "graph": {
//!     "nodes": [0, 1, 2],
//!     "edges": [
//!       { "u": 0, "v": 1, "weight": -1 },
//!       { "u": 1, "v": 2, "weight": 3 }
//!     ]
//!   },
//!   "valuation": { "kind": "edge_sum" },
//!   "grid": null
//! }
//! ```
//!
//! Edges may carry `"weight"` (number) and `"label"` (`"+"` or `"-"`);
//! either all edges have a given attribute or none do. A `"table"`
//! valuation lists `{ "set": [ids...], "value": x }` entries covering every
//! subset, including `{ "set": [], "value": 0 }`. With `"grid": { "rows": r,
//! "cols": c }` the nodes must be `0..r*c` with node `row * c + col`
//! adjacent to its right and lower neighbours.
//!
//! A decomposition file lists bags and tree edges over bag indices (0-based):
//!
//! ```json
//! { "bags": [[0, 1], [1, 2]], "tree": [[0, 1]] }
//! ```

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generators;
use crate::graph::{Edge, Graph, GraphError, NodeId, NodeSet, Sign};
use crate::solvers::{SolveResult, SolveStats};
use crate::treedecomp::TreeDecomposition;
use crate::valuation::{ValuationError, ValuationKind, ValuationSpec, ValueTable};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {source}")]
    Graph {
        field: String,
        #[source]
        source: GraphError,
    },
    #[error("{field}: {source}")]
    Valuation {
        field: String,
        #[source]
        source: ValuationError,
    },
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
    #[error("grid: {0}")]
    Grid(String),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridShape {
    pub rows: usize,
    pub cols: usize,
}

/// A validated problem: graph, valuation and optional grid shape.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub graph: Graph,
    pub valuation: ValuationSpec,
    pub grid: Option<GridShape>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    graph: GraphFile,
    valuation: ValuationFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grid: Option<GridShape>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    nodes: Vec<NodeId>,
    #[serde(default)]
    edges: Vec<EdgeFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeFile {
    u: NodeId,
    v: NodeId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<Sign>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ValuationFile {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    table: Option<Vec<TableEntry>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableEntry {
    set: Vec<NodeId>,
    value: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DecompositionFile {
    bags: Vec<Vec<NodeId>>,
    tree: Vec<(usize, usize)>,
}

fn graph_field(e: &GraphError) -> String {
    match e {
        GraphError::DuplicateNode { index, .. } => format!("graph.nodes[{index}]"),
        GraphError::UnknownEndpoint { index, .. }
        | GraphError::SelfLoop { index, .. }
        | GraphError::DuplicateEdge { index, .. }
        | GraphError::PartialWeights { index, .. }
        | GraphError::PartialLabels { index, .. }
        | GraphError::NonFiniteWeight { index, .. } => format!("graph.edges[{index}]"),
        GraphError::UnknownNode(_) => "graph".into(),
    }
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<Problem, IoError> {
    let file: ProblemFile = serde_json::from_str(text)?;
    let edges = file.graph.edges.iter().map(|e| Edge {
        u: e.u,
        v: e.v,
        weight: e.weight,
        label: e.label,
    });
    let graph = Graph::new(file.graph.nodes.iter().copied(), edges).map_err(|source| IoError::Graph {
        field: graph_field(&source),
        source,
    })?;

    let kind: ValuationKind = file.valuation.kind.parse().map_err(|message| IoError::Invalid {
        field: "valuation.kind".into(),
        message,
    })?;
    let valuation = match (kind, file.valuation.table) {
        (ValuationKind::Table, Some(entries)) => {
            for (k, entry) in entries.iter().enumerate() {
                if entry.set.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(IoError::Invalid {
                        field: format!("valuation.table[{k}].set"),
                        message: "coalitions must be strictly increasing id lists".into(),
                    });
                }
            }
            let table = ValueTable::new(entries.into_iter().map(|e| (NodeSet::from(e.set), e.value)))
                .map_err(|source| IoError::Valuation {
                    field: "valuation.table".into(),
                    source,
                })?;
            ValuationSpec::Table(table)
        }
        (ValuationKind::Table, None) => {
            return Err(IoError::Invalid {
                field: "valuation.table".into(),
                message: "kind table needs a table".into(),
            })
        }
        (_, Some(_)) => {
            return Err(IoError::Valuation {
                field: "valuation.table".into(),
                source: ValuationError::NotATable,
            })
        }
        (ValuationKind::EdgeSum, None) => ValuationSpec::EdgeSum,
        (ValuationKind::Correlation, None) => ValuationSpec::Correlation,
        (ValuationKind::Coordination, None) => ValuationSpec::Coordination,
        (ValuationKind::Modularity, None) => ValuationSpec::Modularity,
    };
    let field = if matches!(valuation, ValuationSpec::Table(_)) {
        "valuation.table"
    } else {
        "valuation"
    };
    valuation.validate_for(&graph).map_err(|source| IoError::Valuation {
        field: field.into(),
        source,
    })?;

    if let Some(shape) = file.grid {
        check_grid(&graph, shape)?;
    }
    Ok(Problem {
        graph,
        valuation,
        grid: file.grid,
    })
}

/// Checks that `graph` is the `rows x cols` grid with canonical ids.
pub fn check_grid(graph: &Graph, shape: GridShape) -> Result<(), IoError> {
    let expected = generators::grid(shape.rows, shape.cols);
    if graph.node_ids() != expected.node_ids() {
        return Err(IoError::Grid(format!(
            "a {}x{} grid has nodes 0..{}",
            shape.rows,
            shape.cols,
            shape.rows * shape.cols
        )));
    }
    let have: BTreeSet<(NodeId, NodeId)> = graph.edges().iter().map(Edge::endpoints).collect();
    let want: BTreeSet<(NodeId, NodeId)> = expected.edges().iter().map(Edge::endpoints).collect();
    if let Some(&(u, v)) = have.symmetric_difference(&want).next() {
        let what = if have.contains(&(u, v)) { "unexpected" } else { "missing" };
        return Err(IoError::Grid(format!("{what} edge ({u}, {v})")));
    }
    Ok(())
}

pub fn serialize_problem(problem: &Problem) -> String {
    let file = ProblemFile {
        graph: GraphFile {
            nodes: problem.graph.node_ids().to_vec(),
            edges: problem
                .graph
                .edges()
                .iter()
                .map(|e| EdgeFile {
                    u: e.u,
                    v: e.v,
                    weight: e.weight,
                    label: e.label,
                })
                .collect(),
        },
        valuation: ValuationFile {
            kind: problem.valuation.kind().to_string(),
            table: match &problem.valuation {
                ValuationSpec::Table(t) => Some(
                    t.iter()
                        .map(|(set, value)| TableEntry {
                            set: set.as_slice().to_vec(),
                            value,
                        })
                        .collect(),
                ),
                _ => None,
            },
        },
        grid: problem.grid,
    };
    serde_json::to_string_pretty(&file).expect("problem serializes")
}

/// Parses a decomposition file. Structural checks against a graph are left
/// to [`TreeDecomposition::validate`].
pub fn parse_decomposition(text: &str) -> Result<TreeDecomposition, IoError> {
    let file: DecompositionFile = serde_json::from_str(text)?;
    let bags = file.bags.into_iter().map(NodeSet::from).collect();
    Ok(TreeDecomposition::new(bags, file.tree))
}

pub fn serialize_decomposition(td: &TreeDecomposition) -> String {
    let file = DecompositionFile {
        bags: td.bags().iter().map(|b| b.as_slice().to_vec()).collect(),
        tree: td.tree_edges().to_vec(),
    };
    serde_json::to_string_pretty(&file).expect("decomposition serializes")
}

#[derive(Debug, Serialize)]
struct ResultDocument<'a> {
    blocks: Vec<Vec<NodeId>>,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    stats: Option<&'a SolveStats>,
}

/// Result document: blocks as sorted lists, the value and, optionally, stats.
pub fn serialize_result(result: &SolveResult, with_stats: bool) -> String {
    let doc = ResultDocument {
        blocks: result.structure.to_lists(),
        value: result.value,
        stats: with_stats.then_some(&result.stats),
    };
    serde_json::to_string_pretty(&doc).expect("result serializes")
}
