//! Exact solvers for coalition structure generation over graphs.
//!
//! * [`solve_exhaustive`] walks every acyclic edge subset and scores the
//!   connected components it induces.
//! * [`solve_treedp`] runs the bag-by-bag dynamic program over a tree
//!   decomposition and rebuilds an optimal structure from the stored
//!   witnesses.
//! * [`solve_oracle`] enumerates every partition of the node set.
//!
//! [`solve`] dispatches between them and, for IDM valuations, solves each
//! connected component separately.

mod exhaustive;
mod oracle;
mod treedp;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{values_equal, Graph, GraphError, NodeSet, TOLERANCE};
use crate::partition::{CoalitionStructure, PartitionError};
use crate::treedecomp::{
    min_fill_decompose, separator_decompose, DecompError, GreedySeparator, GridSeparator,
    SeparatorParams, TreeDecomposition, ValidationReport,
};
use crate::valuation::{Valuation, ValuationError};

pub use exhaustive::{binomial, solve_exhaustive, EXHAUSTIVE_MAX_NODES};
pub use oracle::{solve_oracle, ORACLE_MAX_NODES};
pub use treedp::{
    dp_fill, dp_reconstruct, dp_reconstruct_by_merging, solve_treedp, DpEntry, DpTables,
    TreeDpOptions, DP_MAX_BAG,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("{what}: {n} exceeds the cap of {max}")]
    TooLarge { what: &'static str, n: usize, max: usize },
    #[error("graph is disconnected; solve components separately")]
    Disconnected,
    #[error("method treedp needs a tree decomposition or a construction heuristic")]
    MethodNeedsDecomposition,
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(ValidationReport),
    #[error("no entry in the table of bag {child} for a key produced at bag {bag}")]
    MissingChildEntry { bag: usize, child: usize },
    #[error("no witness stored at bag {bag} for the required interface partition")]
    MissingWitness { bag: usize },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Decomposition(#[from] DecompError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    #[serde(rename = "treedp")]
    TreeDp,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Exhaustive, Method::TreeDp, Method::Oracle];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::TreeDp => "treedp",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown method {s:?} (expected exhaustive, treedp or oracle)"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveStats {
    pub algorithm: Method,
    /// Forests visited (exhaustive), partitions scored (oracle) or bag
    /// partitions enumerated (treedp).
    pub candidates: u64,
    pub bags: usize,
    pub width: Option<usize>,
    pub components: usize,
    /// Root value of the dynamic program, an upper bound on every structure
    /// for IDM valuations.
    pub dp_bound: Option<f64>,
    pub elapsed_ms: f64,
}

impl SolveStats {
    pub(crate) fn new(algorithm: Method) -> Self {
        SolveStats {
            algorithm,
            candidates: 0,
            bags: 0,
            width: None,
            components: 1,
            dp_bound: None,
            elapsed_ms: 0.0,
        }
    }

    fn absorb(&mut self, other: &SolveStats) {
        self.candidates += other.candidates;
        self.bags += other.bags;
        self.width = match (self.width, other.width) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        self.dp_bound = match (self.dp_bound, other.dp_bound) {
            (Some(a), Some(b)) => Some(a + b),
            (a, b) => a.or(b),
        };
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveResult {
    #[serde(serialize_with = "serialize_blocks", rename = "blocks")]
    pub structure: CoalitionStructure,
    pub value: f64,
    pub stats: SolveStats,
}

fn serialize_blocks<S: serde::Serializer>(p: &CoalitionStructure, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&p.to_lists(), s)
}

impl SolveResult {
    pub(crate) fn empty(algorithm: Method) -> Self {
        SolveResult {
            structure: CoalitionStructure::empty(),
            value: 0.0,
            stats: SolveStats::new(algorithm),
        }
    }
}

/// `candidate` beats `best` by more than the comparison tolerance.
pub(crate) fn improves(exact: bool, candidate: f64, best: f64) -> bool {
    if exact {
        candidate > best
    } else {
        candidate > best + TOLERANCE
    }
}

/// How [`solve`] obtains a tree decomposition for the treedp method.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum DecompositionStrategy {
    /// No decomposition: treedp is unavailable.
    None,
    Given(TreeDecomposition),
    #[default]
    MinFill,
    GreedySeparator,
    /// Central-line separators of a `rows x cols` grid with canonical ids.
    GridSeparator { rows: usize, cols: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub method: Method,
    pub decomposition: DecompositionStrategy,
    pub split_connected: bool,
    pub exhaustive_max_nodes: usize,
    pub oracle_max_nodes: usize,
    pub max_bag: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            method: Method::TreeDp,
            decomposition: DecompositionStrategy::MinFill,
            split_connected: false,
            exhaustive_max_nodes: EXHAUSTIVE_MAX_NODES,
            oracle_max_nodes: ORACLE_MAX_NODES,
            max_bag: DP_MAX_BAG,
        }
    }
}

impl SolveConfig {
    pub fn with_method(method: Method) -> Self {
        SolveConfig {
            method,
            ..SolveConfig::default()
        }
    }
}

/// Solves on any graph. IDM valuations are solved per connected component
/// and the component optima combined; other valuations run the chosen
/// method on the whole graph.
pub fn solve<V: Valuation + ?Sized>(
    graph: &Graph,
    v: &V,
    config: &SolveConfig,
) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    if graph.is_empty() {
        return Ok(SolveResult::empty(config.method));
    }
    if let DecompositionStrategy::Given(td) = &config.decomposition {
        let report = td.validate(graph);
        if !report.is_valid() {
            return Err(SolveError::InvalidDecomposition(report));
        }
    }
    if config.method == Method::TreeDp && config.decomposition == DecompositionStrategy::None {
        return Err(SolveError::MethodNeedsDecomposition);
    }

    let scopes = if v.is_idm() {
        graph.connected_components()
    } else {
        vec![graph.node_set()]
    };
    let mut stats = SolveStats::new(config.method);
    stats.components = scopes.len();
    let mut blocks: Vec<NodeSet> = Vec::new();
    let mut value = 0.0;
    for scope in &scopes {
        let sub = if scopes.len() == 1 {
            graph.clone()
        } else {
            graph.induced_subgraph(scope)?
        };
        let part = solve_scope(graph, &sub, v, config)?;
        value += part.value;
        stats.absorb(&part.stats);
        blocks.extend(part.structure.blocks().iter().cloned());
    }
    let structure = CoalitionStructure::from_blocks(blocks)?;
    stats.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(SolveResult {
        structure,
        value,
        stats,
    })
}

fn solve_scope<V: Valuation + ?Sized>(
    graph: &Graph,
    scope: &Graph,
    v: &V,
    config: &SolveConfig,
) -> Result<SolveResult, SolveError> {
    let mut result = match config.method {
        Method::Exhaustive => exhaustive::search(graph, scope, v, config.exhaustive_max_nodes)?,
        Method::Oracle => oracle::search(graph, scope, v, config.oracle_max_nodes)?,
        Method::TreeDp => {
            let td = match &config.decomposition {
                DecompositionStrategy::None => return Err(SolveError::MethodNeedsDecomposition),
                DecompositionStrategy::Given(td) => {
                    if scope.node_count() == graph.node_count() {
                        td.clone()
                    } else {
                        td.restrict_to(&scope.node_set())
                    }
                }
                DecompositionStrategy::MinFill => min_fill_decompose(scope),
                DecompositionStrategy::GreedySeparator => {
                    separator_decompose(scope, &GreedySeparator, SeparatorParams::GRID)?.decomposition
                }
                DecompositionStrategy::GridSeparator { rows, cols } => {
                    separator_decompose(scope, &GridSeparator::new(*rows, *cols), SeparatorParams::GRID)?
                        .decomposition
                }
            };
            let options = TreeDpOptions {
                split_connected: false,
                max_bag: config.max_bag,
            };
            treedp::search(graph, scope, v, &td, &options)?
        }
    };
    if config.split_connected {
        result.structure = crate::partition::split_connected(graph, &result.structure)?;
        let exact = v.is_integral(graph);
        let split_value = crate::partition::structure_value(graph, v, &result.structure)?;
        if v.is_idm() && !values_equal(exact, split_value, result.value) {
            return Err(SolveError::Internal(format!(
                "splitting into connected blocks changed the value from {} to {split_value}",
                result.value
            )));
        }
        result.value = split_value;
    }
    Ok(result)
}
