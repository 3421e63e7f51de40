//! Exact coalition structure generation over graphs.
//!
//! Agents are the nodes of an undirected graph and a valuation assigns a
//! real value to every coalition. The goal is a partition of the nodes
//! maximising the sum of block values. This crate provides:
//!
//! * graph and coalition types ([`graph`]) and the stock valuations,
//!   including an exhaustive check of the independence-of-disconnected-members
//!   (IDM) property ([`valuation`]);
//! * partition codes, enumeration and the restrict/merge operators used to
//!   stitch partial solutions together ([`partition`]);
//! * tree decompositions: validation, min-fill and separator-based
//!   construction, and the BFS scaffold for dynamic programming
//!   ([`treedecomp`]);
//! * three exact solvers and a dispatcher ([`solvers`]);
//! * JSON problem files, the command-line front end and a benchmark
//!   harness ([`io`], [`cli`], [`bench`]).
//!
//! ```
//! use gcsg::generators;
//! use gcsg::solvers::{solve, SolveConfig};
//! use gcsg::valuation::ValuationSpec;
//!
//! let g = generators::with_uniform_weight(&generators::path(5), 1.0);
//! let result = solve(&g, &ValuationSpec::EdgeSum, &SolveConfig::default()).unwrap();
//! assert_eq!(result.value, 4.0);
//! assert_eq!(result.structure.block_count(), 1);
//! ```

mod dsu;

pub mod bench;
pub mod cli;
pub mod generators;
pub mod graph;
pub mod io;
pub mod partition;
pub mod solvers;
pub mod treedecomp;
pub mod valuation;

pub use graph::{Edge, Graph, GraphError, NodeId, NodeSet, Sign};
pub use partition::{CoalitionStructure, PartitionCode};
pub use solvers::{solve, Method, SolveConfig, SolveError, SolveResult};
pub use treedecomp::TreeDecomposition;
pub use valuation::{Valuation, ValuationKind, ValuationSpec};
