//! Benchmark harness: solves generated instances with several methods and
//! reports one CSV row per (instance, method, repetition).

use std::fmt;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::generators;
use crate::graph::Graph;
use crate::solvers::{solve, Method, SolveConfig, SolveError};
use crate::treedecomp::min_fill_decompose;
use crate::valuation::{ValuationKind, ValuationSpec};

pub const CSV_HEADER: [&str; 8] = ["family", "n", "e", "width", "method", "value", "elapsed_ms", "candidates"];

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Path,
    /// Uniform random recursive trees.
    Tree,
    Cycle,
    /// A fixed `rows x cols` grid; ignores the size list.
    Grid { rows: usize, cols: usize },
    /// A fixed graph; ignores the size list and keeps its own attributes.
    Fixture { name: String, graph: Graph },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path => f.write_str("path"),
            Family::Tree => f.write_str("tree"),
            Family::Cycle => f.write_str("cycle"),
            Family::Grid { rows, cols } => write!(f, "grid{rows}x{cols}"),
            Family::Fixture { name, .. } => f.write_str(name),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub families: Vec<Family>,
    pub sizes: Vec<usize>,
    pub valuation: ValuationKind,
    pub methods: Vec<Method>,
    pub repetitions: usize,
    pub seed: u64,
    /// Generated edges get integer weights drawn from this range.
    pub weight_range: (i32, i32),
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            families: vec![Family::Path],
            sizes: vec![100, 200, 400, 800],
            valuation: ValuationKind::EdgeSum,
            methods: vec![Method::TreeDp],
            repetitions: 1,
            seed: 0,
            weight_range: (-5, 5),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub e: usize,
    /// Min-fill width of the instance.
    pub width: usize,
    pub method: Method,
    pub value: f64,
    pub elapsed_ms: f64,
    pub candidates: u64,
}

fn valuation_for(kind: ValuationKind) -> Result<ValuationSpec, SolveError> {
    match kind {
        ValuationKind::EdgeSum => Ok(ValuationSpec::EdgeSum),
        ValuationKind::Correlation => Ok(ValuationSpec::Correlation),
        ValuationKind::Coordination => Ok(ValuationSpec::Coordination),
        ValuationKind::Modularity => Ok(ValuationSpec::Modularity),
        ValuationKind::Table => Err(SolveError::Internal(
            "the benchmark generates graphs and cannot supply a value table".into(),
        )),
    }
}

/// Graphs of one family, each paired with its own RNG-derived attributes.
fn instances(family: &Family, sizes: &[usize], config: &BenchConfig, rng: &mut ChaCha8Rng) -> Vec<Graph> {
    let (lo, hi) = config.weight_range;
    let shapes: Vec<Graph> = match family {
        Family::Path => sizes.iter().map(|&n| generators::path(n)).collect(),
        Family::Cycle => sizes.iter().map(|&n| generators::cycle(n)).collect(),
        Family::Tree => sizes.iter().map(|&n| generators::random_tree(n, rng)).collect(),
        Family::Grid { rows, cols } => vec![generators::grid(*rows, *cols)],
        Family::Fixture { graph, .. } => return vec![graph.clone()],
    };
    shapes
        .iter()
        .map(|g| generators::with_random_attributes(g, lo, hi, rng))
        .collect()
}

/// Runs every (family, size, repetition, method) combination. Instances are
/// regenerated per repetition from one seeded stream and shared across
/// methods, so the value column is method-invariant.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRow>, SolveError> {
    let valuation = valuation_for(config.valuation)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rows = Vec::new();
    for family in &config.families {
        for _ in 0..config.repetitions {
            let mut stream = ChaCha8Rng::seed_from_u64(rng.gen());
            for graph in instances(family, &config.sizes, config, &mut stream) {
                let width = min_fill_decompose(&graph).width().unwrap_or(0);
                for &method in &config.methods {
                    let result = solve(&graph, &valuation, &SolveConfig::with_method(method))?;
                    rows.push(BenchRow {
                        family: family.to_string(),
                        n: graph.node_count(),
                        e: graph.edge_count(),
                        width,
                        method,
                        value: result.value,
                        elapsed_ms: result.stats.elapsed_ms,
                        candidates: result.stats.candidates,
                    });
                }
            }
        }
    }
    Ok(rows)
}

/// Writes the header and one record per row. The header is written even
/// when there are no rows.
pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
