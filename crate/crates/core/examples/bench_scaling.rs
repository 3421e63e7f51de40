//! Benchmark harness: solve time against path length for the tree DP.
//! Prints CSV; pass a path to write it to a file instead.
//!
//! Run with `cargo run --release --example bench_scaling [out.csv]`.

use gcsg::bench::{run_bench, write_csv, BenchConfig, Family};
use gcsg::solvers::Method;
use gcsg::valuation::ValuationKind;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = BenchConfig {
        families: vec![Family::Path, Family::Tree, Family::Cycle],
        sizes: vec![250, 500, 1000, 2000, 4000],
        valuation: ValuationKind::EdgeSum,
        methods: vec![Method::TreeDp],
        repetitions: 3,
        seed: 2024,
        ..BenchConfig::default()
    };
    let rows = run_bench(&config)?;
    match std::env::args().nth(1) {
        Some(path) => write_csv(&rows, std::fs::File::create(path)?)?,
        None => write_csv(&rows, std::io::stdout().lock())?,
    }
    Ok(())
}
