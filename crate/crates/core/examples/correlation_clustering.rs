//! Correlation clustering on a signed graph: the tree DP and full partition
//! enumeration agree on the optimum.
//!
//! Run with `cargo run --example correlation_clustering`.

use gcsg::graph::{Edge, Graph, Sign};
use gcsg::solvers::{solve, solve_oracle, Method, SolveConfig, ORACLE_MAX_NODES};
use gcsg::valuation::ValuationSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let signed = [
        (0, 1, Sign::Plus),
        (1, 2, Sign::Plus),
        (0, 2, Sign::Minus),
        (2, 3, Sign::Minus),
        (3, 4, Sign::Plus),
        (4, 5, Sign::Plus),
        (5, 6, Sign::Minus),
        (3, 6, Sign::Plus),
    ];
    let g = Graph::new(0..7, signed.map(|(u, v, s)| Edge::new(u, v).labeled(s)))?;
    let v = ValuationSpec::Correlation;

    let dp = solve(&g, &v, &SolveConfig::with_method(Method::TreeDp))?;
    let oracle = solve_oracle(&g, &v, ORACLE_MAX_NODES)?;
    println!("treedp: {} -> {}", dp.structure, dp.value);
    println!("oracle: {} -> {} ({} partitions)", oracle.structure, oracle.value, oracle.stats.candidates);
    assert_eq!(dp.value, oracle.value);
    Ok(())
}
