//! Solve a weighted graph with the tree-decomposition dynamic program.
//!
//! Run with `cargo run --example edge_sum_treedp`.

use gcsg::graph::{Edge, Graph};
use gcsg::solvers::{solve_treedp, TreeDpOptions};
use gcsg::treedecomp::min_fill_decompose;
use gcsg::valuation::ValuationSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // two triangles sharing node 2, joined by a weak negative bridge
    let g = Graph::new(
        0..6,
        [
            Edge::new(0, 1).weighted(4.0),
            Edge::new(1, 2).weighted(2.0),
            Edge::new(0, 2).weighted(-1.0),
            Edge::new(2, 3).weighted(-3.0),
            Edge::new(3, 4).weighted(5.0),
            Edge::new(4, 5).weighted(1.0),
            Edge::new(3, 5).weighted(1.0),
        ],
    )?;

    let td = min_fill_decompose(&g);
    println!("decomposition: {} bags, width {}", td.bag_count(), td.width()?);
    for (k, bag) in td.bags().iter().enumerate() {
        println!("  bag {k}: {bag}");
    }

    let result = solve_treedp(&g, &ValuationSpec::EdgeSum, &td, &TreeDpOptions::default())?;
    println!("structure: {}", result.structure);
    println!("value:     {}", result.value);
    println!("bag partitions enumerated: {}", result.stats.candidates);
    Ok(())
}
