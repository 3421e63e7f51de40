//! Recursive separator decompositions of grids, with the certified width
//! bound for the central-line grid separator.
//!
//! Run with `cargo run --example grid_separator_decomposition`.

use gcsg::generators;
use gcsg::treedecomp::{min_fill_decompose, separator_decompose, GridSeparator, SeparatorParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>6} {:>4} {:>10} {:>8} {:>9}", "grid", "n", "separator", "bound", "min-fill");
    for side in [2, 3, 4, 6, 8, 10] {
        let g = generators::grid(side, side);
        let sd = separator_decompose(&g, &GridSeparator::new(side, side), SeparatorParams::GRID)?;
        assert!(sd.decomposition.validate(&g).is_valid());
        println!(
            "{:>6} {:>4} {:>10} {:>8.2} {:>9}{}",
            format!("{side}x{side}"),
            g.node_count(),
            sd.decomposition.width()?,
            sd.width_bound,
            min_fill_decompose(&g).width()?,
            if sd.certified { "" } else { "  (uncertified)" }
        );
    }
    Ok(())
}
