//! Forest enumeration on small graphs, with the number of forests visited
//! against the `C(e + n, n)` bound.
//!
//! Run with `cargo run --example exhaustive_forests`.

use gcsg::generators;
use gcsg::solvers::{binomial, solve_exhaustive, EXHAUSTIVE_MAX_NODES};
use gcsg::valuation::ValuationSpec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let shapes = [
        ("path(8)", generators::path(8)),
        ("cycle(8)", generators::cycle(8)),
        ("star(7)", generators::star(7)),
        ("grid(3x3)", generators::grid(3, 3)),
        ("complete(6)", generators::complete(6)),
    ];
    println!("{:<12} {:>3} {:>3} {:>8} {:>10} {:>6}", "graph", "n", "e", "forests", "bound", "value");
    for (name, shape) in shapes {
        let g = generators::with_random_attributes(&shape, -5, 5, &mut rng);
        let r = solve_exhaustive(&g, &ValuationSpec::EdgeSum, EXHAUSTIVE_MAX_NODES)?;
        let (n, e) = (g.node_count(), g.edge_count());
        let bound = binomial((n + e) as u64, n as u64);
        println!(
            "{name:<12} {n:>3} {e:>3} {:>8} {bound:>10} {:>6}",
            r.stats.candidates, r.value
        );
    }
    Ok(())
}
