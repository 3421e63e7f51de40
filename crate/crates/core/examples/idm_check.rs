//! Exhaustive check of the independence-of-disconnected-members property
//! for the stock valuations.
//!
//! Run with `cargo run --example idm_check`.

use gcsg::generators;
use gcsg::valuation::{check_idm, IdmReport, ValuationSpec, IDM_CHECK_MAX_NODES};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let graphs = [
        ("path 0-1-2", generators::with_uniform_weight(&generators::path(3), 1.0)),
        ("cycle(5)", generators::with_random_attributes(&generators::cycle(5), -3, 3, &mut rng)),
        ("grid(2x3)", generators::with_random_attributes(&generators::grid(2, 3), -3, 3, &mut rng)),
    ];
    let valuations = [
        ValuationSpec::EdgeSum,
        ValuationSpec::Correlation,
        ValuationSpec::Coordination,
        ValuationSpec::Modularity,
    ];
    for (name, g) in &graphs {
        println!("{name}");
        for v in &valuations {
            match check_idm(g, v, IDM_CHECK_MAX_NODES)? {
                IdmReport::Pass { coalitions_checked, .. } => {
                    println!("  {:<13} pass ({coalitions_checked} coalitions)", v.kind())
                }
                IdmReport::Violation(x) => println!(
                    "  {:<13} violation: i={} j={} C={} lhs={} rhs={}",
                    v.kind(),
                    x.i,
                    x.j,
                    x.coalition,
                    x.lhs,
                    x.rhs
                ),
            }
        }
    }
    Ok(())
}
