//! Write a problem file, read it back and solve it with each method, as
//! the `gcsg` binary does.
//!
//! Run with `cargo run --example problem_files`.

use gcsg::generators;
use gcsg::io::{parse_problem, serialize_problem, GridShape, Problem};
use gcsg::solvers::{solve, DecompositionStrategy, Method, SolveConfig};
use gcsg::valuation::ValuationSpec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let problem = Problem {
        graph: generators::with_random_attributes(&generators::grid(2, 3), -5, 5, &mut rng),
        valuation: ValuationSpec::EdgeSum,
        grid: Some(GridShape { rows: 2, cols: 3 }),
    };
    let text = serialize_problem(&problem);
    println!("{text}\n");
    let parsed = parse_problem(&text)?;
    assert_eq!(parsed, problem);

    for method in Method::ALL {
        let config = SolveConfig {
            method,
            decomposition: DecompositionStrategy::GridSeparator { rows: 2, cols: 3 },
            ..SolveConfig::default()
        };
        let result = solve(&parsed.graph, &parsed.valuation, &config)?;
        println!("{method}: {} -> {}", result.structure, result.value);
    }
    Ok(())
}
