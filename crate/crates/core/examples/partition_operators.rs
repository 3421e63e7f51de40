//! Partition codes, enumeration, restriction and the union of agreeing
//! structures.
//!
//! Run with `cargo run --example partition_operators`.

use gcsg::graph::NodeSet;
use gcsg::partition::{bell_number, enumerate_partitions, CoalitionStructure};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ground = NodeSet::from([1, 2, 3, 4]);
    println!("partitions of {ground} ({} in total):", bell_number(ground.len()));
    for p in enumerate_partitions(&ground)? {
        println!("  {:?}  {p}", p.encode().as_slice());
    }

    let left = CoalitionStructure::from_blocks([vec![1, 2], vec![3]])?;
    let right = CoalitionStructure::from_blocks([vec![2, 5], vec![3, 4]])?;
    let merged = left.merge_union(&right)?;
    println!("{left} U {right} = {merged}");
    println!("restricted back: {} and {}", merged.restrict(left.ground())?, merged.restrict(right.ground())?);

    let clash = CoalitionStructure::from_blocks([vec![2, 3], vec![5]])?;
    match left.merge_union(&clash) {
        Ok(p) => println!("unexpected merge {p}"),
        Err(e) => println!("{left} U {clash}: {e}"),
    }
    Ok(())
}
