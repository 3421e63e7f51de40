use std::time::Instant;

use super::{improves, Method, SolveError, SolveResult, SolveStats};
use crate::graph::{Graph, NodeSet};
use crate::partition::{CoalitionStructure, RgsIter};
use crate::valuation::Valuation;

/// Default node cap for full partition enumeration.
pub const ORACLE_MAX_NODES: usize = 12;

/// Reference optimum over every partition of the node set, connected or
/// not. Partitions are visited in code order and only a strict improvement
/// replaces the incumbent, so ties keep the smallest code.
pub fn solve_oracle<V: Valuation + ?Sized>(
    graph: &Graph,
    v: &V,
    max_nodes: usize,
) -> Result<SolveResult, SolveError> {
    search(graph, graph, v, max_nodes)
}

pub(super) fn search<V: Valuation + ?Sized>(
    graph: &Graph,
    scope: &Graph,
    v: &V,
    max_nodes: usize,
) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let n = scope.node_count();
    let cap = max_nodes.min(24);
    if n > cap {
        return Err(SolveError::TooLarge {
            what: "oracle nodes",
            n,
            max: cap,
        });
    }
    if n == 0 {
        return Ok(SolveResult::empty(Method::Oracle));
    }
    let ids = scope.node_ids();
    let exact = v.is_integral(graph);
    let mut values: Vec<Option<f64>> = vec![None; 1 << n];
    let mut masks = vec![0u32; n];
    let mut best: Option<(f64, Vec<u32>)> = None;
    let mut scored = 0u64;
    let mut codes = RgsIter::new(n);
    while let Some(code) = codes.next_code() {
        scored += 1;
        masks.iter_mut().for_each(|m| *m = 0);
        for (i, &l) in code.iter().enumerate() {
            masks[l as usize] |= 1 << i;
        }
        let mut total = 0.0;
        for &mask in masks.iter().take_while(|&&m| m != 0) {
            total += match values[mask as usize] {
                Some(x) => x,
                None => {
                    let members: NodeSet = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| ids[i]).collect();
                    let x = v.value(graph, &members)?;
                    values[mask as usize] = Some(x);
                    x
                }
            };
        }
        if best.as_ref().is_none_or(|(b, _)| improves(exact, total, *b)) {
            best = Some((total, code.to_vec()));
        }
    }
    let (value, code) = best.expect("at least one partition exists");
    let mut stats = SolveStats::new(Method::Oracle);
    stats.candidates = scored;
    stats.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(SolveResult {
        structure: CoalitionStructure::decode_unchecked(&code, ids),
        value,
        stats,
    })
}
