use std::collections::HashMap;
use std::time::Instant;

use super::{improves, Method, SolveError, SolveResult, SolveStats};
use crate::dsu::RollbackDsu;
use crate::graph::{values_equal, Graph, NodeSet};
use crate::partition::CoalitionStructure;
use crate::valuation::{Valuation, ValuationError};

/// Default node cap for the forest enumeration.
pub const EXHAUSTIVE_MAX_NODES: usize = 16;
// coalitions are memoised by bitmask
const MASK_BITS: usize = 64;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = match r.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    r
}

/// Optimal coalition structure of a connected graph by enumerating every
/// forest of the graph. Each forest stands for the partition formed by its
/// trees; every connected partition is reached this way.
///
/// Ties keep the structure with the smallest canonical code.
pub fn solve_exhaustive<V: Valuation + ?Sized>(
    graph: &Graph,
    v: &V,
    max_nodes: usize,
) -> Result<SolveResult, SolveError> {
    if graph.is_empty() {
        return Ok(SolveResult::empty(Method::Exhaustive));
    }
    if !graph.is_connected() {
        return Err(SolveError::Disconnected);
    }
    search(graph, graph, v, max_nodes)
}

/// Forest search over the edges of `scope`, scoring coalitions against `graph`.
pub(super) fn search<V: Valuation + ?Sized>(
    graph: &Graph,
    scope: &Graph,
    v: &V,
    max_nodes: usize,
) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let n = scope.node_count();
    let cap = max_nodes.min(MASK_BITS);
    if n > cap {
        return Err(SolveError::TooLarge {
            what: "exhaustive search nodes",
            n,
            max: cap,
        });
    }
    if n == 0 {
        return Ok(SolveResult::empty(Method::Exhaustive));
    }

    let edges: Vec<(usize, usize)> = scope
        .edges()
        .iter()
        .map(|e| (scope.index_of(e.u).unwrap(), scope.index_of(e.v).unwrap()))
        .collect();
    let mut walk = ForestWalk {
        graph,
        ids: scope.node_ids(),
        v,
        exact: v.is_integral(graph),
        edges: &edges,
        dsu: RollbackDsu::new(n),
        memo: HashMap::new(),
        best: None,
        forests: 0,
    };
    walk.visit(0)?;

    let bound = binomial((edges.len() + n) as u64, n as u64);
    if walk.forests as u128 > bound {
        return Err(SolveError::Internal(format!(
            "visited {} forests, more than the bound {bound}",
            walk.forests
        )));
    }
    let (value, code) = walk.best.expect("the empty forest is always visited");
    let structure = CoalitionStructure::decode_unchecked(&code, scope.node_ids());
    let check = crate::partition::structure_value(graph, v, &structure)?;
    if !values_equal(walk.exact, check, value) {
        return Err(SolveError::Internal(format!(
            "memoised value {value} differs from recomputed {check}"
        )));
    }
    let mut stats = SolveStats::new(Method::Exhaustive);
    stats.candidates = walk.forests;
    stats.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(SolveResult {
        structure,
        value,
        stats,
    })
}

struct ForestWalk<'a, V: ?Sized> {
    graph: &'a Graph,
    ids: &'a [crate::graph::NodeId],
    v: &'a V,
    exact: bool,
    edges: &'a [(usize, usize)],
    dsu: RollbackDsu,
    memo: HashMap<u64, f64>,
    best: Option<(f64, Vec<u32>)>,
    forests: u64,
}

impl<V: Valuation + ?Sized> ForestWalk<'_, V> {
    fn visit(&mut self, t: usize) -> Result<(), ValuationError> {
        if t == self.edges.len() {
            return self.score();
        }
        self.visit(t + 1)?;
        let (a, b) = self.edges[t];
        if self.dsu.union(a, b) {
            let r = self.visit(t + 1);
            self.dsu.rollback();
            r?;
        }
        Ok(())
    }

    fn score(&mut self) -> Result<(), ValuationError> {
        self.forests += 1;
        let code = self.dsu.labels();
        let blocks = code.iter().max().map_or(0, |&m| m as usize + 1);
        let mut masks = vec![0u64; blocks];
        for (i, &l) in code.iter().enumerate() {
            masks[l as usize] |= 1 << i;
        }
        let mut total = 0.0;
        for mask in masks {
            total += self.coalition_value(mask)?;
        }
        let replace = match &self.best {
            None => true,
            Some((best, best_code)) => {
                improves(self.exact, total, *best)
                    || (!improves(self.exact, *best, total) && code < *best_code)
            }
        };
        if replace {
            self.best = Some((total, code));
        }
        Ok(())
    }

    fn coalition_value(&mut self, mask: u64) -> Result<f64, ValuationError> {
        if let Some(&x) = self.memo.get(&mask) {
            return Ok(x);
        }
        let members: NodeSet = (0..self.ids.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.ids[i])
            .collect();
        let x = self.v.value(self.graph, &members)?;
        self.memo.insert(mask, x);
        Ok(x)
    }
}
