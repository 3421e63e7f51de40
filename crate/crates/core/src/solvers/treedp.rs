use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::time::Instant;

use super::{improves, Method, SolveError, SolveResult, SolveStats};
use crate::dsu::RollbackDsu;
use crate::graph::{values_equal, Graph, NodeId, NodeSet};
use crate::partition::{
    renormalize, split_connected, structure_value, CoalitionStructure, PartitionCode, RgsIter,
    MAX_ENUMERATION,
};
use crate::treedecomp::{build_scaffold, DecompError, DpScaffold, TreeDecomposition};
use crate::valuation::{Valuation, ValuationError};

/// Default cap on bag size (width + 1) for the dynamic program.
pub const DP_MAX_BAG: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeDpOptions {
    /// Replace each block of the result by its connected components.
    pub split_connected: bool,
    pub max_bag: usize,
}

impl Default for TreeDpOptions {
    fn default() -> Self {
        TreeDpOptions {
            split_connected: false,
            max_bag: DP_MAX_BAG,
        }
    }
}

/// Best value found for one interface partition, and the bag partition
/// that achieved it.
#[derive(Debug, Clone, PartialEq)]
pub struct DpEntry {
    pub value: f64,
    pub witness: PartitionCode,
}

/// One table per scaffold position, keyed by the code of a partition of
/// that bag's interface.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DpTables {
    tables: Vec<HashMap<Vec<u32>, DpEntry>>,
    /// Bag partitions enumerated while filling.
    pub candidates: u64,
}

impl DpTables {
    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn entry(&self, position: usize, key: &[u32]) -> Option<&DpEntry> {
        self.tables.get(position)?.get(key)
    }

    pub fn table_size(&self, position: usize) -> usize {
        self.tables.get(position).map_or(0, HashMap::len)
    }

    /// Optimum of the whole program, stored under the empty key at the root.
    pub fn root_value(&self) -> Option<f64> {
        self.entry(0, &[]).map(|e| e.value)
    }
}

// lazily filled values of v on subsets of one bag, indexed by bitmask
struct BagValues<'a, V: ?Sized> {
    graph: &'a Graph,
    v: &'a V,
    members: &'a [NodeId],
    cache: Vec<Option<f64>>,
}

impl<V: Valuation + ?Sized> BagValues<'_, V> {
    fn get(&mut self, mask: u32) -> Result<f64, ValuationError> {
        if let Some(x) = self.cache[mask as usize] {
            return Ok(x);
        }
        let set: NodeSet = (0..self.members.len())
            .filter(|&t| mask >> t & 1 == 1)
            .map(|t| self.members[t])
            .collect();
        let x = self.v.value(self.graph, &set)?;
        self.cache[mask as usize] = Some(x);
        Ok(x)
    }
}

fn positions_in(bag: &[NodeId], set: &NodeSet) -> Vec<usize> {
    set.iter()
        .map(|x| bag.binary_search(&x).expect("scaffold set outside its bag"))
        .collect()
}

/// Fills the tables leaves-first. For every partition of bag `X` the score
/// is the sum over its blocks `B` of `v(B) - v(B \ introduced)` plus, for
/// each child, the child's entry for the induced partition of the child's
/// interface. Each interface key keeps its best score; partitions are
/// visited in code order, so ties keep the smallest witness.
pub fn dp_fill<V: Valuation + ?Sized>(
    graph: &Graph,
    v: &V,
    scaffold: &DpScaffold,
) -> Result<DpTables, SolveError> {
    let m = scaffold.len();
    let exact = v.is_integral(graph);
    let mut tables: Vec<HashMap<Vec<u32>, DpEntry>> = vec![HashMap::new(); m];
    let mut candidates = 0u64;
    for i in (0..m).rev() {
        let bag = scaffold.bags[i].as_slice();
        let k = bag.len();
        if k > MAX_ENUMERATION {
            return Err(SolveError::TooLarge {
                what: "bag size",
                n: k,
                max: MAX_ENUMERATION,
            });
        }
        let introduced = positions_in(bag, &scaffold.introduced[i])
            .into_iter()
            .fold(0u32, |acc, t| acc | 1 << t);
        let interface = positions_in(bag, &scaffold.interface[i]);
        let children: Vec<(usize, Vec<usize>)> = scaffold.children[i]
            .iter()
            .map(|&c| (c, positions_in(bag, &scaffold.interface[c])))
            .collect();
        let mut values = BagValues {
            graph,
            v,
            members: bag,
            cache: vec![None; 1 << k],
        };

        let mut table: HashMap<Vec<u32>, DpEntry> = HashMap::new();
        let mut masks = vec![0u32; k];
        let mut codes = RgsIter::new(k);
        while let Some(code) = codes.next_code() {
            candidates += 1;
            masks.iter_mut().for_each(|x| *x = 0);
            for (t, &l) in code.iter().enumerate() {
                masks[l as usize] |= 1 << t;
            }
            let mut total = 0.0;
            for &mask in masks.iter().take_while(|&&x| x != 0) {
                if mask & introduced != 0 {
                    total += values.get(mask)? - values.get(mask & !introduced)?;
                }
            }
            for (c, at) in &children {
                let key = renormalize(code, at);
                match tables[*c].get(&key) {
                    Some(e) => total += e.value,
                    None => return Err(SolveError::MissingChildEntry { bag: i, child: *c }),
                }
            }
            match table.entry(renormalize(code, &interface)) {
                Entry::Vacant(slot) => {
                    slot.insert(DpEntry {
                        value: total,
                        witness: PartitionCode::from_raw(code.to_vec()),
                    });
                }
                Entry::Occupied(mut slot) => {
                    if improves(exact, total, slot.get().value) {
                        *slot.get_mut() = DpEntry {
                            value: total,
                            witness: PartitionCode::from_raw(code.to_vec()),
                        };
                    }
                }
            }
        }
        tables[i] = table;
    }
    Ok(DpTables { tables, candidates })
}

/// Rebuilds the optimal structure root-first: each bag looks up the witness
/// for the partition its interface already has and joins the witness's
/// blocks into the running structure. Equivalent to folding
/// [`CoalitionStructure::merge_union`] over the witnesses (see
/// [`dp_reconstruct_by_merging`]) in time linear in the total bag size.
pub fn dp_reconstruct(tables: &DpTables, scaffold: &DpScaffold) -> Result<CoalitionStructure, SolveError> {
    let nodes = scaffold.nodes();
    let all = nodes.as_slice();
    let index = |x: NodeId| all.binary_search(&x).expect("bag node outside the scaffold");
    let mut dsu = RollbackDsu::new(all.len());
    for i in 0..scaffold.len() {
        let roots: Vec<u32> = scaffold.interface[i]
            .iter()
            .map(|x| dsu.find(index(x)) as u32)
            .collect();
        let identity: Vec<usize> = (0..roots.len()).collect();
        let key = renormalize(&roots, &identity);
        let entry = tables
            .tables
            .get(i)
            .and_then(|t| t.get(&key))
            .ok_or(SolveError::MissingWitness { bag: i })?;
        let witness = entry.witness.as_slice();
        let bag = scaffold.bags[i].as_slice();
        let mut anchor: Vec<Option<usize>> = vec![None; bag.len()];
        for (t, &x) in bag.iter().enumerate() {
            let p = index(x);
            match anchor[witness[t] as usize] {
                Some(q) => {
                    dsu.union(q, p);
                }
                None => anchor[witness[t] as usize] = Some(p),
            }
        }
    }
    Ok(CoalitionStructure::decode_unchecked(&dsu.labels(), all))
}

/// Reference reconstruction that literally folds `merge_union` over the
/// bag witnesses. Quadratic; intended for checking [`dp_reconstruct`].
pub fn dp_reconstruct_by_merging(
    tables: &DpTables,
    scaffold: &DpScaffold,
) -> Result<CoalitionStructure, SolveError> {
    let mut acc = CoalitionStructure::empty();
    for i in 0..scaffold.len() {
        let key = acc.restrict(&scaffold.interface[i])?.encode();
        let entry = tables
            .tables
            .get(i)
            .and_then(|t| t.get(key.as_slice()))
            .ok_or(SolveError::MissingWitness { bag: i })?;
        let part = CoalitionStructure::decode(&entry.witness, &scaffold.bags[i])?;
        acc = acc.merge_union(&part)?;
    }
    Ok(acc)
}

/// Optimal structure via dynamic programming over a tree decomposition of
/// `graph`. For IDM valuations the reconstructed structure attains the
/// root value of the program; for others the reported value is the true
/// value of the reconstructed structure and the root value is kept in
/// `stats.dp_bound`.
pub fn solve_treedp<V: Valuation + ?Sized>(
    graph: &Graph,
    v: &V,
    td: &TreeDecomposition,
    options: &TreeDpOptions,
) -> Result<SolveResult, SolveError> {
    let mut result = search(graph, graph, v, td, options)?;
    if options.split_connected {
        result.structure = split_connected(graph, &result.structure)?;
        result.value = structure_value(graph, v, &result.structure)?;
    }
    Ok(result)
}

pub(super) fn search<V: Valuation + ?Sized>(
    graph: &Graph,
    scope: &Graph,
    v: &V,
    td: &TreeDecomposition,
    options: &TreeDpOptions,
) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    if scope.is_empty() {
        return Ok(SolveResult::empty(Method::TreeDp));
    }
    let report = td.validate(scope);
    if !report.is_valid() {
        return Err(SolveError::InvalidDecomposition(report));
    }
    let width = td.width()?;
    let cap = options.max_bag.min(MAX_ENUMERATION);
    if width + 1 > cap {
        return Err(SolveError::TooLarge {
            what: "bag size",
            n: width + 1,
            max: cap,
        });
    }
    let root = td.default_root().ok_or(DecompError::EmptyDecomposition)?;
    let scaffold = build_scaffold(td, root)?;
    let tables = dp_fill(graph, v, &scaffold)?;
    let structure = dp_reconstruct(&tables, &scaffold)?;
    let bound = tables.root_value().ok_or(SolveError::MissingWitness { bag: 0 })?;
    let value = structure_value(graph, v, &structure)?;
    if v.is_idm() && !values_equal(v.is_integral(graph), value, bound) {
        return Err(SolveError::Internal(format!(
            "reconstructed structure is worth {value} but the program found {bound}"
        )));
    }
    let mut stats = SolveStats::new(Method::TreeDp);
    stats.candidates = tables.candidates;
    stats.bags = td.bag_count();
    stats.width = Some(width);
    stats.dp_bound = Some(bound);
    stats.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(SolveResult {
        structure,
        value,
        stats,
    })
}
