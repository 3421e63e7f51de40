//! Coalition structures: partitions of a node set into disjoint non-empty
//! blocks, with restriction, union of agreeing structures, restricted-growth
//! encodings and streaming enumeration.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::dsu::RollbackDsu;
use crate::graph::{Graph, GraphError, NodeId, NodeSet};
use crate::valuation::{Valuation, ValuationError};

/// Largest ground set [`enumerate_partitions`] accepts.
pub const MAX_ENUMERATION: usize = 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PartitionError {
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("node {0} appears in more than one block")]
    Overlap(NodeId),
    #[error("{0} is not a subset of the ground set")]
    NotSubset(NodeSet),
    #[error("structures disagree on nodes {a} and {b}: together in one, apart in the other")]
    AgreementViolated { a: NodeId, b: NodeId },
    #[error("malformed partition code: {0}")]
    MalformedCode(String),
    #[error("cannot enumerate partitions of {n} elements (cap {max})")]
    TooLarge { n: usize, max: usize },
}

/// Restricted-growth string over a ground set in ascending node order:
/// `code[0] = 0` and `code[t] <= 1 + max(code[..t])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct PartitionCode(Vec<u32>);

impl PartitionCode {
    pub fn new(code: Vec<u32>) -> Result<Self, PartitionError> {
        let mut next = 0u32;
        for (t, &c) in code.iter().enumerate() {
            if c > next {
                return Err(PartitionError::MalformedCode(format!(
                    "position {t} holds {c} but at most {next} is allowed"
                )));
            }
            if c == next {
                next += 1;
            }
        }
        Ok(PartitionCode(code))
    }

    pub(crate) fn from_raw(code: Vec<u32>) -> Self {
        PartitionCode(code)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.0.iter().max().map_or(0, |&m| m as usize + 1)
    }
}

/// Relabels `labels` at `positions` by order of first appearance.
pub(crate) fn renormalize(labels: &[u32], positions: &[usize]) -> Vec<u32> {
    let mut map: Vec<(u32, u32)> = Vec::with_capacity(positions.len());
    positions
        .iter()
        .map(|&p| {
            let l = labels[p];
            match map.iter().find(|(from, _)| *from == l) {
                Some(&(_, to)) => to,
                None => {
                    let to = map.len() as u32;
                    map.push((l, to));
                    to
                }
            }
        })
        .collect()
}

/// A partition of `ground` into disjoint non-empty blocks, kept in canonical
/// form: blocks sorted, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CoalitionStructure {
    ground: NodeSet,
    blocks: Vec<NodeSet>,
}

impl CoalitionStructure {
    pub fn empty() -> Self {
        CoalitionStructure::default()
    }

    /// Builds a structure from blocks; the ground set is their union.
    pub fn from_blocks<I, B>(blocks: I) -> Result<Self, PartitionError>
    where
        I: IntoIterator<Item = B>,
        B: Into<NodeSet>,
    {
        let mut blocks: Vec<NodeSet> = blocks.into_iter().map(Into::into).collect();
        if let Some(k) = blocks.iter().position(NodeSet::is_empty) {
            return Err(PartitionError::EmptyBlock(k));
        }
        let mut all: Vec<NodeId> = blocks.iter().flat_map(|b| b.iter()).collect();
        all.sort_unstable();
        if let Some(w) = all.windows(2).find(|w| w[0] == w[1]) {
            return Err(PartitionError::Overlap(w[0]));
        }
        blocks.sort_by_key(|b| b.first());
        Ok(CoalitionStructure {
            ground: NodeSet::from_sorted_unchecked(all),
            blocks,
        })
    }

    pub fn singletons(ground: &NodeSet) -> Self {
        CoalitionStructure {
            ground: ground.clone(),
            blocks: ground.iter().map(NodeSet::singleton).collect(),
        }
    }

    pub fn grand(ground: &NodeSet) -> Self {
        CoalitionStructure {
            ground: ground.clone(),
            blocks: if ground.is_empty() { vec![] } else { vec![ground.clone()] },
        }
    }

    pub fn ground(&self) -> &NodeSet {
        &self.ground
    }

    pub fn blocks(&self) -> &[NodeSet] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block holding `x`.
    pub fn block_of(&self, x: NodeId) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(x))
    }

    /// Blocks as plain sorted lists, for serialization.
    pub fn to_lists(&self) -> Vec<Vec<NodeId>> {
        self.blocks.iter().map(|b| b.as_slice().to_vec()).collect()
    }

    pub fn encode(&self) -> PartitionCode {
        let label = self.labels();
        PartitionCode(label)
    }

    // block label of each ground element in ascending order; canonical block
    // order makes this a restricted-growth string directly
    fn labels(&self) -> Vec<u32> {
        self.ground
            .iter()
            .map(|x| {
                self.blocks
                    .iter()
                    .position(|b| b.contains(x))
                    .expect("ground element outside every block") as u32
            })
            .collect()
    }

    pub fn decode(code: &PartitionCode, ground: &NodeSet) -> Result<Self, PartitionError> {
        if code.len() != ground.len() {
            return Err(PartitionError::MalformedCode(format!(
                "code has length {} but the ground set has {} elements",
                code.len(),
                ground.len()
            )));
        }
        PartitionCode::new(code.0.clone())?;
        Ok(Self::decode_unchecked(code.as_slice(), ground.as_slice()))
    }

    pub(crate) fn decode_unchecked(code: &[u32], ground: &[NodeId]) -> Self {
        let mut blocks: Vec<Vec<NodeId>> = vec![Vec::new(); code.iter().max().map_or(0, |&m| m as usize + 1)];
        for (&c, &x) in code.iter().zip(ground) {
            blocks[c as usize].push(x);
        }
        CoalitionStructure {
            ground: NodeSet::from_sorted_unchecked(ground.to_vec()),
            blocks: blocks.into_iter().map(NodeSet::from_sorted_unchecked).collect(),
        }
    }

    /// The structure induced on `s`: `{C & s : C in self}` without empty sets.
    pub fn restrict(&self, s: &NodeSet) -> Result<Self, PartitionError> {
        if !s.is_subset(&self.ground) {
            return Err(PartitionError::NotSubset(s.clone()));
        }
        let mut blocks: Vec<NodeSet> = self
            .blocks
            .iter()
            .map(|b| b.intersection(s))
            .filter(|b| !b.is_empty())
            .collect();
        blocks.sort_by_key(|b| b.first());
        Ok(CoalitionStructure {
            ground: s.clone(),
            blocks,
        })
    }

    /// Union of two structures that agree on their common ground: blocks of
    /// each lying outside the other's ground, plus `A | B` for every
    /// intersecting pair. The result is a partition of the union of grounds
    /// whose restriction to either ground gives back the operand.
    pub fn merge_union(&self, other: &Self) -> Result<Self, PartitionError> {
        let common = self.ground.intersection(&other.ground);
        let left = self.restrict(&common)?;
        let right = other.restrict(&common)?;
        if left != right {
            return Err(disagreement(&left, &right, &common));
        }

        let only_left = self.ground.difference(&other.ground);
        let only_right = other.ground.difference(&self.ground);
        let mut raw: Vec<NodeSet> = Vec::new();
        raw.extend(self.blocks.iter().filter(|a| a.is_subset(&only_left)).cloned());
        raw.extend(other.blocks.iter().filter(|b| b.is_subset(&only_right)).cloned());
        for a in &self.blocks {
            for b in &other.blocks {
                if !a.is_disjoint(b) {
                    raw.push(a.union(b));
                }
            }
        }

        // chain overlapping unions; under agreement none overlap
        let ground = self.ground.union(&other.ground);
        let pos = |x: NodeId| ground.as_slice().binary_search(&x).unwrap();
        let mut dsu = RollbackDsu::new(ground.len());
        for set in &raw {
            if let Some(first) = set.first() {
                for x in set.iter().skip(1) {
                    dsu.union(pos(first), pos(x));
                }
            }
        }
        let merged = Self::decode_unchecked(&dsu.labels(), ground.as_slice());
        assert_eq!(
            merged.block_count(),
            raw.len(),
            "pairwise unions overlapped although the operands agree"
        );
        Ok(merged)
    }
}

fn disagreement(
    left: &CoalitionStructure,
    right: &CoalitionStructure,
    common: &NodeSet,
) -> PartitionError {
    let (l, r) = (left.labels(), right.labels());
    let nodes = common.as_slice();
    for a in 0..nodes.len() {
        for b in a + 1..nodes.len() {
            if (l[a] == l[b]) != (r[a] == r[b]) {
                return PartitionError::AgreementViolated {
                    a: nodes[a],
                    b: nodes[b],
                };
            }
        }
    }
    unreachable!("restrictions differ but every pair agrees")
}

impl fmt::Display for CoalitionStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("}")
    }
}

/// Streams every restricted-growth string of a given length in
/// lexicographic order, reusing one buffer.
#[derive(Debug, Clone)]
pub struct RgsIter {
    code: Vec<u32>,
    // prefix maxima: max_prefix[t] = max(code[..=t])
    max_prefix: Vec<u32>,
    started: bool,
    done: bool,
}

impl RgsIter {
    pub fn new(len: usize) -> Self {
        RgsIter {
            code: vec![0; len],
            max_prefix: vec![0; len],
            started: false,
            done: false,
        }
    }

    /// Advances to the next code; `None` once exhausted.
    pub fn next_code(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.code);
        }
        let n = self.code.len();
        for t in (1..n).rev() {
            if self.code[t] <= self.max_prefix[t - 1] {
                self.code[t] += 1;
                self.max_prefix[t] = self.max_prefix[t - 1].max(self.code[t]);
                for s in t + 1..n {
                    self.code[s] = 0;
                    self.max_prefix[s] = self.max_prefix[t];
                }
                return Some(&self.code);
            }
        }
        self.done = true;
        None
    }
}

/// Iterator over all partitions of a set, in lexicographic code order.
#[derive(Debug, Clone)]
pub struct Partitions {
    ground: NodeSet,
    codes: RgsIter,
}

impl Iterator for Partitions {
    type Item = CoalitionStructure;

    fn next(&mut self) -> Option<Self::Item> {
        let ground = self.ground.as_slice();
        self.codes
            .next_code()
            .map(|code| CoalitionStructure::decode_unchecked(code, ground))
    }
}

pub fn enumerate_partitions(s: &NodeSet) -> Result<Partitions, PartitionError> {
    if s.len() > MAX_ENUMERATION {
        return Err(PartitionError::TooLarge {
            n: s.len(),
            max: MAX_ENUMERATION,
        });
    }
    Ok(Partitions {
        ground: s.clone(),
        codes: RgsIter::new(s.len()),
    })
}

/// Number of partitions of an `n`-element set.
pub fn bell_number(n: usize) -> u128 {
    // Bell triangle
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

/// Sum of block values.
pub fn structure_value<V: Valuation + ?Sized>(
    graph: &Graph,
    v: &V,
    p: &CoalitionStructure,
) -> Result<f64, ValuationError> {
    p.blocks().iter().try_fold(0.0, |acc, b| Ok(acc + v.value(graph, b)?))
}

/// Replaces each block by the connected components of the subgraph it induces.
pub fn split_connected(graph: &Graph, p: &CoalitionStructure) -> Result<CoalitionStructure, GraphError> {
    if let Some(x) = p.ground().iter().find(|&x| !graph.contains_node(x)) {
        return Err(GraphError::UnknownNode(x));
    }
    let mut blocks: Vec<NodeSet> = p
        .blocks()
        .iter()
        .flat_map(|b| graph.components_within(b))
        .collect();
    blocks.sort_by_key(|b| b.first());
    Ok(CoalitionStructure {
        ground: p.ground().clone(),
        blocks,
    })
}
