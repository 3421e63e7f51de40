mod common;

use std::collections::BTreeSet;

use common::*;
use gcsg::graph::{Edge, Graph, NodeId, NodeSet, Sign};
use gcsg::partition::{split_connected, structure_value, CoalitionStructure};
use gcsg::solvers::{
    dp_fill, dp_reconstruct, dp_reconstruct_by_merging, solve, solve_treedp, DecompositionStrategy,
    Method, SolveConfig, TreeDpOptions,
};
use gcsg::treedecomp::{
    build_scaffold, greedy_separator, min_fill_decompose, separator_decompose, GreedySeparator,
    SeparatorParams,
};
use gcsg::valuation::{check_separator_additivity, ValuationSpec};
use proptest::prelude::*;

/// Graphs on `1..=max_n` nodes with integer weights in [-5, 5] and signs.
fn attributed_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(NodeId, NodeId)> = (0..n as NodeId)
            .flat_map(|a| (a + 1..n as NodeId).map(move |b| (a, b)))
            .collect();
        let m = pairs.len();
        (
            Just(n),
            Just(pairs),
            proptest::collection::vec(any::<bool>(), m),
            proptest::collection::vec(-5i32..=5, m),
            proptest::collection::vec(any::<bool>(), m),
        )
            .prop_map(|(n, pairs, keep, w, s)| {
                let edges = pairs.iter().enumerate().filter(|(k, _)| keep[*k]).map(|(k, &(a, b))| {
                    Edge::new(a, b)
                        .weighted(w[k] as f64)
                        .labeled(if s[k] { Sign::Plus } else { Sign::Minus })
                });
                Graph::new(0..n as NodeId, edges).unwrap()
            })
    })
}

/// A partition of `ground` given one label per element.
fn partition_from_labels(ground: &[NodeId], labels: &[usize]) -> CoalitionStructure {
    let mut blocks: Vec<Vec<NodeId>> = vec![Vec::new(); ground.len()];
    for (&x, &l) in ground.iter().zip(labels) {
        blocks[l % ground.len()].push(x);
    }
    CoalitionStructure::from_blocks(blocks.into_iter().filter(|b| !b.is_empty())).unwrap()
}

fn subsets(s: &[NodeId]) -> impl Iterator<Item = NodeSet> + '_ {
    (0u32..1 << s.len()).map(move |m| (0..s.len()).filter(|&i| m >> i & 1 == 1).map(|i| s[i]).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dp_matches_brute_force(g in attributed_graph(7)) {
        for (v, f) in [
            (ValuationSpec::EdgeSum, ref_edge_sum as fn(&Graph, &[NodeId]) -> f64),
            (ValuationSpec::Correlation, ref_correlation),
        ] {
            let best = brute_optimum(&g, f);
            for strategy in [DecompositionStrategy::MinFill, DecompositionStrategy::GreedySeparator] {
                let config = SolveConfig { decomposition: strategy.clone(), ..SolveConfig::default() };
                let r = solve(&g, &v, &config).unwrap();
                prop_assert_eq!(r.value, best);
            }
            let r = solve(&g, &v, &SolveConfig::with_method(Method::Exhaustive)).unwrap();
            prop_assert_eq!(r.value, best);
        }
    }

    #[test]
    fn fast_and_literal_reconstruction_agree(g in attributed_graph(8)) {
        let td = min_fill_decompose(&g);
        let scaffold = build_scaffold(&td, td.default_root().unwrap()).unwrap();
        for v in [ValuationSpec::EdgeSum, ValuationSpec::Correlation, ValuationSpec::Coordination] {
            let tables = dp_fill(&g, &v, &scaffold).unwrap();
            prop_assert_eq!(
                dp_reconstruct(&tables, &scaffold).unwrap(),
                dp_reconstruct_by_merging(&tables, &scaffold).unwrap()
            );
        }
    }

    #[test]
    fn splitting_keeps_idm_values(g in attributed_graph(8), labels in proptest::collection::vec(0usize..8, 8)) {
        let p = partition_from_labels(g.node_ids(), &labels[..g.node_count()]);
        let split = split_connected(&g, &p).unwrap();
        for b in split.blocks() {
            prop_assert!(g.is_coalition_connected(b).unwrap());
        }
        for v in [ValuationSpec::EdgeSum, ValuationSpec::Correlation] {
            prop_assert_eq!(structure_value(&g, &v, &p).unwrap(), structure_value(&g, &v, &split).unwrap());
        }
        let opts = TreeDpOptions { split_connected: true, ..TreeDpOptions::default() };
        let r = solve_treedp(&g, &ValuationSpec::EdgeSum, &min_fill_decompose(&g), &opts).unwrap();
        for b in r.structure.blocks() {
            prop_assert!(g.is_coalition_connected(b).unwrap());
        }
    }

    #[test]
    fn decompositions_are_valid(g in attributed_graph(12)) {
        let td = min_fill_decompose(&g);
        prop_assert!(td.validate(&g).is_valid(), "{}", td.validate(&g));
        let sd = separator_decompose(&g, &GreedySeparator, SeparatorParams::GRID).unwrap();
        prop_assert!(sd.decomposition.validate(&g).is_valid(), "{}", sd.decomposition.validate(&g));
        let scaffold = build_scaffold(&td, td.default_root().unwrap()).unwrap();
        for i in 0..scaffold.len() {
            match scaffold.parent[i] {
                Some(p) => prop_assert_eq!(&scaffold.interface[i], &scaffold.bags[i].intersection(&scaffold.bags[p])),
                None => prop_assert!(scaffold.interface[i].is_empty()),
            }
        }
    }

    #[test]
    fn greedy_separators_separate(g in attributed_graph(12)) {
        let s = greedy_separator(&g);
        prop_assert!(s.check(&g).is_ok());
        prop_assert_eq!(s.separator.len() + s.side_a.len() + s.side_b.len(), g.node_count());
    }

    #[test]
    fn separated_sets_are_additive(g in attributed_graph(6), a in any::<u8>(), b in any::<u8>()) {
        let ids = g.node_ids();
        let pick = |m: u8| -> NodeSet { (0..ids.len()).filter(|&i| m >> i & 1 == 1).map(|i| ids[i]).collect() };
        let (a, b) = (pick(a), pick(b));
        let (only_a, only_b) = (a.difference(&b), b.difference(&a));
        let separated = !g.edges().iter().any(|e| {
            (only_a.contains(e.u) && only_b.contains(e.v)) || (only_a.contains(e.v) && only_b.contains(e.u))
        });
        for v in [ValuationSpec::EdgeSum, ValuationSpec::Correlation] {
            let r = check_separator_additivity(&g, &v, &a, &b);
            if separated {
                prop_assert!(r.unwrap());
            } else {
                prop_assert!(r.is_err());
            }
        }
    }

    #[test]
    fn merged_structures_restrict_back(
        left in proptest::collection::btree_set(0u32..8, 1..6),
        right in proptest::collection::btree_set(0u32..8, 1..6),
        labels in proptest::collection::vec(0usize..6, 16),
    ) {
        let left: Vec<NodeId> = left.into_iter().collect();
        let p = partition_from_labels(&left, &labels[..left.len()]);
        // build q to agree with p on the shared elements
        let right_set: BTreeSet<NodeId> = right.into_iter().collect();
        let common: NodeSet = left.iter().copied().filter(|x| right_set.contains(x)).collect();
        let mut blocks: Vec<Vec<NodeId>> = p.restrict(&common).unwrap().to_lists();
        let extra: Vec<NodeId> = right_set.iter().copied().filter(|x| !common.contains(*x)).collect();
        for (k, &x) in extra.iter().enumerate() {
            let slot = labels[8 + k % 8] % (blocks.len() + 1);
            if slot == blocks.len() { blocks.push(vec![x]) } else { blocks[slot].push(x) }
        }
        let q = CoalitionStructure::from_blocks(blocks).unwrap();
        let m = p.merge_union(&q).unwrap();
        prop_assert_eq!(m.ground(), &p.ground().union(q.ground()));
        for s in subsets(p.ground().as_slice()) {
            prop_assert_eq!(m.restrict(&s).unwrap(), p.restrict(&s).unwrap());
        }
        for s in subsets(q.ground().as_slice()) {
            prop_assert_eq!(m.restrict(&s).unwrap(), q.restrict(&s).unwrap());
        }
    }
}
