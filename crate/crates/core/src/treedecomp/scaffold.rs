use std::collections::{HashSet, VecDeque};

use super::{DecompError, TreeDecomposition};
use crate::graph::{NodeId, NodeSet};

/// Bags renumbered in BFS order from a root, with the per-bag sets the
/// dynamic program works on. Every vector is indexed by BFS position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpScaffold {
    /// Original bag index at each position.
    pub order: Vec<usize>,
    pub bags: Vec<NodeSet>,
    /// Nodes seen for the first time at this bag.
    pub introduced: Vec<NodeSet>,
    /// Nodes shared with earlier bags; equals the intersection with the parent bag.
    pub interface: Vec<NodeSet>,
    /// Later neighbours in the tree, as positions.
    pub children: Vec<Vec<usize>>,
    pub parent: Vec<Option<usize>>,
}

impl DpScaffold {
    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// Every node covered by the decomposition, ascending.
    pub fn nodes(&self) -> NodeSet {
        self.introduced.iter().flat_map(|s| s.iter()).collect()
    }
}

/// Orders bags by BFS distance from `root` (ties by original index) and
/// derives the introduced/interface/children sets.
pub fn build_scaffold(td: &TreeDecomposition, root: usize) -> Result<DpScaffold, DecompError> {
    let m = td.bag_count();
    if root >= m {
        return Err(DecompError::InvalidDecomposition(format!(
            "root bag {root} does not exist ({m} bags)"
        )));
    }
    if let Some(reason) = td.tree_defect() {
        return Err(DecompError::InvalidDecomposition(reason));
    }
    let adj = td.neighbor_lists();
    let mut position = vec![usize::MAX; m];
    let mut order = Vec::with_capacity(m);
    let mut parent = Vec::with_capacity(m);
    let mut queue = VecDeque::from([(root, None)]);
    position[root] = 0;
    while let Some((b, p)) = queue.pop_front() {
        order.push(b);
        parent.push(p);
        let here = position[b];
        for &c in &adj[b] {
            if position[c] == usize::MAX {
                position[c] = order.len() + queue.len();
                queue.push_back((c, Some(here)));
            }
        }
    }

    let bags: Vec<NodeSet> = order.iter().map(|&b| td.bags()[b].clone()).collect();
    let mut seen: HashSet<NodeId> = HashSet::new();
    let mut introduced = Vec::with_capacity(m);
    let mut interface = Vec::with_capacity(m);
    for (i, bag) in bags.iter().enumerate() {
        let (old, new): (Vec<NodeId>, Vec<NodeId>) = bag.iter().partition(|x| seen.contains(x));
        seen.extend(new.iter().copied());
        let old = NodeSet::from_sorted_unchecked(old);
        if let Some(p) = parent[i] {
            if old != bag.intersection(&bags[p]) {
                return Err(DecompError::InvalidDecomposition(format!(
                    "bag {} shares nodes with earlier bags outside its parent {}",
                    order[i], order[p]
                )));
            }
        }
        introduced.push(NodeSet::from_sorted_unchecked(new));
        interface.push(old);
    }
    let mut children = vec![Vec::new(); m];
    for (i, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            children[p].push(i);
        }
    }
    Ok(DpScaffold {
        order,
        bags,
        introduced,
        interface,
        children,
        parent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_of_bags() {
        let td = TreeDecomposition::new(
            vec![NodeSet::from([0, 1]), NodeSet::from([1, 2]), NodeSet::from([2, 3])],
            vec![(0, 1), (1, 2)],
        );
        let s = build_scaffold(&td, 0).unwrap();
        assert_eq!(
            s.introduced,
            vec![NodeSet::from([0, 1]), NodeSet::from([2]), NodeSet::from([3])]
        );
        assert_eq!(
            s.interface,
            vec![NodeSet::new(), NodeSet::from([1]), NodeSet::from([2])]
        );
        assert_eq!(s.children, vec![vec![1], vec![2], vec![]]);
        assert_eq!(s.parent, vec![None, Some(0), Some(1)]);
    }

    #[test]
    fn single_bag() {
        let td = TreeDecomposition::new(vec![NodeSet::from([4, 5])], vec![]);
        let s = build_scaffold(&td, 0).unwrap();
        assert_eq!(s.introduced, vec![NodeSet::from([4, 5])]);
        assert_eq!(s.interface, vec![NodeSet::new()]);
        assert_eq!(s.children, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn star_of_bags() {
        let td = TreeDecomposition::new(
            vec![
                NodeSet::from([0, 1]),
                NodeSet::from([0, 2]),
                NodeSet::from([0, 3]),
                NodeSet::from([0, 4]),
            ],
            vec![(0, 1), (0, 2), (0, 3)],
        );
        let s = build_scaffold(&td, 0).unwrap();
        assert_eq!(s.children[0], vec![1, 2, 3]);
        assert!(s.children[1..].iter().all(Vec::is_empty));
    }

    #[test]
    fn bfs_order_from_inner_root() {
        // 0 - 1 - 2 - 3 rooted at 2: order 2, 1, 3, 0
        let td = TreeDecomposition::new(
            vec![NodeSet::from([0]), NodeSet::from([0, 1]), NodeSet::from([1, 2]), NodeSet::from([2])],
            vec![(0, 1), (1, 2), (2, 3)],
        );
        let s = build_scaffold(&td, 2).unwrap();
        assert_eq!(s.order, vec![2, 1, 3, 0]);
        assert_eq!(s.parent, vec![None, Some(0), Some(0), Some(1)]);
        assert_eq!(s.interface[3], NodeSet::from([0]));
    }

    #[test]
    fn rejects_non_tree() {
        let td = TreeDecomposition::new(vec![NodeSet::from([0]), NodeSet::from([1])], vec![]);
        assert!(matches!(
            build_scaffold(&td, 0),
            Err(DecompError::InvalidDecomposition(_))
        ));
        assert!(build_scaffold(&td, 5).is_err());
    }
}
