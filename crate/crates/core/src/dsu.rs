/// Union-find over `0..n` with union by size and no path compression, so
/// unions can be undone in LIFO order.
#[derive(Debug, Clone)]
pub(crate) struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    // (absorbed root, surviving root) per successful union
    history: Vec<(usize, usize)>,
}

impl RollbackDsu {
    pub fn new(n: usize) -> Self {
        RollbackDsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Returns false (and records nothing) when `a` and `b` are already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push((rb, ra));
        true
    }

    pub fn rollback(&mut self) {
        let (child, root) = self.history.pop().expect("rollback without a union");
        self.parent[child] = child;
        self.size[root] -= self.size[child];
    }

    /// Restricted-growth labels of the classes, numbered by first appearance.
    pub fn labels(&self) -> Vec<u32> {
        let n = self.parent.len();
        let mut label_of_root = vec![u32::MAX; n];
        let mut next = 0;
        (0..n)
            .map(|x| {
                let r = self.find(x);
                if label_of_root[r] == u32::MAX {
                    label_of_root[r] = next;
                    next += 1;
                }
                label_of_root[r]
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_and_rollback() {
        let mut d = RollbackDsu::new(4);
        assert!(d.union(0, 2));
        assert!(d.union(2, 3));
        assert!(!d.union(0, 3));
        assert_eq!(d.labels(), vec![0, 1, 0, 0]);
        d.rollback();
        assert_eq!(d.labels(), vec![0, 1, 0, 2]);
        d.rollback();
        assert_eq!(d.labels(), vec![0, 1, 2, 3]);
    }
}
