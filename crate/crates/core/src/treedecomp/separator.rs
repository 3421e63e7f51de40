use std::collections::VecDeque;

use super::{DecompError, TreeDecomposition};
use crate::graph::{Graph, NodeId, NodeSet};

/// A vertex separator: `separator`, `side_a` and `side_b` partition the
/// node set and no edge joins the two sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separator {
    pub separator: NodeSet,
    pub side_a: NodeSet,
    pub side_b: NodeSet,
}

impl Separator {
    /// Checks the partition and no-crossing-edge properties against `graph`.
    pub fn check(&self, graph: &Graph) -> Result<(), DecompError> {
        let total = self.separator.len() + self.side_a.len() + self.side_b.len();
        let union = self.separator.union(&self.side_a).union(&self.side_b);
        if total != graph.node_count() || union.as_slice() != graph.node_ids() {
            return Err(DecompError::InvalidSeparator(
                "separator and sides do not partition the node set".into(),
            ));
        }
        for a in self.side_a.iter() {
            if let Some(b) = graph.neighbors(a).find(|&b| self.side_b.contains(b)) {
                return Err(DecompError::InvalidSeparator(format!(
                    "edge ({}, {}) crosses between the sides",
                    a.min(b),
                    a.max(b)
                )));
            }
        }
        Ok(())
    }
}

pub trait SeparatorFinder {
    fn find(&self, graph: &Graph) -> Result<Separator, DecompError>;
}

/// Separator finder for (sub-rectangles of) a `rows x cols` grid whose node
/// at row `i`, column `j` (0-based) has id `i * cols + j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSeparator {
    pub rows: usize,
    pub cols: usize,
}

impl GridSeparator {
    pub fn new(rows: usize, cols: usize) -> Self {
        GridSeparator { rows, cols }
    }

    fn coords(&self, id: NodeId) -> (usize, usize) {
        (id as usize / self.cols, id as usize % self.cols)
    }
}

impl SeparatorFinder for GridSeparator {
    /// Cuts along the central line across the shorter dimension of the
    /// rectangle spanned by `graph`'s nodes.
    fn find(&self, graph: &Graph) -> Result<Separator, DecompError> {
        let ids = graph.node_ids();
        if ids.is_empty() {
            return Err(DecompError::NotAGrid("empty graph".into()));
        }
        if self.cols == 0 || ids.iter().any(|&x| x as usize >= self.rows * self.cols) {
            return Err(DecompError::NotAGrid(format!(
                "node ids exceed the {}x{} grid",
                self.rows, self.cols
            )));
        }
        let (mut r0, mut r1, mut c0, mut c1) = (usize::MAX, 0, usize::MAX, 0);
        for &x in ids {
            let (r, c) = self.coords(x);
            r0 = r0.min(r);
            r1 = r1.max(r);
            c0 = c0.min(c);
            c1 = c1.max(c);
        }
        let (height, width) = (r1 - r0 + 1, c1 - c0 + 1);
        if height * width != ids.len() {
            return Err(DecompError::NotAGrid(format!(
                "{} nodes do not fill their {}x{} bounding rectangle",
                ids.len(),
                height,
                width
            )));
        }
        let (mut s, mut a, mut b) = (Vec::new(), Vec::new(), Vec::new());
        if height <= width {
            let mid = c0 + width / 2;
            for &x in ids {
                let c = self.coords(x).1;
                match c.cmp(&mid) {
                    std::cmp::Ordering::Less => a.push(x),
                    std::cmp::Ordering::Equal => s.push(x),
                    std::cmp::Ordering::Greater => b.push(x),
                }
            }
        } else {
            let mid = r0 + height / 2;
            for &x in ids {
                let r = self.coords(x).0;
                match r.cmp(&mid) {
                    std::cmp::Ordering::Less => a.push(x),
                    std::cmp::Ordering::Equal => s.push(x),
                    std::cmp::Ordering::Greater => b.push(x),
                }
            }
        }
        Ok(Separator {
            separator: s.into_iter().collect(),
            side_a: a.into_iter().collect(),
            side_b: b.into_iter().collect(),
        })
    }
}

/// Central row or column separator of the canonical `rows x cols` grid.
/// Fails unless `graph` is exactly that grid.
pub fn grid_separator(graph: &Graph, rows: usize, cols: usize) -> Result<Separator, DecompError> {
    let n = rows * cols;
    if rows == 0 || cols == 0 {
        return Err(DecompError::NotAGrid("grid has no nodes".into()));
    }
    if graph.node_count() != n || graph.node_ids().iter().enumerate().any(|(k, &x)| x as usize != k) {
        return Err(DecompError::NotAGrid(format!(
            "nodes are not 0..{n} for a {rows}x{cols} grid"
        )));
    }
    let expected = rows * (cols - 1) + cols * (rows - 1);
    let finder = GridSeparator::new(rows, cols);
    let all_grid_edges = graph.edges().iter().all(|e| {
        let ((ru, cu), (rv, cv)) = (finder.coords(e.u), finder.coords(e.v));
        ru.abs_diff(rv) + cu.abs_diff(cv) == 1
    });
    if graph.edge_count() != expected || !all_grid_edges {
        return Err(DecompError::NotAGrid(format!(
            "edges do not match the {rows}x{cols} grid"
        )));
    }
    finder.find(graph)
}

/// Separator built from one BFS level, with no size guarantee on the
/// separator itself.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GreedySeparator;

impl SeparatorFinder for GreedySeparator {
    fn find(&self, graph: &Graph) -> Result<Separator, DecompError> {
        Ok(greedy_separator(graph))
    }
}

fn bfs_levels(graph: &Graph, start: usize) -> Vec<Vec<usize>> {
    let n = graph.node_count();
    let mut dist = vec![usize::MAX; n];
    let mut levels: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([start]);
    dist[start] = 0;
    while let Some(x) = queue.pop_front() {
        if levels.len() <= dist[x] {
            levels.push(Vec::new());
        }
        levels[dist[x]].push(x);
        for &(y, _) in graph.adjacency_at(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    for level in &mut levels {
        level.sort_unstable();
    }
    levels
}

/// Splits components between two sides, largest first onto the lighter side.
fn balance(mut components: Vec<NodeSet>) -> (NodeSet, NodeSet) {
    components.sort_by(|x, y| y.len().cmp(&x.len()).then(x.first().cmp(&y.first())));
    let (mut a, mut b): (Vec<NodeId>, Vec<NodeId>) = (Vec::new(), Vec::new());
    for comp in components {
        if a.len() <= b.len() {
            a.extend(comp.iter());
        } else {
            b.extend(comp.iter());
        }
    }
    let (a, b): (NodeSet, NodeSet) = (a.into_iter().collect(), b.into_iter().collect());
    // side_a holds the smallest node outside the separator
    if b.first() < a.first() && a.first().is_some() && b.first().is_some() {
        (b, a)
    } else {
        (a, b)
    }
}

/// BFS-level separator. Each level of a BFS from a pseudo-peripheral node
/// is tried as the separator, the remaining components are balanced
/// between the sides, and the smallest level whose sides stay within
/// `floor(2n/3)` wins (then `ceil(2n/3)`; ties go to the more balanced
/// split). Graphs with at most two nodes get `S = N`.
pub fn greedy_separator(graph: &Graph) -> Separator {
    let n = graph.node_count();
    if n <= 2 {
        return Separator {
            separator: graph.node_set(),
            side_a: NodeSet::new(),
            side_b: NodeSet::new(),
        };
    }
    let components = graph.connected_components();
    if components.len() > 1 {
        let (side_a, side_b) = balance(components);
        return Separator {
            separator: NodeSet::new(),
            side_a,
            side_b,
        };
    }

    let first = bfs_levels(graph, 0);
    let far = first.last().and_then(|l| l.first()).copied().unwrap_or(0);
    let levels = bfs_levels(graph, far);
    let ids = graph.node_ids();

    let mut candidates = Vec::new();
    for (depth, level) in levels.iter().enumerate() {
        let separator: NodeSet = level.iter().map(|&i| ids[i]).collect();
        let rest = graph.node_set().difference(&separator);
        let comps = graph.components_within(&rest);
        let (side_a, side_b) = balance(comps);
        let heavier = side_a.len().max(side_b.len());
        candidates.push((separator.len(), heavier, depth, Separator { separator, side_a, side_b }));
    }
    candidates.sort_by_key(|c| (c.0, c.1, c.2));
    for bound in [2 * n / 3, (2 * n).div_ceil(3)] {
        if let Some(c) = candidates.iter().find(|c| c.1 <= bound) {
            return c.3.clone();
        }
    }
    // every node but the smallest goes into the separator
    Separator {
        separator: graph.node_set().difference(&NodeSet::singleton(ids[0])),
        side_a: NodeSet::singleton(ids[0]),
        side_b: NodeSet::new(),
    }
}

/// Constants of an `f(n) = beta * n^exponent` separator theorem with side
/// bound `alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparatorParams {
    pub beta: f64,
    pub exponent: f64,
    pub alpha: f64,
}

impl SeparatorParams {
    /// Grids: a central line has at most `sqrt(n)` nodes and leaves at most
    /// `n/2` on either side.
    pub const GRID: SeparatorParams = SeparatorParams {
        beta: 1.0,
        exponent: 0.5,
        alpha: 0.5,
    };

    pub fn separator_bound(&self, n: usize) -> f64 {
        self.beta * (n as f64).powf(self.exponent)
    }

    /// Width guaranteed by the recursive construction when every level
    /// meets the separator theorem: `beta n^c / (1 - alpha^c)`.
    pub fn width_bound(&self, n: usize) -> f64 {
        self.separator_bound(n) / (1.0 - self.alpha.powf(self.exponent))
    }

    fn admits(&self, n: usize, sep: &Separator) -> bool {
        let eps = 1e-9;
        sep.separator.len() as f64 <= self.separator_bound(n) + eps
            && sep.side_a.len() as f64 <= self.alpha * n as f64 + eps
            && sep.side_b.len() as f64 <= self.alpha * n as f64 + eps
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparatorDecomposition {
    pub decomposition: TreeDecomposition,
    /// Whether every separator used met `params` for its subgraph; when it
    /// did, the width is at most `width_bound`.
    pub certified: bool,
    pub width_bound: f64,
}

/// Recursive separator decomposition: split off `S`, decompose both sides,
/// add `S` to every bag and join the two subtrees at their first bags.
pub fn separator_decompose<F: SeparatorFinder + ?Sized>(
    graph: &Graph,
    finder: &F,
    params: SeparatorParams,
) -> Result<SeparatorDecomposition, DecompError> {
    let mut certified = true;
    let decomposition = decompose(graph, finder, &params, &mut certified)?;
    Ok(SeparatorDecomposition {
        decomposition,
        certified,
        width_bound: params.width_bound(graph.node_count()),
    })
}

fn decompose<F: SeparatorFinder + ?Sized>(
    graph: &Graph,
    finder: &F,
    params: &SeparatorParams,
    certified: &mut bool,
) -> Result<TreeDecomposition, DecompError> {
    let n = graph.node_count();
    if n == 0 {
        return Ok(TreeDecomposition::default());
    }
    if n == 1 {
        return Ok(TreeDecomposition::trivial(graph));
    }
    let components = graph.connected_components();
    if components.len() > 1 {
        let mut out = TreeDecomposition::default();
        for comp in components {
            let part = decompose(&graph.induced_subgraph(&comp)?, finder, params, certified)?;
            out.attach(part, 0, 0);
        }
        return Ok(out);
    }

    let sep = finder.find(graph)?;
    sep.check(graph)?;
    if sep.side_a.len() == n || sep.side_b.len() == n {
        return Err(DecompError::InvalidSeparator(
            "separator leaves the whole graph on one side".into(),
        ));
    }
    *certified &= params.admits(n, &sep);

    let mut sides = Vec::new();
    for side in [&sep.side_a, &sep.side_b] {
        if !side.is_empty() {
            let mut td = decompose(&graph.induced_subgraph(side)?, finder, params, certified)?;
            td.bags = td.bags.iter().map(|b| b.union(&sep.separator)).collect();
            sides.push(td);
        }
    }
    let mut sides = sides.into_iter();
    match (sides.next(), sides.next()) {
        (None, _) => Ok(TreeDecomposition::new(vec![sep.separator.clone()], vec![])),
        (Some(td), None) => Ok(td),
        (Some(mut ta), Some(tb)) => {
            ta.attach(tb, 0, 0);
            Ok(ta)
        }
    }
}
