//! Maximum linear forests of trees by dynamic programming over subtrees,
//! Hamiltonian completion of trees, and the leaf-exchange operation.
//!
//! For a vertex `v` with children `c₁..c_t`, let `f(c)` be the size of a
//! maximum linear forest of the subtree at `c` and `f'(c)` the largest one in
//! which `c` has forest-degree at most one. A maximum forest at `v` attaches
//! `v` to zero, one or two children: attaching `c` trades `f(c)` for
//! `f'(c) + 1`. The gain `f'(c) + 1 − f(c)` is always 0 or 1, so only the two
//! children with the largest gain matter.

use thiserror::Error;

use crate::graph::{normalize, Edge, Graph, GraphError};
use crate::tree::{require_tree, root_at_center, tree_stats, RootedTree, TreeError, TreeStats};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("operation needs at least {needed} vertices, got {n}")]
    TooSmall { n: usize, needed: usize },
    #[error("vertex {0} is not a leaf")]
    NotALeaf(usize),
    #[error("leaf exchange needs two distinct leaves, got {0} twice")]
    SameLeaf(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearForestViolation {
    #[error(transparent)]
    NotAnEdge(#[from] GraphError),
    #[error("edge {0}-{1} listed twice")]
    Repeated(usize, usize),
    #[error("vertex {0} has forest-degree above two")]
    DegreeTooHigh(usize),
    #[error("forest contains a cycle through edge {0}-{1}")]
    Cycle(usize, usize),
}

/// An edge subset whose components are paths.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearForest {
    edges: Vec<Edge>,
}

impl LinearForest {
    /// Wraps an edge list after sorting; call [`LinearForest::validate`] to
    /// check it against a host graph.
    pub fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().map(|(u, v)| normalize(u, v)).collect();
        edges.sort_unstable();
        LinearForest { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Forest-degree of `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Checks the edges belong to `host`, no vertex has forest-degree above
    /// two, and there is no cycle.
    pub fn validate(&self, host: &Graph) -> Result<(), LinearForestViolation> {
        let mut degree = vec![0u8; host.n()];
        let mut uf = crate::oracle::UnionFind::new(host.n());
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if !host.has_edge(u, v) {
                return Err(GraphError::MissingEdge(u, v).into());
            }
            if i > 0 && self.edges[i - 1] == (u, v) {
                return Err(LinearForestViolation::Repeated(u, v));
            }
            for x in [u, v] {
                degree[x] += 1;
                if degree[x] > 2 {
                    return Err(LinearForestViolation::DegreeTooHigh(x));
                }
            }
            if !uf.union(u, v) {
                return Err(LinearForestViolation::Cycle(u, v));
            }
        }
        Ok(())
    }
}

/// Result of the DP at the root: a maximum linear forest and a largest one in
/// which the root has forest-degree at most one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpRecord {
    pub best: LinearForest,
    pub best_constrained: LinearForest,
}

/// Per-vertex DP table: subtree values and the children each optimum
/// attaches to the vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpTable {
    pub f: Vec<usize>,
    pub f_constrained: Vec<usize>,
    attach: Vec<[Option<usize>; 2]>,
    attach_constrained: Vec<Option<usize>>,
}

impl DpTable {
    /// Children joined to `v` in the maximum forest of its subtree.
    pub fn attached(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.attach[v].iter().flatten().copied()
    }

    /// Child joined to `v` in the constrained forest of its subtree.
    pub fn attached_constrained(&self, v: usize) -> Option<usize> {
        self.attach_constrained[v]
    }
}

/// Runs the DP in `O(n)` (plus sorting of child lists already done by the
/// rooted tree). Ties prefer attaching two children over one over none, and
/// among children of equal gain the smaller id.
pub fn dp_table(t: &RootedTree) -> DpTable {
    let n = t.n();
    let mut f = vec![0; n];
    let mut fc = vec![0; n];
    let mut attach = vec![[None, None]; n];
    let mut attach_c = vec![None; n];
    for &v in t.bfs_order().iter().rev() {
        let children = t.children(v);
        if children.is_empty() {
            continue;
        }
        let base: usize = children.iter().map(|&c| f[c]).sum();
        // Top two children by gain, smaller id first on ties; children are
        // visited in increasing id order so strict comparisons suffice.
        let mut top: [Option<(usize, usize)>; 2] = [None, None];
        for &c in children {
            let gain = fc[c] + 1 - f[c];
            match top {
                [None, _] => top[0] = Some((c, gain)),
                [Some((_, g0)), _] if gain > g0 => {
                    top[1] = top[0];
                    top[0] = Some((c, gain));
                }
                [Some(_), None] => top[1] = Some((c, gain)),
                [Some(_), Some((_, g1))] if gain > g1 => top[1] = Some((c, gain)),
                _ => {}
            }
        }
        let (c0, g0) = top[0].expect("non-empty child list");
        fc[v] = base + g0;
        attach_c[v] = Some(c0);
        match top[1] {
            Some((c1, g1)) => {
                f[v] = base + g0 + g1;
                attach[v] = [Some(c0), Some(c1)];
            }
            None => {
                f[v] = base + g0;
                attach[v] = [Some(c0), None];
            }
        }
    }
    DpTable { f, f_constrained: fc, attach, attach_constrained: attach_c }
}

/// Reference DP that evaluates the no-attach forest, every single attachment
/// and every pair of attachments explicitly, in `O(n·k²)`. Kept to check the
/// top-two shortcut of [`dp_table`].
pub fn dp_table_all_pairs(t: &RootedTree) -> DpTable {
    let n = t.n();
    let mut f = vec![0; n];
    let mut fc = vec![0; n];
    let mut attach = vec![[None, None]; n];
    let mut attach_c = vec![None; n];
    for &v in t.bfs_order().iter().rev() {
        let ch = t.children(v);
        if ch.is_empty() {
            continue;
        }
        let total: usize = ch.iter().map(|&c| f[c]).sum();
        let p = total;
        // (value, rank) with rank 2 for pairs, 1 for singles, 0 for none.
        let mut best = (p, 0, [None, None]);
        let mut best_c = (p, 0, None);
        for (i, &ci) in ch.iter().enumerate() {
            let q = total - f[ci] + fc[ci] + 1;
            if (q, 1) > (best.0, best.1) {
                best = (q, 1, [Some(ci), None]);
            }
            if (q, 1) > (best_c.0, best_c.1) {
                best_c = (q, 1, Some(ci));
            }
            for &cj in &ch[i + 1..] {
                let r = total - f[ci] - f[cj] + fc[ci] + fc[cj] + 2;
                if (r, 2) > (best.0, best.1) {
                    best = (r, 2, [Some(ci), Some(cj)]);
                }
            }
        }
        f[v] = best.0;
        attach[v] = best.2;
        fc[v] = best_c.0;
        attach_c[v] = best_c.2;
    }
    DpTable { f, f_constrained: fc, attach, attach_constrained: attach_c }
}

impl DpTable {
    /// Rebuilds the forest realizing `f[root]` (or `f'[root]` when
    /// `constrained`).
    pub fn reconstruct(&self, t: &RootedTree, constrained: bool) -> LinearForest {
        let mut edges = Vec::with_capacity(self.f[t.root()]);
        let mut stack = vec![(t.root(), constrained)];
        while let Some((v, c)) = stack.pop() {
            let joined: [Option<usize>; 2] = if c {
                [self.attach_constrained[v], None]
            } else {
                self.attach[v]
            };
            for &child in t.children(v) {
                let linked = joined.contains(&Some(child));
                if linked {
                    edges.push(normalize(v, child));
                }
                stack.push((child, linked));
            }
        }
        LinearForest::from_edges(edges)
    }
}

/// Maximum linear forest of a rooted tree and the root-degree-constrained
/// variant.
pub fn max_linear_forest(t: &RootedTree) -> DpRecord {
    let table = dp_table(t);
    DpRecord {
        best: table.reconstruct(t, false),
        best_constrained: table.reconstruct(t, true),
    }
}

/// l(T): edges in a maximum linear forest of a tree.
pub fn l_of_tree(g: &Graph) -> Result<usize, ForestError> {
    let t = root_at_center(g.clone())?;
    Ok(dp_table(&t).f[t.root()])
}

/// hc(T) = n − l(T); trees on at least two vertices are never Hamiltonian.
pub fn hc_of_tree(g: &Graph) -> Result<usize, ForestError> {
    require_tree(g)?;
    if g.n() < 2 {
        return Err(ForestError::TooSmall { n: g.n(), needed: 2 });
    }
    Ok(g.n() - l_of_tree(g)?)
}

/// ⌈(out(T) + Σ ex(v)) / 2⌉.
pub fn hc_lower_bound(stats: &TreeStats) -> usize {
    (stats.out + stats.ex_sum()).div_ceil(2)
}

/// Edges added to a tree to make it Hamiltonian, with the resulting cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    pub added_edges: Vec<Edge>,
    /// Hamiltonian cycle of the completed graph as a vertex sequence.
    pub cycle: Vec<usize>,
}

/// Grows a Hamiltonian cycle leaf by leaf, adding `out(T) − 1` edges.
///
/// Starts by joining the two smallest leaves, closing the tree path between
/// them into a cycle. Then, while some leaf `v` is off the cycle (smallest id
/// first), walks from `v` to the nearest cycle vertex `u`, takes the cycle
/// neighbor `w` of `u` with smaller id, and replaces the cycle edge `u–w` by
/// the tree path `u … v` followed by a new edge `v–w`.
pub fn hc_construct(g: &Graph) -> Result<Completion, ForestError> {
    require_tree(g)?;
    let n = g.n();
    if n < 3 {
        return Err(ForestError::TooSmall { n, needed: 3 });
    }
    let leaves: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 1).collect();
    let (a, b) = (leaves[0], leaves[1]);
    // Rooted at a cycle vertex, the parent chain of any vertex runs into the
    // cycle, whose vertex set stays a subtree containing the root.
    let t = RootedTree::new(g.clone(), a)?;

    let mut cycle = t.path(a, b);
    let mut on_cycle = vec![false; n];
    for &v in &cycle {
        on_cycle[v] = true;
    }
    let mut added = vec![normalize(a, b)];

    for &v in &leaves[2..] {
        if on_cycle[v] {
            continue;
        }
        let mut branch = vec![v];
        let mut x = v;
        let u = loop {
            let up = t.parent(x).expect("root lies on the cycle");
            if on_cycle[up] {
                break up;
            }
            branch.push(up);
            x = up;
        };
        let pos = cycle.iter().position(|&y| y == u).unwrap();
        let len = cycle.len();
        let (prev, next) = (cycle[(pos + len - 1) % len], cycle[(pos + 1) % len]);
        let w = prev.min(next);
        // Insert the branch between u and w, ending at v next to w.
        let insert_at = if w == next { pos + 1 } else { pos };
        let segment: Vec<usize> = if w == next {
            branch.iter().rev().copied().collect()
        } else {
            branch.clone()
        };
        cycle.splice(insert_at..insert_at, segment);
        for &y in &branch {
            on_cycle[y] = true;
        }
        added.push(normalize(v, w));
    }
    added.sort_unstable();
    Ok(Completion { added_edges: added, cycle })
}

/// T[u_i → u_j]: detaches leaf `u_i` from its neighbor and hangs it on leaf
/// `u_j`.
pub fn leaf_exchange(g: &Graph, u_i: usize, u_j: usize) -> Result<Graph, ForestError> {
    require_tree(g)?;
    for u in [u_i, u_j] {
        if g.degree(u) != 1 {
            return Err(ForestError::NotALeaf(u));
        }
    }
    if u_i == u_j {
        return Err(ForestError::SameLeaf(u_i));
    }
    let w_i = g.neighbors(u_i)[0];
    let edges = g
        .edges()
        .iter()
        .copied()
        .filter(|&e| e != normalize(w_i, u_i))
        .chain(std::iter::once(normalize(u_j, u_i)));
    Ok(Graph::new(g.n(), edges).expect("leaf exchange keeps the graph simple"))
}

/// Convenience: stats of a tree rooted at its center.
pub fn stats_of_tree(g: &Graph) -> Result<TreeStats, ForestError> {
    Ok(tree_stats(&root_at_center(g.clone())?))
}
