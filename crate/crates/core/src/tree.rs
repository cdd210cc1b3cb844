//! Rooted trees and the per-tree statistics used by the bounds.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("graph on {n} vertices with {m} edges is not a tree")]
    NotATree { n: usize, m: usize },
    #[error("root {root} out of range for a tree on {n} vertices")]
    RootOutOfRange { root: usize, n: usize },
}

pub(crate) fn require_tree(g: &Graph) -> Result<(), TreeError> {
    if g.is_tree() {
        Ok(())
    } else {
        Err(TreeError::NotATree { n: g.n(), m: g.m() })
    }
}

/// A tree with a designated root and its BFS structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    graph: Graph,
    root: usize,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    children: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl RootedTree {
    pub fn new(graph: Graph, root: usize) -> Result<Self, TreeError> {
        require_tree(&graph)?;
        if root >= graph.n() {
            return Err(TreeError::RootOutOfRange { root, n: graph.n() });
        }
        let n = graph.n();
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut children = vec![Vec::new(); n];
        let mut order = Vec::with_capacity(n);
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in graph.neighbors(v) {
                if Some(w) != parent[v] {
                    parent[w] = Some(v);
                    depth[w] = depth[v] + 1;
                    children[v].push(w);
                    order.push(w);
                }
            }
        }
        Ok(RootedTree { graph, root, parent, depth, children, order })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn depths(&self) -> &[usize] {
        &self.depth
    }

    /// Children in increasing id order.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Vertices in BFS order from the root; every parent precedes its children.
    pub fn bfs_order(&self) -> &[usize] {
        &self.order
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Vertices on the tree path from `a` to `b`, inclusive.
    pub fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let (mut x, mut y) = (a, b);
        let mut front = Vec::new();
        let mut back = Vec::new();
        while self.depth[x] > self.depth[y] {
            front.push(x);
            x = self.parent[x].unwrap();
        }
        while self.depth[y] > self.depth[x] {
            back.push(y);
            y = self.parent[y].unwrap();
        }
        while x != y {
            front.push(x);
            back.push(y);
            x = self.parent[x].unwrap();
            y = self.parent[y].unwrap();
        }
        front.push(x);
        front.extend(back.into_iter().rev());
        front
    }
}

/// Center vertices of a tree (one or two), found by repeated leaf stripping.
pub fn center(g: &Graph) -> Result<Vec<usize>, TreeError> {
    require_tree(g)?;
    let n = g.n();
    if n <= 2 {
        return Ok((0..n).collect());
    }
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in g.neighbors(v) {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    Ok(layer)
}

/// Roots a tree at its center, taking the smaller id when there are two.
pub fn root_at_center(g: Graph) -> Result<RootedTree, TreeError> {
    let root = center(&g)?[0];
    RootedTree::new(g, root)
}

pub(crate) fn bfs_distances(g: &Graph, source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[source] = 0;
    let mut queue = std::collections::VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Diameter of a tree, by two BFS sweeps.
pub fn diameter(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    let first = bfs_distances(g, 0);
    let far = argmax(&first);
    let second = bfs_distances(g, far);
    second[argmax(&second)]
}

fn argmax(values: &[usize]) -> usize {
    let mut best = 0;
    for (i, &x) in values.iter().enumerate() {
        if x > values[best] {
            best = i;
        }
    }
    best
}

/// Structural statistics of a rooted tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeStats {
    pub diameter: usize,
    pub radius: usize,
    pub center: Vec<usize>,
    /// Number of leaves (degree-one vertices).
    pub out: usize,
    /// Excess of each vertex; zero for leaves.
    pub ex: Vec<usize>,
    /// Degree-two vertices among the root's children.
    pub s: usize,
}

impl TreeStats {
    pub fn ex_sum(&self) -> usize {
        self.ex.iter().sum()
    }
}

pub fn tree_stats(t: &RootedTree) -> TreeStats {
    let g = t.graph();
    let center = center(g).expect("RootedTree holds a tree");
    let radius = bfs_distances(g, center[0]).into_iter().max().unwrap_or(0);
    let diameter = diameter(g);
    let out = (0..g.n()).filter(|&v| g.degree(v) == 1).count();
    let ex = (0..g.n())
        .map(|v| {
            if g.degree(v) < 2 {
                return 0;
            }
            let low = g.neighbors(v).iter().filter(|&&w| g.degree(w) < 3).count();
            low.saturating_sub(2)
        })
        .collect();
    let s = t.children(t.root()).iter().filter(|&&c| g.degree(c) == 2).count();
    TreeStats { diameter, radius, center, out, ex, s }
}
