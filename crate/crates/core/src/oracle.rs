//! Exhaustive ground truth on small graphs.
//!
//! Every search here is a plain scan: subsets are tried from the largest size
//! down, each size in lexicographic order of the sorted member list, and the
//! first feasible subset wins. The returned witness is therefore the
//! lexicographically smallest maximizer.

use thiserror::Error;

use crate::graph::{Edge, Graph};

/// Hard limits on oracle sizes; masks are `u64` and runtime is exponential.
pub const MAX_VERTEX_CAP: usize = 30;
pub const MAX_EDGE_CAP: usize = 30;
pub const MAX_HC_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{quantity}: size {size} exceeds the oracle cap {cap}")]
    CapExceeded { quantity: &'static str, size: usize, cap: usize },
    #[error("{quantity} needs at least {needed} vertices, got {n}")]
    TooSmall { quantity: &'static str, n: usize, needed: usize },
}

/// Disjoint-set forest with union by size and path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Joins the sets of `a` and `b`; false if they were already joined.
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
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Vertices(Vec<usize>),
    Edges(Vec<Edge>),
    /// A path or cycle as a vertex sequence.
    Walk(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub value: usize,
    pub witness: Witness,
}

/// Size limits for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    /// Vertex-subset scans and path/cycle searches.
    pub vertices: usize,
    /// Edge-subset scans.
    pub edges: usize,
    /// Hamiltonian completion search.
    pub hc_vertices: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps { vertices: 20, edges: 24, hc_vertices: 9 }
    }
}

impl OracleCaps {
    /// Clamps every cap to the compiled limits.
    pub fn clamped(self) -> Self {
        OracleCaps {
            vertices: self.vertices.min(MAX_VERTEX_CAP),
            edges: self.edges.min(MAX_EDGE_CAP),
            hc_vertices: self.hc_vertices.min(MAX_HC_CAP),
        }
    }
}

fn check(quantity: &'static str, size: usize, cap: usize) -> Result<(), OracleError> {
    if size > cap {
        Err(OracleError::CapExceeded { quantity, size, cap })
    } else {
        Ok(())
    }
}

fn members(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

/// Calls `visit` on every `k`-subset of `0..n` as a bitmask, in lexicographic
/// order of the sorted members, until it returns true. Returns the accepted
/// mask.
fn first_subset(n: usize, k: usize, mut visit: impl FnMut(u64) -> bool) -> Option<u64> {
    if k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
        if visit(mask) {
            return Some(mask);
        }
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Largest-first scan; returns the size and mask of the first feasible subset.
fn largest_feasible(n: usize, feasible: impl Fn(u64) -> bool) -> (usize, u64) {
    for k in (0..=n).rev() {
        if let Some(mask) = first_subset(n, k, &feasible) {
            return (k, mask);
        }
    }
    (0, 0)
}

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

fn induced_is_acyclic(g: &Graph, mask: u64) -> bool {
    let mut uf = UnionFind::new(g.n());
    g.edges()
        .iter()
        .filter(|&&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1)
        .all(|&(u, v)| uf.union(u, v))
}

fn induced_is_connected(adj: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return true;
    }
    let start = 1u64 << mask.trailing_zeros();
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & mask & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == mask
}

/// Configured oracle. The free functions of this module use the default caps.
#[derive(Debug, Clone, Copy, Default)]
pub struct Oracle {
    pub caps: OracleCaps,
}

impl Oracle {
    pub fn new(caps: OracleCaps) -> Self {
        Oracle { caps: caps.clamped() }
    }

    /// f(G): largest vertex set inducing a forest.
    pub fn max_induced_forest(&self, g: &Graph) -> Result<OracleResult, OracleError> {
        check("max induced forest", g.n(), self.caps.vertices)?;
        let (value, mask) = largest_feasible(g.n(), |s| induced_is_acyclic(g, s));
        Ok(OracleResult { value, witness: Witness::Vertices(members(mask)) })
    }

    /// ∇(G) = n − f(G); the witness is the complement of the forest witness.
    pub fn decycling_number(&self, g: &Graph) -> Result<OracleResult, OracleError> {
        let forest = self.max_induced_forest(g)?;
        let Witness::Vertices(keep) = forest.witness else { unreachable!() };
        let removed = (0..g.n()).filter(|v| keep.binary_search(v).is_err()).collect();
        Ok(OracleResult { value: g.n() - forest.value, witness: Witness::Vertices(removed) })
    }

    /// t(G): largest vertex set inducing a tree.
    pub fn max_induced_tree(&self, g: &Graph) -> Result<OracleResult, OracleError> {
        check("max induced tree", g.n(), self.caps.vertices)?;
        let adj = adjacency_masks(g);
        let (value, mask) = largest_feasible(g.n(), |s| {
            let edges: u32 = members(s).iter().map(|&v| (adj[v] & s).count_ones()).sum();
            s != 0 && edges / 2 + 1 == s.count_ones() && induced_is_connected(&adj, s)
        });
        Ok(OracleResult { value, witness: Witness::Vertices(members(mask)) })
    }

    /// l(G): largest edge set whose components are paths.
    pub fn max_linear_forest(&self, g: &Graph) -> Result<OracleResult, OracleError> {
        check("max linear forest", g.m(), self.caps.edges)?;
        let mut incident = vec![0u64; g.n()];
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            incident[u] |= 1 << i;
            incident[v] |= 1 << i;
        }
        let (value, mask) = largest_feasible(g.m(), |s| {
            incident.iter().all(|&inc| (inc & s).count_ones() <= 2) && {
                let mut uf = UnionFind::new(g.n());
                members(s).into_iter().all(|i| {
                    let (u, v) = g.edges()[i];
                    uf.union(u, v)
                })
            }
        });
        let edges = members(mask).into_iter().map(|i| g.edges()[i]).collect();
        Ok(OracleResult { value, witness: Witness::Edges(edges) })
    }

    /// p(G): edges on a longest simple path, by DFS over all partial paths.
    pub fn longest_path(&self, g: &Graph) -> Result<OracleResult, OracleError> {
        check("longest path", g.n(), self.caps.vertices)?;
        let mut best: Vec<usize> = Vec::new();
        let mut stack = Vec::with_capacity(g.n());
        let mut on_path = vec![false; g.n()];
        for start in 0..g.n() {
            extend_path(g, start, &mut stack, &mut on_path, &mut best);
            if best.len() == g.n() {
                break;
            }
        }
        Ok(OracleResult { value: best.len().saturating_sub(1), witness: Witness::Walk(best) })
    }

    /// A Hamiltonian cycle starting at vertex 0, if one exists.
    pub fn hamiltonian_cycle(&self, g: &Graph) -> Result<Option<Vec<usize>>, OracleError> {
        check("hamiltonian cycle", g.n(), self.caps.vertices)?;
        Ok(ham_cycle(&adjacency_masks(g), g.n()))
    }

    pub fn is_hamiltonian(&self, g: &Graph) -> Result<bool, OracleError> {
        Ok(self.hamiltonian_cycle(g)?.is_some())
    }

    /// hc(G): fewest non-edges whose addition makes `g` Hamiltonian; the
    /// witness lists the added edges.
    pub fn hc(&self, g: &Graph) -> Result<OracleResult, OracleError> {
        check("hamiltonian completion", g.n(), self.caps.hc_vertices)?;
        let n = g.n();
        if n < 3 {
            return Err(OracleError::TooSmall { quantity: "hamiltonian completion", n, needed: 3 });
        }
        let base = adjacency_masks(g);
        let non_edges: Vec<Edge> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        for k in 0..=non_edges.len() {
            let found = first_subset(non_edges.len(), k, |s| {
                let mut adj = base.clone();
                for i in members(s) {
                    let (u, v) = non_edges[i];
                    adj[u] |= 1 << v;
                    adj[v] |= 1 << u;
                }
                ham_cycle(&adj, n).is_some()
            });
            if let Some(mask) = found {
                let added = members(mask).into_iter().map(|i| non_edges[i]).collect();
                return Ok(OracleResult { value: k, witness: Witness::Edges(added) });
            }
        }
        unreachable!("the complete graph on n >= 3 vertices is Hamiltonian")
    }

    /// All spanning trees of a connected graph, by filtering (n−1)-edge
    /// subsets.
    pub fn spanning_trees(&self, g: &Graph) -> Result<Vec<Graph>, OracleError> {
        check("spanning trees", g.m(), self.caps.edges)?;
        let mut out = Vec::new();
        let k = g.n().saturating_sub(1);
        first_subset(g.m(), k, |s| {
            let mut uf = UnionFind::new(g.n());
            let chosen = members(s);
            if chosen.iter().all(|&i| uf.union(g.edges()[i].0, g.edges()[i].1)) {
                let edges = chosen.iter().map(|&i| g.edges()[i]);
                out.push(Graph::new(g.n(), edges).expect("subset of a simple graph"));
            }
            false
        });
        Ok(out)
    }
}

fn extend_path(g: &Graph, v: usize, stack: &mut Vec<usize>, on_path: &mut [bool], best: &mut Vec<usize>) {
    stack.push(v);
    on_path[v] = true;
    if stack.len() > best.len() {
        best.clone_from(stack);
    }
    for &w in g.neighbors(v) {
        if !on_path[w] && best.len() < g.n() {
            extend_path(g, w, stack, on_path, best);
        }
    }
    on_path[v] = false;
    stack.pop();
}

fn ham_cycle(adj: &[u64], n: usize) -> Option<Vec<usize>> {
    if n < 3 || adj.iter().any(|a| a.count_ones() < 2) {
        return None;
    }
    fn go(adj: &[u64], n: usize, path: &mut Vec<usize>, used: u64) -> bool {
        let v = *path.last().unwrap();
        if path.len() == n {
            return adj[v] & 1 == 1;
        }
        let mut next = adj[v] & !used;
        while next != 0 {
            let w = next.trailing_zeros() as usize;
            next &= next - 1;
            path.push(w);
            if go(adj, n, path, used | 1 << w) {
                return true;
            }
            path.pop();
        }
        false
    }
    let mut path = vec![0];
    go(adj, n, &mut path, 1).then_some(path)
}

pub fn max_induced_forest(g: &Graph) -> Result<OracleResult, OracleError> {
    Oracle::default().max_induced_forest(g)
}

pub fn decycling_number(g: &Graph) -> Result<OracleResult, OracleError> {
    Oracle::default().decycling_number(g)
}

pub fn max_induced_tree(g: &Graph) -> Result<OracleResult, OracleError> {
    Oracle::default().max_induced_tree(g)
}

pub fn max_linear_forest_bf(g: &Graph) -> Result<OracleResult, OracleError> {
    Oracle::default().max_linear_forest(g)
}

pub fn longest_path_bf(g: &Graph) -> Result<OracleResult, OracleError> {
    Oracle::default().longest_path(g)
}

pub fn is_hamiltonian(g: &Graph) -> Result<bool, OracleError> {
    Oracle::default().is_hamiltonian(g)
}

pub fn hc_bf(g: &Graph) -> Result<OracleResult, OracleError> {
    Oracle::default().hc(g)
}

pub fn spanning_trees(g: &Graph) -> Result<Vec<Graph>, OracleError> {
    Oracle::default().spanning_trees(g)
}

// Polynomial certificate checks, written independently of the searches.

fn induced_edges(g: &Graph, set: &[usize]) -> Option<Vec<Edge>> {
    let mut inside = vec![false; g.n()];
    for &v in set {
        if v >= g.n() || inside[v] {
            return None;
        }
        inside[v] = true;
    }
    Some(g.edges().iter().copied().filter(|&(u, v)| inside[u] && inside[v]).collect())
}

pub fn is_induced_forest(g: &Graph, set: &[usize]) -> bool {
    let Some(edges) = induced_edges(g, set) else { return false };
    let mut uf = UnionFind::new(g.n());
    edges.into_iter().all(|(u, v)| uf.union(u, v))
}

pub fn is_induced_tree(g: &Graph, set: &[usize]) -> bool {
    let Some(edges) = induced_edges(g, set) else { return false };
    !set.is_empty() && edges.len() + 1 == set.len() && is_induced_forest(g, set)
}

/// Distinct vertices with consecutive ones adjacent.
pub fn is_simple_path(g: &Graph, walk: &[usize]) -> bool {
    let mut seen = vec![false; g.n()];
    for &v in walk {
        if v >= g.n() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    walk.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

pub fn is_hamiltonian_cycle(g: &Graph, cycle: &[usize]) -> bool {
    g.n() >= 3
        && cycle.len() == g.n()
        && is_simple_path(g, cycle)
        && g.has_edge(cycle[0], cycle[cycle.len() - 1])
}

/// True when `removed` is a decycling set of `g`.
pub fn is_decycling_set(g: &Graph, removed: &[usize]) -> bool {
    let keep: Vec<usize> = (0..g.n()).filter(|v| !removed.contains(v)).collect();
    is_induced_forest(g, &keep)
}
