//! Trees attaining the diameter and k-ary bounds, and the tree-family
//! predicates used when normalizing trees toward them.

use thiserror::Error;

use crate::bounds;
use crate::graph::{Edge, Graph};
use crate::tree::{tree_stats, RootedTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtremalError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

fn infeasible(msg: impl Into<String>) -> ExtremalError {
    ExtremalError::Infeasible(msg.into())
}

/// Incremental tree builder handing out vertex ids in creation order.
struct Builder {
    n: usize,
    edges: Vec<Edge>,
}

impl Builder {
    fn new() -> Self {
        Builder { n: 1, edges: Vec::new() }
    }

    fn child(&mut self, parent: usize) -> usize {
        let v = self.n;
        self.n += 1;
        self.edges.push((parent, v));
        v
    }

    /// Hangs a path of `len` new vertices below `from`; returns its far end.
    fn leg(&mut self, from: usize, len: usize) -> usize {
        (0..len).fold(from, |at, _| self.child(at))
    }

    fn finish(self) -> Graph {
        Graph::new(self.n, self.edges).expect("builder emits a simple tree")
    }
}

/// Named extremal constructions with their predicted l value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremal {
    /// Diametral path plus pendant leaves on a middle vertex; l = d.
    LowerSpider { n: usize, d: usize },
    /// Even diameter `d = 2r`, attains `⌊((2r−2)n+2)/(2r−1)⌋`.
    TStar { n: usize, d: usize },
    /// Odd diameter, one vertex at depth r+1; `⌊((2r−2)n+3)/(2r−1)⌋`.
    T1Star { n: usize, d: usize },
    /// Odd diameter, two vertices at depth r+1; `⌊((2r−2)n+4)/(2r−1)⌋`.
    T2Star { n: usize, d: usize },
    /// k-ary tree with one internal node per level.
    KaryCaterpillar { n: usize, k: usize },
}

impl Extremal {
    pub fn build(&self) -> Result<Graph, ExtremalError> {
        match *self {
            Extremal::LowerSpider { n, d } => lower_spider(n, d),
            Extremal::TStar { n, d } => t_star(n, d),
            Extremal::T1Star { n, d } => t1_star(n, d),
            Extremal::T2Star { n, d } => t2_star(n, d),
            Extremal::KaryCaterpillar { n, k } => kary_caterpillar(n, k),
        }
    }

    /// The l value the construction is designed to attain.
    pub fn predicted_l(&self) -> Result<usize, ExtremalError> {
        self.build()?;
        let floor = |n: usize, r: usize, c: usize| ((2 * r - 2) * n + c) / (2 * r - 1);
        Ok(match *self {
            Extremal::LowerSpider { d, .. } => d,
            Extremal::TStar { n, d } => floor(n, d / 2, 2),
            Extremal::T1Star { n, d } => floor(n, d / 2, 3),
            Extremal::T2Star { n, d } => floor(n, d / 2, 4),
            Extremal::KaryCaterpillar { n, k } => {
                bounds::kary_caterpillar_l(n as i64, k as i64).map_err(|e| infeasible(e.to_string()))? as usize
            }
        })
    }
}

/// Path `0..=d` with `n − d − 1` pendant leaves on vertex `⌊d/2⌋`.
pub fn lower_spider(n: usize, d: usize) -> Result<Graph, ExtremalError> {
    if d < 2 || n < d + 1 {
        return Err(infeasible(format!("lower spider needs d >= 2 and n >= d+1 (n={n}, d={d})")));
    }
    let mut b = Builder::new();
    b.leg(0, d);
    for _ in 0..n - d - 1 {
        b.child(d / 2);
    }
    Ok(b.finish())
}

/// T*(n) for `d = 2r`: a root with two legs of length `r`, then as many
/// Y-branches (a depth-1 vertex with two arms of length `r−1`) as fit in the
/// remaining `n − 2r − 1` vertices. A remainder `m` of `1..=r` becomes a third
/// leg of length `m`; a remainder in `r+1..=2r−2` becomes a Y-branch with arms
/// `r−1` and `m−r`.
pub fn t_star(n: usize, d: usize) -> Result<Graph, ExtremalError> {
    if d < 4 || d % 2 == 1 || n < d + 1 {
        return Err(infeasible(format!("t_star needs even d >= 4 and n >= d+1 (n={n}, d={d})")));
    }
    let r = d / 2;
    let mut b = Builder::new();
    b.leg(0, r);
    b.leg(0, r);
    let rest = n - 2 * r - 1;
    let (full, m) = (rest / (2 * r - 1), rest % (2 * r - 1));
    for _ in 0..full {
        let y = b.child(0);
        b.leg(y, r - 1);
        b.leg(y, r - 1);
    }
    if (1..=r).contains(&m) {
        b.leg(0, m);
    } else if m > r {
        let y = b.child(0);
        b.leg(y, r - 1);
        b.leg(y, m - r);
    }
    Ok(b.finish())
}

/// T₁*(n) for `d = 2r+1`: T*(n−1) with one critical leg extended to depth
/// `r+1`.
pub fn t1_star(n: usize, d: usize) -> Result<Graph, ExtremalError> {
    if d < 5 || d.is_multiple_of(2) || n < d + 1 {
        return Err(infeasible(format!("t1_star needs odd d >= 5 and n >= d+1 (n={n}, d={d})")));
    }
    let base = t_star(n - 1, d - 1)?;
    // Vertex r is the end of the first critical leg of T*.
    let r = d / 2;
    Ok(grow(&base, n, &[(r, n - 1)]))
}

/// T₂*(n) for `d = 2r+1` and `n ≥ 4r+2`: T*(n−2) with both arms of its first
/// Y-branch extended to depth `r+1`. The two deep vertices share a subtree of
/// the root, so the diameter is `2r+1`.
pub fn t2_star(n: usize, d: usize) -> Result<Graph, ExtremalError> {
    if d < 5 || d.is_multiple_of(2) {
        return Err(infeasible(format!("t2_star needs odd d >= 5 (d={d})")));
    }
    let r = d / 2;
    if n < 4 * r + 2 {
        return Err(infeasible(format!("t2_star needs n >= {} (n={n}, d={d})", 4 * r + 2)));
    }
    let base = t_star(n - 2, d - 1)?;
    // Builder order: legs occupy 1..=2r, the first Y-branch vertex is 2r+1,
    // its arms end at 2r+1+(r−1) and 2r+1+2(r−1).
    let y = 2 * r + 1;
    let (arm_a, arm_b) = (y + r - 1, y + 2 * (r - 1));
    Ok(grow(&base, n, &[(arm_a, n - 2), (arm_b, n - 1)]))
}

/// Copies `base` onto `n` vertices and adds edges to the new ones.
fn grow(base: &Graph, n: usize, extra: &[Edge]) -> Graph {
    let edges = base.edges().iter().chain(extra).copied();
    Graph::new(n, edges).expect("new vertices are fresh leaves")
}

/// k-ary tree on `n` vertices whose internal nodes form a path from the root,
/// one per level.
pub fn kary_caterpillar(n: usize, k: usize) -> Result<Graph, ExtremalError> {
    if k < 2 || n < k + 1 || n % k != 1 {
        return Err(infeasible(format!("kary_caterpillar needs k >= 2, n >= k+1, n = 1 mod k (n={n}, k={k})")));
    }
    let mut b = Builder::new();
    let mut spine = 0;
    for _ in 0..(n - 1) / k {
        let first = b.child(spine);
        for _ in 1..k {
            b.child(spine);
        }
        spine = first;
    }
    Ok(b.finish())
}

/// Membership in the three nested tree families used to normalize trees of
/// bounded diameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyFlags {
    /// Diameter ≤ d, radius ≤ ⌈d/2⌉, degree ≤ 2 at depth ≥ 2, ≤ 3 at depth 1.
    pub t1: bool,
    /// In the first family and s(T) ≤ 3.
    pub t2: bool,
    /// In the first family and 2 ≤ s(T) ≤ 3.
    pub t3: bool,
}

/// Evaluates the family conditions for `t` (rooted at a center) against the
/// diameter budget `d`.
pub fn family_predicates(t: &RootedTree, d: usize) -> FamilyFlags {
    let g = t.graph();
    let stats = tree_stats(t);
    let degree_ok = (0..g.n()).all(|v| match t.depth(v) {
        0 => true,
        1 => g.degree(v) <= 3,
        _ => g.degree(v) <= 2,
    });
    let t1 = stats.diameter <= d && stats.radius <= d.div_ceil(2) && degree_ok;
    FamilyFlags { t1, t2: t1 && stats.s <= 3, t3: t1 && (2..=3).contains(&stats.s) }
}
