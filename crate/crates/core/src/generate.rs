//! Tree families, Prüfer coding, and exhaustive labeled-tree enumeration.

use std::ops::Range;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Edge, Graph};

/// Largest `n` accepted by [`enumerate_trees`] unless a caller raises the cap.
pub const DEFAULT_ENUMERATION_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

fn invalid(msg: impl Into<String>) -> GenError {
    GenError::Invalid(msg.into())
}

fn tree(n: usize, edges: Vec<Edge>) -> Graph {
    Graph::new(n, edges).expect("generator produced a simple graph")
}

/// Path on `n ≥ 1` vertices, `0 - 1 - ... - n-1`.
pub fn path(n: usize) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(invalid("path needs n >= 1"));
    }
    Ok(tree(n, (1..n).map(|i| (i - 1, i)).collect()))
}

/// Star on `n ≥ 2` vertices with hub 0.
pub fn star(n: usize) -> Result<Graph, GenError> {
    if n < 2 {
        return Err(invalid("star needs n >= 2"));
    }
    Ok(tree(n, (1..n).map(|i| (0, i)).collect()))
}

/// Spider with center 0 and one leg per entry; leg vertices are numbered
/// consecutively outward, leg by leg.
pub fn spider(legs: &[usize]) -> Result<Graph, GenError> {
    if legs.is_empty() || legs.contains(&0) {
        return Err(invalid("spider legs must be non-empty and positive"));
    }
    let n = 1 + legs.iter().sum::<usize>();
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1;
    for &len in legs {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Ok(tree(n, edges))
}

/// Full k-ary tree built level by level. `expand[i]` lists, by position in
/// level `i` (BFS order), the nodes that receive `k` children; level 0 is the
/// root alone. Children of a node get consecutive ids.
pub fn kary(k: usize, expand: &[Vec<usize>]) -> Result<Graph, GenError> {
    if k < 2 {
        return Err(invalid("k-ary trees need k >= 2"));
    }
    let mut level = vec![0usize];
    let mut n = 1;
    let mut edges = Vec::new();
    for (depth, picks) in expand.iter().enumerate() {
        let mut sorted = picks.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != picks.len() {
            return Err(invalid(format!("level {depth} repeats a node")));
        }
        if let Some(&bad) = sorted.iter().find(|&&p| p >= level.len()) {
            return Err(invalid(format!(
                "level {depth} has {} nodes, cannot expand node {bad}",
                level.len()
            )));
        }
        let mut next = Vec::with_capacity(sorted.len() * k);
        for &p in &sorted {
            for _ in 0..k {
                edges.push((level[p], n));
                next.push(n);
                n += 1;
            }
        }
        level = next;
        if level.is_empty() {
            break;
        }
    }
    Ok(tree(n, edges))
}

/// Random full k-ary tree with `internal` internal nodes
/// (`n = k·internal + 1`), grown by expanding uniformly chosen leaves.
pub fn random_kary<R: Rng>(k: usize, internal: usize, rng: &mut R) -> Result<Graph, GenError> {
    if k < 2 {
        return Err(invalid("k-ary trees need k >= 2"));
    }
    let n = k * internal + 1;
    let mut leaves = vec![0usize];
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1;
    for _ in 0..internal {
        let v = leaves.swap_remove(rng.gen_range(0..leaves.len()));
        for _ in 0..k {
            edges.push((v, next));
            leaves.push(next);
            next += 1;
        }
    }
    Ok(tree(n, edges))
}

/// Number of vertices of the perfect k-ary tree of height `h` (levels).
pub fn perfect_kary_order(k: usize, h: usize) -> Option<usize> {
    let mut n: usize = 0;
    let mut level: usize = 1;
    for _ in 0..h {
        n = n.checked_add(level)?;
        level = level.checked_mul(k)?;
    }
    Some(n)
}

/// Perfect k-ary tree with `h ≥ 1` levels; node `i` has children
/// `k·i+1 ..= k·i+k`.
pub fn perfect_kary(k: usize, h: usize) -> Result<Graph, GenError> {
    if k < 2 || h == 0 {
        return Err(invalid("perfect k-ary trees need k >= 2 and h >= 1"));
    }
    let n = perfect_kary_order(k, h)
        .filter(|&n| n <= 1 << 24)
        .ok_or_else(|| invalid("perfect k-ary tree too large"))?;
    Ok(tree(n, (1..n).map(|v| ((v - 1) / k, v)).collect()))
}

/// Decodes a Prüfer sequence into the labeled tree on `len + 2` vertices.
pub fn prufer_decode(seq: &[usize]) -> Result<Graph, GenError> {
    let n = seq.len() + 2;
    if let Some(&bad) = seq.iter().find(|&&x| x >= n) {
        return Err(invalid(format!("Prüfer entry {bad} out of range for n = {n}")));
    }
    Ok(tree(n, prufer_edges(seq)))
}

/// Linear-time decoding: `ptr` scans for the smallest leaf, and a freshly
/// created leaf smaller than `ptr` is consumed immediately.
fn prufer_edges(seq: &[usize]) -> Vec<Edge> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &x in seq {
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    edges
}

/// Prüfer sequence of a labeled tree on `n ≥ 2` vertices.
pub fn prufer_encode(g: &Graph) -> Result<Vec<usize>, crate::tree::TreeError> {
    crate::tree::require_tree(g)?;
    let n = g.n();
    if n <= 2 {
        return Ok(Vec::new());
    }
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut seq = Vec::with_capacity(n - 2);
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    while seq.len() < n - 2 {
        removed[leaf] = true;
        let next = *g
            .neighbors(leaf)
            .iter()
            .find(|&&w| !removed[w])
            .expect("a leaf keeps one live neighbor");
        seq.push(next);
        degree[next] -= 1;
        if degree[next] == 1 && next < ptr {
            leaf = next;
        } else {
            ptr += 1;
            while degree[ptr] != 1 || removed[ptr] {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    Ok(seq)
}

/// Uniformly random labeled tree on `n` vertices drawn from the given seed.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_tree_with(n, &mut rng)
}

pub fn random_tree_with<R: Rng>(n: usize, rng: &mut R) -> Result<Graph, GenError> {
    match n {
        0 => Err(invalid("random tree needs n >= 1")),
        1 => Ok(Graph::empty(1)),
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            prufer_decode(&seq)
        }
    }
}

/// Number of labeled trees on `n` vertices (Cayley), if it fits in a `u64`.
pub fn labeled_tree_count(n: usize) -> Option<u64> {
    match n {
        0 => Some(0),
        1 => Some(1),
        _ => (n as u64).checked_pow(u32::try_from(n - 2).ok()?),
    }
}

/// Iterator over all labeled trees on `n` vertices, in lexicographic order of
/// their Prüfer sequences. A sub-range of sequence indices can be requested so
/// that parallel consumers can split the space.
#[derive(Debug, Clone)]
pub struct LabeledTrees {
    n: usize,
    seq: Vec<usize>,
    next: u64,
    end: u64,
}

impl LabeledTrees {
    /// Index of the sequence that the next call to `next` decodes.
    pub fn position(&self) -> u64 {
        self.next
    }

    /// Current Prüfer sequence, i.e. the one for [`LabeledTrees::position`].
    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    fn advance(&mut self) {
        for digit in self.seq.iter_mut().rev() {
            *digit += 1;
            if *digit < self.n {
                return;
            }
            *digit = 0;
        }
    }
}

impl Iterator for LabeledTrees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next >= self.end {
            return None;
        }
        let g = if self.n == 1 {
            Graph::empty(1)
        } else {
            tree(self.n, prufer_edges(&self.seq))
        };
        self.next += 1;
        if self.next < self.end {
            self.advance();
        }
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.end - self.next).unwrap_or(usize::MAX);
        (left, Some(left))
    }
}

impl ExactSizeIterator for LabeledTrees {}

/// All `n^(n-2)` labeled trees on `n` vertices, with the default cap.
pub fn enumerate_trees(n: usize) -> Result<LabeledTrees, GenError> {
    enumerate_trees_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_trees_capped(n: usize, cap: usize) -> Result<LabeledTrees, GenError> {
    let total = check_enumeration(n, cap)?;
    enumerate_tree_range(n, 0..total, cap)
}

/// Labeled trees whose Prüfer index lies in `range`.
pub fn enumerate_tree_range(n: usize, range: Range<u64>, cap: usize) -> Result<LabeledTrees, GenError> {
    let total = check_enumeration(n, cap)?;
    if range.start > range.end || range.end > total {
        return Err(invalid(format!("range {range:?} outside 0..{total}")));
    }
    let mut seq = vec![0; n.saturating_sub(2)];
    let mut index = range.start;
    for digit in seq.iter_mut().rev() {
        *digit = (index % n as u64) as usize;
        index /= n as u64;
    }
    Ok(LabeledTrees { n, seq, next: range.start, end: range.end })
}

fn check_enumeration(n: usize, cap: usize) -> Result<u64, GenError> {
    if n == 0 {
        return Err(invalid("tree enumeration needs n >= 1"));
    }
    if n > cap {
        return Err(GenError::CapExceeded { n, cap });
    }
    labeled_tree_count(n).ok_or_else(|| invalid("tree count overflows u64"))
}
