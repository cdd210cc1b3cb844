//! Undirected simple graphs over dense vertex ids, line graphs, and the
//! edge-list / DOT text formats.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

/// An undirected edge stored with the smaller endpoint first.
pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {0}-{1} is not in the graph")]
    MissingEdge(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty document, expected header \"n m\"")]
    MissingHeader,
    #[error("malformed header, expected \"n m\"")]
    BadHeader,
    #[error("malformed edge, expected \"u v\"")]
    BadEdge,
    #[error("header declares {declared} edges but {found} were given")]
    CountMismatch { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[inline]
pub fn normalize(u: usize, v: usize) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Undirected simple graph on vertices `0..n`.
///
/// Edges are kept sorted lexicographically and adjacency lists are sorted, so
/// every derived structure (line graphs, DOT output, oracle witnesses) is
/// reproducible.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            check_edge(n, u, v)?;
            list.push(normalize(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted(n, list))
    }

    /// Graph with no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of an edge in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&normalize(u, v)).ok()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.m() + 1 == self.n && self.is_connected()
    }

    /// Returns a copy with extra edges; fails if any of them already exists.
    pub fn with_added_edges<I>(&self, extra: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        Graph::new(self.n, self.edges.iter().copied().chain(extra))
    }

    /// Returns a copy without the listed edges.
    pub fn with_removed_edges(&self, removed: &[Edge]) -> Result<Self, GraphError> {
        let mut drop: Vec<Edge> = removed.iter().map(|&(u, v)| normalize(u, v)).collect();
        drop.sort_unstable();
        for &(u, v) in &drop {
            if !self.has_edge(u, v) {
                return Err(GraphError::MissingEdge(u, v));
            }
        }
        let kept = self
            .edges
            .iter()
            .copied()
            .filter(|e| drop.binary_search(e).is_err())
            .collect();
        Ok(Self::from_sorted(self.n, kept))
    }

    /// Serializes to the edge-list format read by [`parse_graph`].
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(8 * (self.m() + 1));
        let _ = writeln!(out, "{} {}", self.n, self.m());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn check_edge(n: usize, u: usize, v: usize) -> Result<(), GraphError> {
    for vertex in [u, v] {
        if vertex >= n {
            return Err(GraphError::VertexOutOfRange { vertex, n });
        }
    }
    if u == v {
        return Err(GraphError::SelfLoop(u));
    }
    Ok(())
}

/// Parses the edge-list format: a header line `n m` followed by `m` lines
/// `u v`. Blank lines are skipped; error line numbers are 1-based physical
/// lines.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(ParseError {
        line: 1,
        kind: ParseErrorKind::MissingHeader,
    })?;
    let (n, m) = parse_pair(header).ok_or(ParseError {
        line: header_line,
        kind: ParseErrorKind::BadHeader,
    })?;

    let mut edges: Vec<Edge> = Vec::with_capacity(m.min(1 << 16));
    let mut seen: HashSet<Edge> = HashSet::with_capacity(m.min(1 << 16));
    let mut last_line = header_line;
    for (line, body) in lines {
        if edges.len() == m {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::CountMismatch {
                    declared: m,
                    found: m + 1,
                },
            });
        }
        let (u, v) = parse_pair(body).ok_or(ParseError {
            line,
            kind: ParseErrorKind::BadEdge,
        })?;
        let err = |e: GraphError| ParseError {
            line,
            kind: ParseErrorKind::Graph(e),
        };
        check_edge(n, u, v).map_err(err)?;
        let e = normalize(u, v);
        if !seen.insert(e) {
            return Err(err(GraphError::DuplicateEdge(e.0, e.1)));
        }
        edges.push(e);
        last_line = line;
    }
    if edges.len() != m {
        return Err(ParseError {
            line: last_line + 1,
            kind: ParseErrorKind::CountMismatch {
                declared: m,
                found: edges.len(),
            },
        });
    }
    Ok(Graph::new(n, edges).expect("edges validated while parsing"))
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

/// A line graph together with the source edge of each of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineGraph {
    pub graph: Graph,
    /// `source[i]` is the edge of the original graph represented by vertex `i`.
    pub source: Vec<Edge>,
}

/// Builds L(g). Vertex `i` of the result is the `i`-th edge of `g` in sorted
/// order; two vertices are adjacent iff their edges share an endpoint.
pub fn line_graph(g: &Graph) -> LineGraph {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let mut edges = Vec::new();
    for list in &incident {
        for (a, &i) in list.iter().enumerate() {
            for &j in &list[a + 1..] {
                edges.push(normalize(i, j));
            }
        }
    }
    // Two distinct edges of a simple graph share at most one endpoint, so no
    // pair is produced twice.
    edges.sort_unstable();
    LineGraph {
        graph: Graph::from_sorted(g.m(), edges),
        source: g.edges().to_vec(),
    }
}

/// Emits a DOT document. Highlighted edges are drawn bold and red.
pub fn to_dot(g: &Graph, highlight: &[Edge]) -> Result<String, GraphError> {
    let mut marked = vec![false; g.m()];
    for &(u, v) in highlight {
        let i = g.edge_index(u, v).ok_or(GraphError::MissingEdge(u, v))?;
        marked[i] = true;
    }
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        let _ = writeln!(out, "  {v};");
    }
    for (&(u, v), &hl) in g.edges().iter().zip(&marked) {
        if hl {
            let _ = writeln!(out, "  {u} -- {v} [color=red, penwidth=3];");
        } else {
            let _ = writeln!(out, "  {u} -- {v};");
        }
    }
    out.push_str("}\n");
    Ok(out)
}
