//! Small simple undirected graphs, their text formats and vertex orderings.
//!
//! Vertices are labelled `1..=n` at every public boundary. Internally the
//! adjacency is stored 0-indexed as one `u64` bitmask per vertex, which caps
//! the vertex count at [`MAX_VERTICES`].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices, capacity is {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} is not in the graph")]
    MissingEdge(usize, usize),
    #[error("invalid graph6: {0}")]
    Graph6(String),
    #[error("invalid vertex ordering: {0}")]
    Ordering(String),
}

/// Finite simple undirected graph on vertices `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    // 0-indexed endpoints, `u < v`, sorted lexicographically
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from 1-indexed edge pairs (either endpoint order).
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        g.edges.sort_unstable();
        Ok(g)
    }

    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Self { n, adj: vec![0; n], edges: Vec::new() })
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w == 0 || w > self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let (a, b) = (u.min(v) - 1, u.max(v) - 1);
        if self.adj[a] >> b & 1 == 1 {
            return Err(GraphError::DuplicateEdge(a + 1, b + 1));
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        self.edges.push((a, b));
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && v >= 1 && u <= self.n && v <= self.n && self.adj[u - 1] >> (v - 1) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).max().unwrap_or(0)
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        bits(self.adj[v - 1]).map(|w| w + 1).collect()
    }

    /// Edges as 1-indexed `(u, v)` with `u < v`, in lexicographic order.
    /// The position of an edge in this list is its edge index.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(u, v)| (u + 1, v + 1)).collect()
    }

    /// Index of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v).checked_sub(1)?, u.max(v).checked_sub(1)?);
        self.edges.binary_search(&key).ok()
    }

    pub(crate) fn adj_mask(&self, v0: usize) -> u64 {
        self.adj[v0]
    }

    pub(crate) fn edge0(&self, i: usize) -> (usize, usize) {
        self.edges[i]
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        let i = self.edge_index(u, v).ok_or(GraphError::MissingEdge(u, v))?;
        let mut g = self.clone();
        let (a, b) = g.edges.remove(i);
        g.adj[a] &= !(1 << b);
        g.adj[b] &= !(1 << a);
        Ok(g)
    }

    /// True iff the graph has exactly one component; the null graph counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.reach(1, full_mask(self.n)) == full_mask(self.n)
    }

    /// Vertices (0-indexed masks) reachable from `start_mask` without leaving `within`.
    pub(crate) fn reach(&self, start_mask: u64, within: u64) -> u64 {
        let mut seen = start_mask & within;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Relabels vertices: vertex `v` becomes `perm[v - 1]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        VertexOrdering::new(perm.to_vec())?;
        if perm.len() != self.n {
            return Err(GraphError::Ordering(format!("expected {} entries", self.n)));
        }
        let edges: Vec<_> = self.edges().iter().map(|&(u, v)| (perm[u - 1], perm[v - 1])).collect();
        Graph::new(self.n, &edges)
    }

    /// Edge-list text: a header line `n m` followed by one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        parse_edge_list(text)
    }

    pub fn to_graph6(&self) -> String {
        encode_graph6(self)
    }

    pub fn from_graph6(line: &str) -> Result<Graph, GraphError> {
        parse_graph6(line)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bit positions of `mask`, lowest first.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

fn parse_err(line: usize, reason: impl Into<String>) -> GraphError {
    GraphError::Parse { line, reason: reason.into() }
}

fn parse_pair(line_no: usize, line: &str) -> Result<(usize, usize), GraphError> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(parse_err(line_no, format!("expected two integers, got {line:?}")));
    }
    let a = fields[0]
        .parse()
        .map_err(|_| parse_err(line_no, format!("not an integer: {:?}", fields[0])))?;
    let b = fields[1]
        .parse()
        .map_err(|_| parse_err(line_no, format!("not an integer: {:?}", fields[1])))?;
    Ok((a, b))
}

/// Parses the edge-list format. Errors name the offending (1-based) line.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_no, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `n m`"))?;
    let (n, m) = parse_pair(header_no, header)?;
    if n > MAX_VERTICES {
        return Err(parse_err(header_no, format!("{n} vertices exceeds capacity {MAX_VERTICES}")));
    }
    let mut g = Graph::empty(n).map_err(|e| parse_err(header_no, e.to_string()))?;
    let mut seen = 0;
    for (line_no, line) in lines {
        if seen == m {
            return Err(parse_err(line_no, format!("more than the declared {m} edges")));
        }
        let (u, v) = parse_pair(line_no, line)?;
        g.insert_edge(u, v).map_err(|e| parse_err(line_no, e.to_string()))?;
        seen += 1;
    }
    if seen < m {
        return Err(parse_err(text.lines().count().max(1), format!("expected {m} edges, found {seen}")));
    }
    g.edges.sort_unstable();
    Ok(g)
}

/// Decodes one graph6 line (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(line: &str) -> Result<Graph, GraphError> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(GraphError::Graph6(format!("byte {b} outside 63..=126")));
    }
    let (n, body) = match bytes {
        [] => return Err(GraphError::Graph6("empty line".into())),
        [126, 126, ..] => return Err(GraphError::Graph6("graphs this large are unsupported".into())),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(GraphError::Graph6("truncated size field".into()));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[3..])
        }
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if body.len() != need {
        return Err(GraphError::Graph6(format!(
            "expected {need} data bytes for n={n}, found {}",
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                edges.push((u + 1, v + 1));
            }
            k += 1;
        }
    }
    if (nbits..need * 6).any(bit) {
        return Err(GraphError::Graph6("non-zero padding bits".into()));
    }
    Graph::new(n, &edges)
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | (g.adj[u] >> v & 1) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// A colouring order: `order[t]` is the (1-indexed) vertex coloured at step `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexOrdering(Vec<usize>);

impl VertexOrdering {
    pub fn new(order: Vec<usize>) -> Result<Self, GraphError> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v == 0 || v > n {
                return Err(GraphError::Ordering(format!("entry {v} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(GraphError::Ordering(format!("vertex {v} listed twice")));
            }
        }
        Ok(Self(order))
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    /// Parses a comma- or whitespace-separated permutation such as `3,1,2`.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let order = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| GraphError::Ordering(format!("not an integer: {s:?}"))))
            .collect::<Result<Vec<usize>, _>>()?;
        Self::new(order)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}
