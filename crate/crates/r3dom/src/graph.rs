//! Undirected graphs, vertex labellings, and labelling verification.
//!
//! Graphs are simple (no loops, no parallel edges) and stored as sorted
//! adjacency lists over `u32` vertex ids `0..n`. Construction validates the
//! edge list and reports the first offending edge.

use std::fmt;

/// Vertex identifier. Graphs index vertices `0..n`.
pub type VertexId = u32;

/// Demand table: a vertex labelled `l` needs its neighbour labels to sum to
/// at least `DEMAND[l]`. Labels 2 and 3 impose no constraint.
pub const DEMAND: [u32; 4] = [3, 2, 0, 0];

/// Errors from graph construction.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) out of range for {2} vertices")]
    VertexOutOfRange(VertexId, VertexId, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),
}

/// A simple undirected graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    m: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list. Edges may appear in
    /// either orientation; loops and duplicates are rejected.
    pub fn new(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        for (u, list) in adj.iter().enumerate() {
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let v = w[0];
                let (a, b) = if (u as VertexId) < v { (u as VertexId, v) } else { (v, u as VertexId) };
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(Graph { adj, m: edges.len() })
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Neighbours of `v`, sorted ascending.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v as usize]
    }

    /// Degree of `v`.
    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v as usize].len()
    }

    /// Whether `{u, v}` is an edge.
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.adj.len() as VertexId {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Connected components, each a sorted vertex list; components ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s as VertexId];
            seen[s] = true;
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &w in self.neighbors(u) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether the graph is connected (the empty graph counts as connected).
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by `verts` (which must be distinct). Vertex `verts[i]`
    /// becomes vertex `i` of the result.
    pub fn induced(&self, verts: &[VertexId]) -> Graph {
        let mut index = std::collections::HashMap::with_capacity(verts.len());
        for (i, &v) in verts.iter().enumerate() {
            index.insert(v, i as VertexId);
        }
        let mut edges = Vec::new();
        for (i, &v) in verts.iter().enumerate() {
            for &w in self.neighbors(v) {
                if let Some(&j) = index.get(&w) {
                    if (i as VertexId) < j {
                        edges.push((i as VertexId, j));
                    }
                }
            }
        }
        Graph::new(verts.len(), &edges).expect("induced subgraph edges are valid")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n() as VertexId;
        let mut edges = self.edges();
        edges.extend(other.edges().iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::new(self.n() + other.n(), &edges).expect("union of valid graphs is valid")
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as VertexId {
            for v in (u + 1)..n as VertexId {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).expect("complete graph is valid")
    }

    /// Path 0 - 1 - ... - (n-1).
    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n as VertexId).map(|v| (v - 1, v)).collect();
        Graph::new(n, &edges).expect("path is valid")
    }

    /// Cycle on n >= 3 vertices.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n as VertexId).map(|v| (v - 1, v)).collect();
        edges.push((0, n as VertexId - 1));
        Graph::new(n, &edges).expect("cycle is valid")
    }

    /// Star K_{1,k}: centre 0 joined to leaves 1..=k.
    pub fn star(k: usize) -> Graph {
        let edges: Vec<_> = (1..=k as VertexId).map(|v| (0, v)).collect();
        Graph::new(k + 1, &edges).expect("star is valid")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

/// A vertex labelling with values in {0, 1, 2, 3}.
#[derive(Clone, PartialEq, Eq)]
pub struct Labeling(pub Vec<u8>);

impl Labeling {
    /// Total weight (sum of labels).
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&l| l as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Debug for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Labeling({:?})", self.0)
    }
}

/// One unsatisfied vertex in a labelling: it needed neighbour labels summing
/// to `required` but got `actual`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub vertex: VertexId,
    pub label: u8,
    pub required: u32,
    pub actual: u32,
}

/// Result of checking a labelling against a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub valid: bool,
    pub weight: u64,
    pub violations: Vec<Violation>,
}

/// Errors from verification.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("labeling has {got} entries but the graph has {want} vertices")]
    LengthMismatch { got: usize, want: usize },
    #[error("label {label} at vertex {vertex} is out of range (labels are 0..=3)")]
    LabelOutOfRange { vertex: VertexId, label: u8 },
}

/// Checks whether `f` is a Roman {3}-dominating function on `g`: every vertex
/// labelled 0 must see neighbour labels summing to >= 3, every vertex
/// labelled 1 must see >= 2. Returns all violations, not just the first.
pub fn verify_labeling(g: &Graph, f: &Labeling) -> Result<VerifyReport, VerifyError> {
    if f.len() != g.n() {
        return Err(VerifyError::LengthMismatch { got: f.len(), want: g.n() });
    }
    if let Some((v, &l)) = f.0.iter().enumerate().find(|&(_, &l)| l > 3) {
        return Err(VerifyError::LabelOutOfRange { vertex: v as VertexId, label: l });
    }
    let mut violations = Vec::new();
    for v in 0..g.n() as VertexId {
        let required = DEMAND[f.0[v as usize] as usize];
        if required == 0 {
            continue;
        }
        let actual: u32 = g.neighbors(v).iter().map(|&w| f.0[w as usize] as u32).sum();
        if actual < required {
            violations.push(Violation { vertex: v, label: f.0[v as usize], required, actual });
        }
    }
    Ok(VerifyReport { valid: violations.is_empty(), weight: f.weight(), violations })
}
