//! Hardness gadgets: graph transformations that embed exact 3-cover and
//! dominating set into Roman {3}-domination, with witness maps in both
//! directions.
//!
//! Two constructions live here.
//!
//! * [`x3c_to_split`] turns an exact-3-cover instance over `3q` elements into
//!   a split graph whose minimum Roman {3}-domination weight is `7q` exactly
//!   when the instance has an exact cover. The clique side consists of two
//!   copies `A`, `B` of the element set plus one vertex per triple; the
//!   independent side holds the element vertices `X` and two guard sets `Y`,
//!   `Z` of `10q` vertices whose only neighbours are triples of `B`- resp.
//!   `A`-vertices. The guards force weight >= 3q onto each of `A` and `B`,
//!   leaving exactly `q` to spend on triple vertices — just enough to cover
//!   every element vertex once.
//!
//! * [`ds_to_r3d`] turns a dominating-set question `(G, k)` into a graph on
//!   `3n + 3kn + 9k` vertices whose minimum Roman {3}-domination weight is at
//!   most `12k` exactly when `G` has a dominating set of size at most `k`.
//!   Three interconnected copies of `G` hold the candidate set; `3k` further
//!   copies of `V(G)` (each watched by an `x`/`y`/`z` triple costing 9 per
//!   group of weight) force the positive vertices of the first copy to
//!   dominate `G`.
//!
//! Both builders are deterministic, assert the advertised vertex counts and
//! degree profiles, and carry their weight target in the output so callers
//! never recompute it. Witness maps re-verify everything they produce.

use crate::graph::{verify_labeling, Graph, Labeling, VerifyError, VertexId};
use thiserror::Error;

// ==================================================================
// Exact 3-cover instances
// ==================================================================

/// An exact-3-cover instance: a universe `{0, .., universe_size - 1}` with
/// `universe_size = 3q`, and a collection of 3-element subsets (stored
/// sorted). Asks for a subcollection covering every element exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct X3cInstance {
    universe_size: usize,
    triples: Vec<[usize; 3]>,
}

/// Errors constructing an [`X3cInstance`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum X3cError {
    #[error("universe size {0} is not a multiple of 3")]
    UniverseNotTriple(usize),
    #[error("triple {index} contains element {element}, outside the universe of size {universe}")]
    ElementOutOfRange { index: usize, element: usize, universe: usize },
    #[error("triple {index} repeats an element")]
    RepeatedElement { index: usize },
}

/// Why a proposed set of triple indices is not an exact cover.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("triple index {index} is out of range")]
    TripleOutOfRange { index: usize },
    #[error("triple index {index} appears twice in the cover")]
    DuplicateTriple { index: usize },
    #[error("not an exact cover: elements {uncovered:?} uncovered, elements {multiply_covered:?} covered more than once")]
    NotExact { uncovered: Vec<usize>, multiply_covered: Vec<usize> },
}

impl X3cInstance {
    /// Builds an instance, validating that every triple has three distinct
    /// in-range elements. Triples are stored sorted.
    pub fn new(universe_size: usize, triples: Vec<[usize; 3]>) -> Result<X3cInstance, X3cError> {
        if universe_size % 3 != 0 {
            return Err(X3cError::UniverseNotTriple(universe_size));
        }
        let mut triples = triples;
        for (index, t) in triples.iter_mut().enumerate() {
            t.sort_unstable();
            if let Some(&element) = t.iter().find(|&&e| e >= universe_size) {
                return Err(X3cError::ElementOutOfRange { index, element, universe: universe_size });
            }
            if t[0] == t[1] || t[1] == t[2] {
                return Err(X3cError::RepeatedElement { index });
            }
        }
        Ok(X3cInstance { universe_size, triples })
    }

    /// Number of elements, always `3q`.
    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    /// `q`: the number of triples an exact cover must use.
    pub fn q(&self) -> usize {
        self.universe_size / 3
    }

    /// The triple collection, each sorted ascending.
    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    /// Checks that the given triple indices cover every element exactly once.
    pub fn check_cover(&self, cover: &[usize]) -> Result<(), CoverError> {
        let mut used = vec![false; self.triples.len()];
        let mut count = vec![0u32; self.universe_size];
        for &index in cover {
            if index >= self.triples.len() {
                return Err(CoverError::TripleOutOfRange { index });
            }
            if used[index] {
                return Err(CoverError::DuplicateTriple { index });
            }
            used[index] = true;
            for &e in &self.triples[index] {
                count[e] += 1;
            }
        }
        let uncovered: Vec<usize> = (0..self.universe_size).filter(|&e| count[e] == 0).collect();
        let multiply_covered: Vec<usize> =
            (0..self.universe_size).filter(|&e| count[e] > 1).collect();
        if uncovered.is_empty() && multiply_covered.is_empty() {
            Ok(())
        } else {
            Err(CoverError::NotExact { uncovered, multiply_covered })
        }
    }
}

// ==================================================================
// Exact 3-cover -> split graph
// ==================================================================

/// The role a vertex plays in a [`SplitReduction`]. `dummy` marks padding
/// added to make `q` even; extraction strips it before answering about the
/// original instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitRole {
    /// Element vertex `x_i` (independent side).
    X { index: usize, dummy: bool },
    /// Triple vertex `c_j` (clique side).
    C { index: usize, dummy: bool },
    /// First element-copy vertex `a_i` (clique side).
    A { index: usize },
    /// Second element-copy vertex `b_i` (clique side).
    B { index: usize },
    /// Guard vertex watching a triple of `B` (independent side).
    Y { index: usize },
    /// Guard vertex watching a triple of `A` (independent side).
    Z { index: usize },
}

impl SplitRole {
    /// Compact tag used in graph-file role sections, e.g. `X:3`, `C:4*`
    /// (a trailing `*` marks padding).
    pub fn tag(&self) -> String {
        let (letter, index, dummy) = match *self {
            SplitRole::X { index, dummy } => ("X", index, dummy),
            SplitRole::C { index, dummy } => ("C", index, dummy),
            SplitRole::A { index } => ("A", index, false),
            SplitRole::B { index } => ("B", index, false),
            SplitRole::Y { index } => ("Y", index, false),
            SplitRole::Z { index } => ("Z", index, false),
        };
        format!("{letter}:{index}{}", if dummy { "*" } else { "" })
    }
}

/// A split-graph instance produced from an exact-3-cover instance, together
/// with the role of every vertex and the weight target `7q`.
#[derive(Clone, Debug)]
pub struct SplitReduction {
    /// The reduced graph: `A ∪ B ∪ C` is a clique, `X ∪ Y ∪ Z` independent.
    pub graph: Graph,
    /// Role of each vertex, indexed by vertex id.
    pub roles: Vec<SplitRole>,
    /// The padded (even-`q`) instance the graph was built from.
    pub instance: X3cInstance,
    /// `q` after evenness padding.
    pub q: usize,
    /// Universe size before padding.
    pub original_universe: usize,
    /// Triple count before padding.
    pub original_triples: usize,
    /// Weight target `7q`: the graph has a Roman {3}-dominating function of
    /// this weight iff the instance has an exact cover.
    pub target: u64,
}

impl SplitReduction {
    /// Padded triple count.
    pub fn t(&self) -> usize {
        self.instance.triples.len()
    }

    /// Element vertex `x_i`.
    pub fn x(&self, i: usize) -> VertexId {
        i as VertexId
    }

    /// Triple vertex `c_j`.
    pub fn c(&self, j: usize) -> VertexId {
        (3 * self.q + j) as VertexId
    }

    /// Element-copy vertex `a_i`.
    pub fn a(&self, i: usize) -> VertexId {
        (3 * self.q + self.t() + i) as VertexId
    }

    /// Element-copy vertex `b_i`.
    pub fn b(&self, i: usize) -> VertexId {
        (6 * self.q + self.t() + i) as VertexId
    }

    /// Guard vertex `y_i`.
    pub fn y(&self, i: usize) -> VertexId {
        (9 * self.q + self.t() + i) as VertexId
    }

    /// Guard vertex `z_i`.
    pub fn z(&self, i: usize) -> VertexId {
        (19 * self.q + self.t() + i) as VertexId
    }

    /// Vertices of the clique side `A ∪ B ∪ C`.
    pub fn clique_side(&self) -> Vec<VertexId> {
        (self.c(0)..=self.b(3 * self.q - 1)).collect()
    }

    /// Vertices of the independent side `X ∪ Y ∪ Z`.
    pub fn independent_side(&self) -> Vec<VertexId> {
        let mut side: Vec<VertexId> = (0..3 * self.q as VertexId).collect();
        side.extend(self.y(0)..=self.z(10 * self.q - 1));
        side
    }

    /// Index of the padding triple, when the input had odd `q`.
    pub fn dummy_triple(&self) -> Option<usize> {
        (self.t() > self.original_triples).then_some(self.original_triples)
    }

    /// Extends a cover of the original universe to one of the padded
    /// universe by appending the padding triple, if any.
    pub fn padded_cover(&self, cover: &[usize]) -> Vec<usize> {
        let mut cover = cover.to_vec();
        cover.extend(self.dummy_triple());
        cover
    }
}

/// Checks that `clique` and `independent` partition the vertices of `g`,
/// that `clique` is pairwise adjacent, and that `independent` is pairwise
/// non-adjacent — i.e. that they exhibit `g` as a split graph.
pub fn is_split_partition(g: &Graph, clique: &[VertexId], independent: &[VertexId]) -> bool {
    let mut seen = vec![0u8; g.n()];
    for &v in clique.iter().chain(independent) {
        match seen.get_mut(v as usize) {
            Some(c) => *c += 1,
            None => return false,
        }
    }
    seen.iter().all(|&c| c == 1)
        && pairs_all(clique, |u, v| g.has_edge(u, v))
        && pairs_all(independent, |u, v| !g.has_edge(u, v))
}

fn pairs_all(verts: &[VertexId], mut pred: impl FnMut(VertexId, VertexId) -> bool) -> bool {
    verts
        .iter()
        .enumerate()
        .all(|(i, &u)| verts[i + 1..].iter().all(|&v| pred(u, v)))
}

/// Builds the split-graph instance for an exact-3-cover instance.
///
/// If `q` is odd, first appends three fresh elements and one fresh triple
/// covering exactly them, so that `q` becomes even and a cover of the padded
/// universe is a cover of the original plus that triple. Then:
///
/// * one vertex per element (`X`), per triple (`C`), and two per-element
///   copies `A`, `B`;
/// * `x_i` is adjacent to `a_i`, `b_i`, and the triples containing element `i`;
/// * guards: `A` is split into consecutive groups of six, each assigned
///   twenty fresh `Z`-vertices, one per 3-subset of the group (subsets in
///   lexicographic order); likewise `B` with `Y`;
/// * `A ∪ B ∪ C` becomes a clique.
///
/// Every guard then demands weight 3 on each 3-subset of its group, which
/// pins weight `3q` onto each of `A` and `B`; the remaining budget `q` of the
/// `7q` target can only dominate all of `X` through an exact cover in `C`.
pub fn x3c_to_split(inst: &X3cInstance) -> SplitReduction {
    let original_universe = inst.universe_size;
    let original_triples = inst.triples.len();

    // Evenness padding: three fresh elements covered by one fresh triple.
    let mut triples = inst.triples.clone();
    let mut universe = original_universe;
    if (universe / 3) % 2 == 1 {
        triples.push([universe, universe + 1, universe + 2]);
        universe += 3;
    }
    let instance = X3cInstance::new(universe, triples).expect("padding keeps the instance valid");
    let q = instance.q();
    let t = instance.triples.len();
    let n = 29 * q + t;

    // Vertex layout: X | C | A | B | Y | Z (respecting the accessor methods).
    let x = |i: usize| i as VertexId;
    let c = |j: usize| (3 * q + j) as VertexId;
    let a = |i: usize| (3 * q + t + i) as VertexId;
    let b = |i: usize| (6 * q + t + i) as VertexId;
    let y = |i: usize| (9 * q + t + i) as VertexId;
    let z = |i: usize| (19 * q + t + i) as VertexId;

    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for (j, triple) in instance.triples.iter().enumerate() {
        for &e in triple {
            edges.push((x(e), c(j)));
        }
    }
    for i in 0..3 * q {
        edges.push((x(i), a(i)));
        edges.push((x(i), b(i)));
    }
    // Guard wiring: group g of A/B gets guards z/y numbered 20g..20g+20, one
    // per 3-subset of {6g, .., 6g+5} in lexicographic order.
    for grp in 0..q / 2 {
        let mut guard = 20 * grp;
        for p in 0..6 {
            for r in p + 1..6 {
                for s in r + 1..6 {
                    for member in [p, r, s] {
                        edges.push((z(guard), a(6 * grp + member)));
                        edges.push((y(guard), b(6 * grp + member)));
                    }
                    guard += 1;
                }
            }
        }
        debug_assert_eq!(guard, 20 * grp + 20);
    }
    // Clique on A ∪ B ∪ C (one contiguous id range, per the layout).
    let clique_lo = c(0);
    let clique_hi = b(3 * q - 1);
    for u in clique_lo..clique_hi {
        for v in u + 1..=clique_hi {
            edges.push((u, v));
        }
    }

    let graph = Graph::new(n, &edges).expect("construction yields no duplicate edges");

    let mut roles = Vec::with_capacity(n);
    roles.extend((0..3 * q).map(|index| SplitRole::X { index, dummy: index >= original_universe }));
    roles.extend((0..t).map(|index| SplitRole::C { index, dummy: index >= original_triples }));
    roles.extend((0..3 * q).map(|index| SplitRole::A { index }));
    roles.extend((0..3 * q).map(|index| SplitRole::B { index }));
    roles.extend((0..10 * q).map(|index| SplitRole::Y { index }));
    roles.extend((0..10 * q).map(|index| SplitRole::Z { index }));

    let red = SplitReduction {
        graph,
        roles,
        instance,
        q,
        original_universe,
        original_triples,
        target: 7 * q as u64,
    };

    // Degree profile promised to downstream tooling.
    for i in 0..10 * q {
        assert_eq!(red.graph.degree(red.z(i)), 3);
        assert_eq!(red.graph.degree(red.y(i)), 3);
    }
    for i in 0..3 * q {
        assert_eq!(red.graph.degree(red.a(i)), (6 * q + t - 1) + 1 + 10);
        assert_eq!(red.graph.degree(red.b(i)), (6 * q + t - 1) + 1 + 10);
        let incident = red.instance.triples.iter().filter(|tr| tr.contains(&i)).count();
        assert_eq!(red.graph.degree(red.x(i)), 2 + incident);
    }
    red
}

/// Turns an exact cover of the (padded) universe into a Roman
/// {3}-dominating function of the reduced graph with weight exactly the `7q`
/// target: label 1 on all of `A ∪ B` and on the cover's triple vertices, 0
/// elsewhere. Rejects covers that are not exact.
pub fn x3c_witness_to_labeling(
    red: &SplitReduction,
    cover: &[usize],
) -> Result<Labeling, CoverError> {
    red.instance.check_cover(cover)?;
    let mut f = vec![0u8; red.graph.n()];
    for i in 0..3 * red.q {
        f[red.a(i) as usize] = 1;
        f[red.b(i) as usize] = 1;
    }
    for &j in cover {
        f[red.c(j) as usize] = 1;
    }
    let f = Labeling(f);
    let report = verify_labeling(&red.graph, &f).expect("witness labeling is well formed");
    assert!(report.valid, "exact-cover witness must dominate the reduced graph");
    assert_eq!(report.weight, red.target);
    Ok(f)
}

/// Why a labelling could not be read back as an exact-cover witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverExtractError {
    #[error(transparent)]
    Malformed(#[from] VerifyError),
    #[error("labeling violates {violations} domination constraints, first at vertex {first}")]
    Invalid { violations: usize, first: VertexId },
    #[error("labeling weight {weight} exceeds the target {target}")]
    Overweight { weight: u64, target: u64 },
    #[error("vertex {vertex} of the element copies carries no label, so the witness structure is broken")]
    CoreVertexUnlabeled { vertex: VertexId },
    #[error("positive triple vertices do not form an exact cover: {0}")]
    Cover(#[from] CoverError),
}

/// Reads an exact cover back out of a Roman {3}-dominating function of
/// weight at most the target: the cover is the set of triple vertices with a
/// positive label. Rejects labellings that are malformed, non-dominating or
/// over target, and reports which structural condition fails if the positive
/// triples are not an exact cover of the padded universe.
pub fn extract_cover_from_labeling(
    red: &SplitReduction,
    f: &Labeling,
) -> Result<Vec<usize>, CoverExtractError> {
    let report = verify_labeling(&red.graph, f)?;
    if !report.valid {
        return Err(CoverExtractError::Invalid {
            violations: report.violations.len(),
            first: report.violations[0].vertex,
        });
    }
    if report.weight > red.target {
        return Err(CoverExtractError::Overweight { weight: report.weight, target: red.target });
    }
    for i in 0..3 * red.q {
        for v in [red.a(i), red.b(i)] {
            if f.0[v as usize] == 0 {
                return Err(CoverExtractError::CoreVertexUnlabeled { vertex: v });
            }
        }
    }
    let cover: Vec<usize> = (0..red.t()).filter(|&j| f.0[red.c(j) as usize] >= 1).collect();
    red.instance.check_cover(&cover)?;
    Ok(cover)
}

// ==================================================================
// Dominating set -> Roman {3}-domination
// ==================================================================

/// The role a vertex plays in a [`DsReduction`]. Copies are numbered 1..=3
/// and groups 1..=k; `vertex` refers back to the (padded) source graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DsRole {
    /// Vertex `u_i`: copy `copy` of source vertex `vertex`.
    A { copy: u8, vertex: VertexId },
    /// Vertex `v_i^j` in the `B` set of copy `copy`, group `group`.
    B { copy: u8, group: usize, vertex: VertexId },
    /// Hub vertex `x_i^j`, adjacent to all of its `B` set and to `y_i^j`.
    X { copy: u8, group: usize },
    /// Relay vertex `y_i^j`, between its hub and its `z` triple.
    Y { copy: u8, group: usize },
    /// Guard vertex `z_i^j`, adjacent only to the `y` vertices of its triple.
    Z { copy: u8, group: usize },
}

impl DsRole {
    /// Compact tag used in graph-file role sections, e.g. `A1:4`, `B2.3:1`,
    /// `x1.2` (copy and group 1-based, source vertex 0-based).
    pub fn tag(&self) -> String {
        match *self {
            DsRole::A { copy, vertex } => format!("A{copy}:{vertex}"),
            DsRole::B { copy, group, vertex } => format!("B{copy}.{group}:{vertex}"),
            DsRole::X { copy, group } => format!("x{copy}.{group}"),
            DsRole::Y { copy, group } => format!("y{copy}.{group}"),
            DsRole::Z { copy, group } => format!("z{copy}.{group}"),
        }
    }
}

/// A Roman {3}-domination instance produced from a dominating-set question
/// `(G, k)`, with the role of every vertex and the weight target `12k`.
#[derive(Clone, Debug)]
pub struct DsReduction {
    /// The reduced graph on `3n + 3kn + 9k` vertices.
    pub graph: Graph,
    /// Role of each vertex, indexed by vertex id.
    pub roles: Vec<DsRole>,
    /// The padded source graph (isolated vertices appended when `k` was not
    /// a multiple of 3, since each must join any dominating set).
    pub source: Graph,
    /// Source order before padding.
    pub original_n: usize,
    /// Bound before padding.
    pub original_k: usize,
    /// Bound after padding, a multiple of 3.
    pub k: usize,
    /// Weight target `12k`: the reduced graph has a Roman {3}-dominating
    /// function of weight at most this iff the padded source has a
    /// dominating set of size at most `k`.
    pub target: u64,
}

impl DsReduction {
    fn n(&self) -> usize {
        self.source.n()
    }

    /// Vertex `u_i` (copy `i` in 1..=3 of source vertex `u`).
    pub fn a(&self, i: usize, u: VertexId) -> VertexId {
        debug_assert!((1..=3).contains(&i));
        ((i - 1) * self.n()) as VertexId + u
    }

    /// Vertex `v_i^j` in the `B` set of copy `i`, group `j` in 1..=k.
    pub fn b(&self, i: usize, j: usize, v: VertexId) -> VertexId {
        debug_assert!((1..=3).contains(&i) && (1..=self.k).contains(&j));
        (3 * self.n() + ((i - 1) * self.k + (j - 1)) * self.n()) as VertexId + v
    }

    /// Hub vertex `x_i^j`.
    pub fn x(&self, i: usize, j: usize) -> VertexId {
        (3 * self.n() + 3 * self.k * self.n() + 3 * ((i - 1) * self.k + (j - 1))) as VertexId
    }

    /// Relay vertex `y_i^j`.
    pub fn y(&self, i: usize, j: usize) -> VertexId {
        self.x(i, j) + 1
    }

    /// Guard vertex `z_i^j`.
    pub fn z(&self, i: usize, j: usize) -> VertexId {
        self.x(i, j) + 2
    }

    /// The isolated vertices appended to the source by padding.
    pub fn padding_vertices(&self) -> Vec<VertexId> {
        (self.original_n as VertexId..self.n() as VertexId).collect()
    }

    /// Extends a dominating set of the original source to one of the padded
    /// source by appending all padding vertices.
    pub fn padded_set(&self, s: &[VertexId]) -> Vec<VertexId> {
        let mut s = s.to_vec();
        s.extend(self.padding_vertices());
        s
    }
}

/// Builds the Roman {3}-domination instance for a dominating-set question
/// `(g, k)` with `k >= 1`.
///
/// First pads `k` up to a multiple of 3, appending that many isolated
/// vertices to `g` (each must join any dominating set, so the answer is
/// unchanged). Writing `n` for the padded order, the reduced graph has:
///
/// * three copies `A_1, A_2, A_3` of `V(g)`, where `u_i ~ v_j` (any copies,
///   same or different) iff `uv` is a source edge, plus `u_i ~ u_j` for
///   `i != j` — so the three copies of a dominating set dominate every copy;
/// * for each copy `i` and group `j` in 1..=k, a set `B_i^j` of `n` vertices
///   where `v_i^j` is adjacent to the copy-`i` vertices of `N[v]`, plus a hub
///   `x_i^j` adjacent to all of `B_i^j` and to a relay `y_i^j`;
/// * guards: for each copy, consecutive groups of three relays
///   `y_i^{3g+1..3g+3}` are completely joined to the three guards
///   `z_i^{3g+1..3g+3}`.
///
/// The guards pin weight 9 onto each `x/y/z` group-of-three (optimally
/// `f(x) = 2`, `f(y) = 1`), which leaves `3k` of the `12k` budget — exactly
/// enough to place `k` weight-1 vertices in each copy, and those must
/// dominate the source for the `B` sets to be covered.
pub fn ds_to_r3d(g: &Graph, k: usize) -> DsReduction {
    assert!(k >= 1, "the bound must be at least 1");
    let pad = (3 - k % 3) % 3;
    let k = k + pad;
    let original_n = g.n();
    let source = if pad == 0 {
        g.clone()
    } else {
        Graph::new(original_n + pad, &g.edges()).expect("padding preserves validity")
    };
    let n = source.n();
    let total = 3 * n + 3 * k * n + 9 * k;

    let a = |i: usize, u: VertexId| ((i - 1) * n) as VertexId + u;
    let b = |i: usize, j: usize, v: VertexId| (3 * n + ((i - 1) * k + (j - 1)) * n) as VertexId + v;
    let x = |i: usize, j: usize| (3 * n + 3 * k * n + 3 * ((i - 1) * k + (j - 1))) as VertexId;

    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    // Copies of the source, fully cross-wired along source edges.
    for (u, v) in source.edges() {
        for i in 1..=3 {
            for j in 1..=3 {
                edges.push((a(i, u), a(j, v)));
            }
        }
    }
    // Triangle on the three copies of each vertex.
    for u in 0..n as VertexId {
        edges.push((a(1, u), a(2, u)));
        edges.push((a(1, u), a(3, u)));
        edges.push((a(2, u), a(3, u)));
    }
    for i in 1..=3 {
        for j in 1..=k {
            for v in 0..n as VertexId {
                let bv = b(i, j, v);
                edges.push((x(i, j), bv));
                edges.push((a(i, v), bv));
                for &u in source.neighbors(v) {
                    edges.push((a(i, u), bv));
                }
            }
            edges.push((x(i, j), x(i, j) + 1));
        }
        // Relay/guard wiring per group of three.
        for grp in 0..k / 3 {
            for jy in 1..=3 {
                for jz in 1..=3 {
                    edges.push((x(i, 3 * grp + jy) + 1, x(i, 3 * grp + jz) + 2));
                }
            }
        }
    }

    let graph = Graph::new(total, &edges).expect("construction yields no duplicate edges");

    let mut roles = Vec::with_capacity(total);
    for copy in 1..=3u8 {
        roles.extend((0..n as VertexId).map(|vertex| DsRole::A { copy, vertex }));
    }
    for copy in 1..=3u8 {
        for group in 1..=k {
            roles.extend((0..n as VertexId).map(|vertex| DsRole::B { copy, group, vertex }));
        }
    }
    // x/y/z of each (copy, group) pair are laid out consecutively,
    // matching the accessor arithmetic.
    for copy in 1..=3u8 {
        for group in 1..=k {
            roles.push(DsRole::X { copy, group });
            roles.push(DsRole::Y { copy, group });
            roles.push(DsRole::Z { copy, group });
        }
    }

    let red = DsReduction {
        graph,
        roles,
        source,
        original_n,
        original_k: k - pad,
        k,
        target: 12 * k as u64,
    };
    assert_eq!(red.graph.n(), total);
    for i in 1..=3 {
        for j in 1..=k {
            assert_eq!(red.graph.degree(red.x(i, j)), n + 1);
            assert_eq!(red.graph.degree(red.z(i, j)), 3);
        }
    }
    red
}

/// Why a vertex set could not be used as a dominating-set witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DsWitnessError {
    #[error("vertex {vertex} is outside the padded source graph")]
    VertexOutOfRange { vertex: VertexId },
    #[error("set of size {size} exceeds the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("vertex {vertex} of the source is not dominated")]
    NotDominating { vertex: VertexId },
}

fn first_undominated(g: &Graph, s: &[VertexId]) -> Option<VertexId> {
    let mut covered = vec![false; g.n()];
    for &u in s {
        covered[u as usize] = true;
        for &w in g.neighbors(u) {
            covered[w as usize] = true;
        }
    }
    covered.iter().position(|&c| !c).map(|v| v as VertexId)
}

/// Turns a dominating set of the padded source (of size at most `k`) into a
/// Roman {3}-dominating function of the reduced graph: label 1 on the three
/// copies of every set vertex and on every relay `y`, label 2 on every hub
/// `x`, 0 elsewhere. The weight is `3|S| + 9k <= 12k`.
pub fn ds_witness_to_labeling(
    red: &DsReduction,
    s: &[VertexId],
) -> Result<Labeling, DsWitnessError> {
    if let Some(&vertex) = s.iter().find(|&&u| u as usize >= red.source.n()) {
        return Err(DsWitnessError::VertexOutOfRange { vertex });
    }
    if s.len() > red.k {
        return Err(DsWitnessError::TooLarge { size: s.len(), bound: red.k });
    }
    if let Some(vertex) = first_undominated(&red.source, s) {
        return Err(DsWitnessError::NotDominating { vertex });
    }
    let mut f = vec![0u8; red.graph.n()];
    for &u in s {
        for i in 1..=3 {
            f[red.a(i, u) as usize] = 1;
        }
    }
    for i in 1..=3 {
        for j in 1..=red.k {
            f[red.x(i, j) as usize] = 2;
            f[red.y(i, j) as usize] = 1;
        }
    }
    let f = Labeling(f);
    let report = verify_labeling(&red.graph, &f).expect("witness labeling is well formed");
    assert!(report.valid, "dominating-set witness must dominate the reduced graph");
    assert_eq!(report.weight, 3 * s.len() as u64 + 9 * red.k as u64);
    Ok(f)
}

/// Why a labelling could not be read back as a dominating-set witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DsExtractError {
    #[error(transparent)]
    Malformed(#[from] VerifyError),
    #[error("labeling violates {violations} domination constraints, first at vertex {first}")]
    Invalid { violations: usize, first: VertexId },
    #[error("labeling weight {weight} exceeds the target {target}")]
    Overweight { weight: u64, target: u64 },
    #[error("positively labeled vertices of the first copy leave source vertex {vertex} undominated")]
    NotDominating { vertex: VertexId },
}

/// Reads a dominating set back out of a Roman {3}-dominating function of
/// weight at most the target: the set is the projection of the positively
/// labeled vertices of the first source copy. Rejects labellings that are
/// malformed, non-dominating or over target, and reports the undominated
/// source vertex if the projection is not a dominating set.
pub fn extract_ds_from_labeling(
    red: &DsReduction,
    f: &Labeling,
) -> Result<Vec<VertexId>, DsExtractError> {
    let report = verify_labeling(&red.graph, f)?;
    if !report.valid {
        return Err(DsExtractError::Invalid {
            violations: report.violations.len(),
            first: report.violations[0].vertex,
        });
    }
    if report.weight > red.target {
        return Err(DsExtractError::Overweight { weight: report.weight, target: red.target });
    }
    let s: Vec<VertexId> =
        (0..red.source.n() as VertexId).filter(|&u| f.0[red.a(1, u) as usize] >= 1).collect();
    if let Some(vertex) = first_undominated(&red.source, &s) {
        return Err(DsExtractError::NotDominating { vertex });
    }
    Ok(s)
}

// ==================================================================

#[cfg(test)]
mod tests {
    use super::*;

    /// Universe {0..5} with triples 012, 013, 345, 145: the covers are
    /// exactly {012, 345}, i.e. triple indices {0, 2}.
    fn six_element_instance() -> X3cInstance {
        X3cInstance::new(6, vec![[0, 1, 2], [0, 1, 3], [3, 4, 5], [1, 4, 5]]).unwrap()
    }

    #[test]
    fn instance_validation() {
        assert_eq!(
            X3cInstance::new(4, vec![]),
            Err(X3cError::UniverseNotTriple(4))
        );
        assert_eq!(
            X3cInstance::new(3, vec![[0, 1, 3]]),
            Err(X3cError::ElementOutOfRange { index: 0, element: 3, universe: 3 })
        );
        assert_eq!(
            X3cInstance::new(3, vec![[0, 1, 1]]),
            Err(X3cError::RepeatedElement { index: 0 })
        );
        // Triples are stored sorted.
        let inst = X3cInstance::new(3, vec![[2, 0, 1]]).unwrap();
        assert_eq!(inst.triples(), &[[0, 1, 2]]);
    }

    #[test]
    fn cover_checking() {
        let inst = six_element_instance();
        assert_eq!(inst.check_cover(&[0, 2]), Ok(()));
        assert_eq!(
            inst.check_cover(&[0, 1]),
            Err(CoverError::NotExact { uncovered: vec![4, 5], multiply_covered: vec![0, 1] })
        );
        assert_eq!(inst.check_cover(&[0, 0]), Err(CoverError::DuplicateTriple { index: 0 }));
        assert_eq!(inst.check_cover(&[4]), Err(CoverError::TripleOutOfRange { index: 4 }));
    }

    #[test]
    fn split_layout_and_structure() {
        let red = x3c_to_split(&six_element_instance());
        assert_eq!(red.q, 2);
        assert_eq!(red.t(), 4);
        assert_eq!(red.graph.n(), 62); // 6 + 4 + 6 + 6 + 20 + 20
        assert_eq!(red.target, 14);
        assert_eq!(red.dummy_triple(), None);

        // Role layout matches the accessors.
        assert_eq!(red.roles[red.x(0) as usize], SplitRole::X { index: 0, dummy: false });
        assert_eq!(red.roles[red.c(3) as usize], SplitRole::C { index: 3, dummy: false });
        assert_eq!(red.roles[red.a(5) as usize], SplitRole::A { index: 5 });
        assert_eq!(red.roles[red.b(0) as usize], SplitRole::B { index: 0 });
        assert_eq!(red.roles[red.y(19) as usize], SplitRole::Y { index: 19 });
        assert_eq!(red.roles[red.z(19) as usize], SplitRole::Z { index: 19 });

        assert!(is_split_partition(&red.graph, &red.clique_side(), &red.independent_side()));
        // Element vertices reach their copies and their triples.
        assert!(red.graph.has_edge(red.x(0), red.a(0)));
        assert!(red.graph.has_edge(red.x(0), red.b(0)));
        assert!(red.graph.has_edge(red.x(0), red.c(0)));
        assert!(red.graph.has_edge(red.x(0), red.c(1)));
        assert!(!red.graph.has_edge(red.x(0), red.c(2)));
        // Each copy vertex watches exactly ten guards.
        let zs = red.graph.neighbors(red.a(0)).iter().filter(|&&v| v >= red.z(0)).count();
        assert_eq!(zs, 10);
    }

    #[test]
    fn split_padding() {
        let inst = X3cInstance::new(3, vec![[0, 1, 2]]).unwrap();
        let red = x3c_to_split(&inst);
        assert_eq!(red.q, 2);
        assert_eq!(red.instance.universe_size(), 6);
        assert_eq!(red.t(), 2);
        assert_eq!(red.graph.n(), 60); // 29 * 2 + 2
        assert_eq!(red.dummy_triple(), Some(1));
        assert_eq!(red.roles[red.x(3) as usize], SplitRole::X { index: 3, dummy: true });
        assert_eq!(red.roles[red.c(1) as usize], SplitRole::C { index: 1, dummy: true });
        assert!(is_split_partition(&red.graph, &red.clique_side(), &red.independent_side()));

        // The padded cover is the original plus the padding triple.
        let cover = red.padded_cover(&[0]);
        assert_eq!(cover, vec![0, 1]);
        let f = x3c_witness_to_labeling(&red, &cover).unwrap();
        assert_eq!(f.weight(), 14);
        assert_eq!(extract_cover_from_labeling(&red, &f).unwrap(), vec![0, 1]);

        // Even q: no padding at all.
        let red = x3c_to_split(&six_element_instance());
        assert_eq!(red.original_universe, red.instance.universe_size());
        assert_eq!(red.original_triples, red.t());
        assert!(red.roles.iter().all(|r| {
            !matches!(r, SplitRole::X { dummy: true, .. } | SplitRole::C { dummy: true, .. })
        }));
    }

    #[test]
    fn split_witness_roundtrip() {
        let red = x3c_to_split(&six_element_instance());
        let f = x3c_witness_to_labeling(&red, &[0, 2]).unwrap();
        assert_eq!(f.weight(), 14);
        assert!(verify_labeling(&red.graph, &f).unwrap().valid);
        assert_eq!(extract_cover_from_labeling(&red, &f).unwrap(), vec![0, 2]);

        assert_eq!(
            x3c_witness_to_labeling(&red, &[0, 1]),
            Err(CoverError::NotExact { uncovered: vec![4, 5], multiply_covered: vec![0, 1] })
        );
    }

    #[test]
    fn split_extract_rejections() {
        let red = x3c_to_split(&six_element_instance());
        // Everything labeled 3 is trivially dominating but far over target.
        let all3 = Labeling(vec![3; red.graph.n()]);
        assert_eq!(
            extract_cover_from_labeling(&red, &all3),
            Err(CoverExtractError::Overweight { weight: 3 * 62, target: 14 })
        );
        // Knocking a copy vertex out of the witness breaks domination.
        let mut f = x3c_witness_to_labeling(&red, &[0, 2]).unwrap();
        f.0[red.a(0) as usize] = 0;
        assert!(matches!(
            extract_cover_from_labeling(&red, &f),
            Err(CoverExtractError::Invalid { .. })
        ));
        // Wrong length is malformed.
        assert_eq!(
            extract_cover_from_labeling(&red, &Labeling(vec![0; 3])),
            Err(CoverExtractError::Malformed(VerifyError::LengthMismatch { got: 3, want: 62 }))
        );
    }

    #[test]
    fn ds_layout_and_structure() {
        let red = ds_to_r3d(&Graph::cycle(4), 3);
        assert_eq!(red.k, 3);
        assert_eq!(red.graph.n(), 75); // 12 + 36 + 27
        assert_eq!(red.target, 36);
        assert_eq!(red.padding_vertices(), Vec::<VertexId>::new());

        assert_eq!(red.roles[red.a(1, 0) as usize], DsRole::A { copy: 1, vertex: 0 });
        assert_eq!(red.roles[red.a(3, 3) as usize], DsRole::A { copy: 3, vertex: 3 });
        assert_eq!(red.roles[red.b(2, 3, 1) as usize], DsRole::B { copy: 2, group: 3, vertex: 1 });
        assert_eq!(red.roles[red.x(1, 1) as usize], DsRole::X { copy: 1, group: 1 });
        assert_eq!(red.roles[red.y(2, 2) as usize], DsRole::Y { copy: 2, group: 2 });
        assert_eq!(red.roles[red.z(3, 3) as usize], DsRole::Z { copy: 3, group: 3 });

        // Hubs see their whole B set plus the relay; guards see one relay triple.
        assert_eq!(red.graph.degree(red.x(1, 1)), 5);
        assert_eq!(red.graph.degree(red.z(2, 1)), 3);
        assert!(red.graph.has_edge(red.y(2, 1), red.z(2, 3)));
        assert!(!red.graph.has_edge(red.y(2, 1), red.z(1, 1)));
        // Triangle on the copies of a vertex, cross edges along source edges.
        assert!(red.graph.has_edge(red.a(1, 0), red.a(2, 0)));
        assert!(red.graph.has_edge(red.a(1, 0), red.a(2, 1)));
        assert!(!red.graph.has_edge(red.a(1, 0), red.a(2, 2))); // 0-2 is not a C4 edge
        // B vertices see the copy-i closed neighbourhood and their hub only.
        assert!(red.graph.has_edge(red.b(1, 1, 0), red.a(1, 0)));
        assert!(red.graph.has_edge(red.b(1, 1, 0), red.a(1, 1)));
        assert!(!red.graph.has_edge(red.b(1, 1, 0), red.a(2, 0)));
        assert!(!red.graph.has_edge(red.b(1, 1, 0), red.b(1, 1, 1)));
    }

    #[test]
    fn ds_padding() {
        let red = ds_to_r3d(&Graph::path(3), 2);
        assert_eq!(red.k, 3);
        assert_eq!(red.original_k, 2);
        assert_eq!(red.source.n(), 4);
        assert_eq!(red.padding_vertices(), vec![3]);
        assert_eq!(red.graph.n(), 3 * 4 + 3 * 3 * 4 + 9 * 3);

        // A multiple-of-3 bound changes nothing.
        let red = ds_to_r3d(&Graph::path(3), 3);
        assert_eq!(red.source.n(), 3);
        assert_eq!(red.original_k, 3);
        assert!(red.padding_vertices().is_empty());
    }

    #[test]
    fn ds_witness_roundtrip() {
        let red = ds_to_r3d(&Graph::cycle(4), 3);
        let f = ds_witness_to_labeling(&red, &[0, 2]).unwrap();
        assert_eq!(f.weight(), 33); // 3|S| + 9k
        assert!(verify_labeling(&red.graph, &f).unwrap().valid);
        assert_eq!(extract_ds_from_labeling(&red, &f).unwrap(), vec![0, 2]);

        assert_eq!(
            ds_witness_to_labeling(&red, &[]),
            Err(DsWitnessError::NotDominating { vertex: 0 })
        );
        assert_eq!(
            ds_witness_to_labeling(&red, &[0, 1, 2, 3]),
            Err(DsWitnessError::TooLarge { size: 4, bound: 3 })
        );
        assert_eq!(
            ds_witness_to_labeling(&red, &[9]),
            Err(DsWitnessError::VertexOutOfRange { vertex: 9 })
        );

        // A star is dominated by its centre alone.
        let red = ds_to_r3d(&Graph::star(5), 3);
        let f = ds_witness_to_labeling(&red, &[0]).unwrap();
        assert_eq!(f.weight(), 30);
    }

    #[test]
    fn ds_witness_at_full_budget() {
        // |S| = k pushes the witness weight exactly to the 12k target.
        let red = ds_to_r3d(&Graph::cycle(4), 3);
        let f = ds_witness_to_labeling(&red, &[0, 1, 2]).unwrap();
        assert_eq!(f.weight(), red.target);
        let s = extract_ds_from_labeling(&red, &f).unwrap();
        assert_eq!(s, vec![0, 1, 2]);
        assert!(s.len() <= red.k);
    }

    #[test]
    fn ds_extract_rejections() {
        let red = ds_to_r3d(&Graph::cycle(4), 3);
        let all3 = Labeling(vec![3; red.graph.n()]);
        assert_eq!(
            extract_ds_from_labeling(&red, &all3),
            Err(DsExtractError::Overweight { weight: 3 * 75, target: 36 })
        );
        // Zeroing a hub starves its B set and its relay.
        let mut f = ds_witness_to_labeling(&red, &[0, 2]).unwrap();
        f.0[red.x(1, 1) as usize] = 0;
        assert!(matches!(
            extract_ds_from_labeling(&red, &f),
            Err(DsExtractError::Invalid { .. })
        ));
    }

    #[test]
    fn ds_padding_round_trip() {
        // A single vertex with k = 1: padding appends two isolated vertices,
        // all of which must join the set, landing exactly on the bound.
        let red = ds_to_r3d(&Graph::new(1, &[]).unwrap(), 1);
        assert_eq!(red.k, 3);
        assert_eq!(red.source.n(), 3);
        let s = red.padded_set(&[0]);
        assert_eq!(s, vec![0, 1, 2]);
        let f = ds_witness_to_labeling(&red, &s).unwrap();
        assert_eq!(f.weight(), red.target);
        assert_eq!(extract_ds_from_labeling(&red, &f).unwrap(), s);
    }
}
