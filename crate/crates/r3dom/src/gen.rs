//! Seeded instance generators and exhaustive small-order catalogs.
//!
//! Generators are deterministic functions of a single 64-bit seed: all
//! randomness flows through [`seeded_rng`] and nothing else, so a fixed seed
//! reproduces an instance byte for byte. The catalogs enumerate every
//! non-isomorphic tree / connected block graph up to a small order and back
//! the exhaustive test suites.

use crate::graph::{Graph, VertexId};
use crate::reductions::X3cInstance;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

/// The one random generator used by everything in this crate: a ChaCha
/// stream cipher keyed by the 64-bit seed. Small, portable and stable across
/// platforms and releases.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `g` plus a fresh block: a clique on `anchor` and `size - 1` new vertices.
fn attach_clique(g: &Graph, anchor: VertexId, size: usize) -> Graph {
    let n = g.n();
    let mut edges = g.edges();
    let mut verts: Vec<VertexId> = vec![anchor];
    verts.extend((n..n + size - 1).map(|v| v as VertexId));
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            edges.push((u, v));
        }
    }
    Graph::new(n + size - 1, &edges).expect("attached block introduces no duplicate edges")
}

/// Random connected block graph on exactly `n_target` vertices: starting
/// from a single vertex, repeatedly attaches a clique of uniform random size
/// `2..=max_block_size` (capped so the target is hit exactly) at a uniform
/// random existing vertex. Every output is a connected block graph by
/// construction; a fixed seed yields a fixed graph.
pub fn gen_block_graph(seed: u64, n_target: usize, max_block_size: usize) -> Graph {
    assert!(max_block_size >= 2, "blocks need at least two vertices");
    assert!(n_target >= 1, "the graph needs at least one vertex");
    let mut rng = seeded_rng(seed);
    let mut g = Graph::new(1, &[]).unwrap();
    while g.n() < n_target {
        let cap = max_block_size.min(n_target - g.n() + 1);
        let size = rng.gen_range(2..=cap);
        let anchor = rng.gen_range(0..g.n()) as VertexId;
        g = attach_clique(&g, anchor, size);
    }
    g
}

/// Random tree on exactly `n_target` vertices: the `max_block_size = 2` case
/// of [`gen_block_graph`], i.e. a random recursive tree.
pub fn gen_tree(seed: u64, n_target: usize) -> Graph {
    gen_block_graph(seed, n_target, 2)
}

/// Random exact-3-cover instance over `3q` elements with `t >= q` triples:
/// plants an exact cover (a shuffled partition of the universe into `q`
/// triples, stored first at indices `0..q`) and then appends `t - q` random
/// triples, avoiding duplicates where the universe allows. Returns the
/// instance and the planted cover's indices.
pub fn gen_x3c(seed: u64, q: usize, t: usize) -> (X3cInstance, Vec<usize>) {
    assert!(q >= 1, "the universe must be nonempty");
    assert!(t >= q, "need at least enough triples for a cover");
    let mut rng = seeded_rng(seed);
    let mut elems: Vec<usize> = (0..3 * q).collect();
    elems.shuffle(&mut rng);
    let mut triples: Vec<[usize; 3]> = elems
        .chunks_exact(3)
        .map(|c| {
            let mut tri = [c[0], c[1], c[2]];
            tri.sort_unstable();
            tri
        })
        .collect();
    while triples.len() < t {
        // Retry a few times for a fresh triple; tiny universes may have to
        // repeat one.
        for attempt in 0..64 {
            let pick = rand::seq::index::sample(&mut rng, 3 * q, 3);
            let mut tri = [pick.index(0), pick.index(1), pick.index(2)];
            tri.sort_unstable();
            if !triples.contains(&tri) || attempt == 63 {
                triples.push(tri);
                break;
            }
        }
    }
    let inst = X3cInstance::new(3 * q, triples).expect("generated triples are in range");
    (inst, (0..q).collect())
}

// ==================================================================
// Exhaustive small-order catalogs
// ==================================================================

/// Rooted canonical encoding of a tree: children encodings sorted, so two
/// rooted trees are isomorphic iff their encodings match.
fn encode_rooted(g: &Graph, v: VertexId, parent: Option<VertexId>) -> String {
    let mut kids: Vec<String> = g
        .neighbors(v)
        .iter()
        .filter(|&&w| Some(w) != parent)
        .map(|&w| encode_rooted(g, w, Some(v)))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Canonical certificate of a free tree: the rooted encoding minimised over
/// the one or two centre vertices (found by peeling leaves).
fn tree_certificate(g: &Graph) -> String {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n as VertexId).map(|v| g.degree(v)).collect();
    let mut remaining = n;
    let mut frontier: Vec<VertexId> =
        (0..n as VertexId).filter(|&v| degree[v as usize] <= 1).collect();
    while remaining > 2 {
        let mut next = Vec::new();
        for &leaf in &frontier {
            remaining -= 1;
            for &w in g.neighbors(leaf) {
                degree[w as usize] -= 1;
                if degree[w as usize] == 1 {
                    next.push(w);
                }
            }
            degree[leaf as usize] = usize::MAX; // peeled
        }
        frontier = next;
    }
    frontier.iter().map(|&c| encode_rooted(g, c, None)).min().expect("trees have a centre")
}

/// All non-isomorphic trees on up to `max_n` vertices, grown by leaf
/// attachment and deduplicated by canonical certificate. Ordered by
/// increasing vertex count.
pub fn enumerate_trees(max_n: usize) -> Vec<Graph> {
    let mut all = Vec::new();
    if max_n == 0 {
        return all;
    }
    let mut layer = vec![Graph::new(1, &[]).unwrap()];
    all.extend(layer.iter().cloned());
    for n in 2..=max_n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &layer {
            for v in 0..t.n() as VertexId {
                let grown = attach_clique(t, v, 2);
                if seen.insert(tree_certificate(&grown)) {
                    next.push(grown);
                }
            }
        }
        debug_assert!(next.iter().all(|t| t.n() == n));
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// Calls `f` with every permutation of `0..n` (Heap's algorithm).
fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Canonical certificate of a small graph: the adjacency upper triangle
/// packed into a `u64`, minimised over all vertex permutations. Two graphs
/// on at most 11 vertices get equal codes iff they are isomorphic.
fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 11, "certificate packs at most 55 pair bits");
    let adj: Vec<u16> = (0..n as VertexId)
        .map(|v| g.neighbors(v).iter().fold(0u16, |m, &w| m | 1 << w))
        .collect();
    let mut best = u64::MAX;
    for_each_permutation(n, |perm| {
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if adj[perm[i]] >> perm[j] & 1 == 1 {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        best = best.min(code);
    });
    best
}

/// All non-isomorphic connected block graphs on up to `max_n` vertices,
/// grown by end-block attachment and deduplicated by canonical certificate.
/// Complete because every connected block graph on `n >= 2` vertices arises
/// from a smaller one by attaching one of its end blocks at the end block's
/// sole cut vertex. Ordered by increasing vertex count.
pub fn enumerate_connected_block_graphs(max_n: usize) -> Vec<Graph> {
    let mut all = Vec::new();
    if max_n == 0 {
        return all;
    }
    all.push(Graph::new(1, &[]).unwrap());
    let mut seen: Vec<HashSet<u64>> = vec![HashSet::new(); max_n + 1];
    seen[1].insert(canonical_code(&all[0]));
    let mut idx = 0;
    while idx < all.len() {
        let g = all[idx].clone();
        idx += 1;
        for size in 2..=max_n.saturating_sub(g.n()) + 1 {
            for anchor in 0..g.n() as VertexId {
                let grown = attach_clique(&g, anchor, size);
                if seen[grown.n()].insert(canonical_code(&grown)) {
                    all.push(grown);
                }
            }
        }
    }
    all.sort_by_key(Graph::n);
    all
}

// ==================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{check_block_graph, decompose};

    fn is_block_graph(g: &Graph) -> bool {
        check_block_graph(g, &decompose(g)).is_ok()
    }

    #[test]
    fn forced_smallest_output_is_an_edge() {
        let g = gen_block_graph(1, 2, 2);
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), vec![(0, 1)]);
    }

    #[test]
    fn generated_graphs_are_connected_block_graphs_of_exact_order() {
        for seed in 0..60 {
            let n = 1 + (seed as usize * 7) % 30;
            let g = gen_block_graph(seed, n, 2 + (seed as usize % 4));
            assert_eq!(g.n(), n);
            assert!(g.is_connected());
            assert!(is_block_graph(&g));
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = gen_block_graph(42, 25, 5);
        let b = gen_block_graph(42, 25, 5);
        assert_eq!(a, b);
        assert_ne!(a, gen_block_graph(43, 25, 5));
    }

    #[test]
    fn trees_are_trees() {
        for seed in 0..20 {
            let g = gen_tree(seed, 12);
            assert_eq!(g.n(), 12);
            assert_eq!(g.m(), 11);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn planted_cover_is_exact() {
        for seed in 0..30 {
            let (inst, planted) = gen_x3c(seed, 2 + seed as usize % 4, 6 + seed as usize % 5);
            assert_eq!(inst.check_cover(&planted), Ok(()));
        }
        let (inst, planted) = gen_x3c(7, 1, 1);
        assert_eq!(inst.triples(), &[[0, 1, 2]]);
        assert_eq!(planted, vec![0]);
        let (a, _) = gen_x3c(3, 3, 8);
        let (b, _) = gen_x3c(3, 3, 8);
        assert_eq!(a, b);
    }

    #[test]
    fn tree_catalog_counts() {
        let trees = enumerate_trees(8);
        let mut counts = [0usize; 9];
        for t in &trees {
            counts[t.n()] += 1;
            assert_eq!(t.m(), t.n() - 1);
            assert!(t.is_connected());
        }
        assert_eq!(counts, [0, 1, 1, 1, 2, 3, 6, 11, 23]);
        assert_eq!(trees.len(), 48);
    }

    #[test]
    fn block_graph_catalog_members_are_distinct_block_graphs() {
        let cat = enumerate_connected_block_graphs(6);
        let mut codes = HashSet::new();
        for g in &cat {
            assert!(g.is_connected());
            assert!(is_block_graph(g));
            // Codes are only canonical per order (a K3 and a K1,3 pack alike).
            assert!(codes.insert((g.n(), canonical_code(g))), "duplicate in catalog");
        }
        let mut counts = [0usize; 7];
        for g in &cat {
            counts[g.n()] += 1;
        }
        assert_eq!(counts[..5], [0, 1, 1, 2, 4]);
    }

    /// The catalog agrees with a brute-force sweep over every labeled graph:
    /// same number of isomorphism classes of connected block graphs.
    #[test]
    fn block_graph_catalog_is_complete_up_to_six() {
        let cat = enumerate_connected_block_graphs(6);
        for n in 1..=6usize {
            let from_catalog = cat.iter().filter(|g| g.n() == n).count();
            let pairs: Vec<(VertexId, VertexId)> = (0..n as VertexId)
                .flat_map(|u| (u + 1..n as VertexId).map(move |v| (u, v)))
                .collect();
            let mut classes = HashSet::new();
            for mask in 0u32..1 << pairs.len() {
                let edges: Vec<(VertexId, VertexId)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::new(n, &edges).unwrap();
                if g.is_connected() && is_block_graph(&g) {
                    classes.insert(canonical_code(&g));
                }
            }
            assert_eq!(from_catalog, classes.len(), "order {n}");
        }
    }
}
