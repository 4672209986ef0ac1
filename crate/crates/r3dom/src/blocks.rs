//! Block (biconnected component) decomposition, cut vertices, and the
//! block-processing order used by the dynamic program.
//!
//! A *block* is a maximal subgraph with no cut vertex of its own: a maximal
//! 2-connected subgraph, a bridge edge, or an isolated vertex. Distinct
//! blocks share at most one vertex, necessarily a cut vertex, and the
//! blocks of a connected graph form a tree through their shared cut
//! vertices. A *block graph* is a graph in which every block is a clique.

use crate::graph::{Graph, VertexId};
use rand::Rng;

/// Index into [`BlockDecomposition::blocks`].
pub type BlockId = usize;

/// The blocks and cut vertices of a graph.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    /// Vertex sets of the blocks, each sorted ascending. Isolated vertices
    /// appear as singleton blocks.
    pub blocks: Vec<Vec<VertexId>>,
    /// `is_cut[v]` iff `v` lies in more than one block.
    pub is_cut: Vec<bool>,
    /// For each vertex, the ids of the blocks containing it (ascending).
    pub blocks_of: Vec<Vec<BlockId>>,
}

impl BlockDecomposition {
    /// Cut vertices, ascending.
    pub fn cut_vertices(&self) -> Vec<VertexId> {
        (0..self.is_cut.len() as VertexId).filter(|&v| self.is_cut[v as usize]).collect()
    }
}

const UNSET: u32 = u32::MAX;

/// Computes all blocks and cut vertices with an iterative depth-first
/// search (Hopcroft-Tarjan low-link with an explicit edge stack).
pub fn decompose(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let mut disc = vec![UNSET; n];
    let mut low = vec![0u32; n];
    let mut is_cut = vec![false; n];
    let mut blocks: Vec<Vec<VertexId>> = Vec::new();
    let mut estack: Vec<(VertexId, VertexId)> = Vec::new();
    let mut timer = 0u32;

    for r in 0..n as VertexId {
        if disc[r as usize] != UNSET {
            continue;
        }
        if g.degree(r) == 0 {
            blocks.push(vec![r]);
            continue;
        }
        // Frames: (vertex, parent, next adjacency index).
        let mut stack: Vec<(VertexId, VertexId, usize)> = vec![(r, UNSET, 0)];
        disc[r as usize] = timer;
        low[r as usize] = timer;
        timer += 1;
        let mut root_children = 0u32;
        while let Some(&mut (v, p, ref mut i)) = stack.last_mut() {
            if *i < g.degree(v) {
                let w = g.neighbors(v)[*i];
                *i += 1;
                if w == p {
                    continue; // the tree edge back to the parent
                }
                if disc[w as usize] == UNSET {
                    estack.push((v, w));
                    disc[w as usize] = timer;
                    low[w as usize] = timer;
                    timer += 1;
                    if v == r {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if disc[w as usize] < disc[v as usize] {
                    // Back edge to an ancestor; only record it once.
                    estack.push((v, w));
                    low[v as usize] = low[v as usize].min(disc[w as usize]);
                }
            } else {
                stack.pop();
                if let Some(&mut (u, _, _)) = stack.last_mut() {
                    low[u as usize] = low[u as usize].min(low[v as usize]);
                    if low[v as usize] >= disc[u as usize] {
                        // u separates v's subtree: the edges above (u, v) on
                        // the edge stack form one block.
                        let mut verts: Vec<VertexId> = Vec::new();
                        while let Some(e) = estack.pop() {
                            verts.push(e.0);
                            verts.push(e.1);
                            if e == (u, v) {
                                break;
                            }
                        }
                        verts.sort_unstable();
                        verts.dedup();
                        blocks.push(verts);
                        if u != r {
                            is_cut[u as usize] = true;
                        }
                    }
                }
            }
        }
        if root_children >= 2 {
            is_cut[r as usize] = true;
        }
    }

    let mut blocks_of = vec![Vec::new(); n];
    for (b, verts) in blocks.iter().enumerate() {
        for &v in verts {
            blocks_of[v as usize].push(b);
        }
    }
    BlockDecomposition { blocks, is_cut, blocks_of }
}

/// Error for graphs whose blocks are not all cliques.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("block {block:?} is not a clique: vertices {} and {} are not adjacent", missing.0, missing.1)]
pub struct NotBlockGraph {
    /// The offending block's vertices.
    pub block: Vec<VertexId>,
    /// A pair of block vertices with no edge between them.
    pub missing: (VertexId, VertexId),
}

/// Checks that every block of `g` is a clique, i.e. that `g` is a block
/// graph. On failure reports the first non-clique block found.
pub fn check_block_graph(g: &Graph, dec: &BlockDecomposition) -> Result<(), NotBlockGraph> {
    for verts in &dec.blocks {
        for (i, &u) in verts.iter().enumerate() {
            for &v in &verts[i + 1..] {
                if !g.has_edge(u, v) {
                    return Err(NotBlockGraph { block: verts.clone(), missing: (u, v) });
                }
            }
        }
    }
    Ok(())
}

/// One step of the block-processing order: compose `block` into the vertex
/// `anchor` shared with the rest of its component. The final block of each
/// component has no anchor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeelStep {
    pub block: BlockId,
    pub anchor: Option<VertexId>,
}

/// A processing order that peels end blocks first: every block appears
/// before the neighbouring block on its anchor's far side, and each
/// component's root block comes last with no anchor. Deterministic: the
/// root block of a component is the one with the smallest id, and blocks
/// are visited breadth-first.
pub fn end_block_order(dec: &BlockDecomposition) -> Vec<PeelStep> {
    order_from(dec, None::<&mut rand_chacha::ChaCha8Rng>)
}

/// Like [`end_block_order`] but with the component roots and the order of
/// enqueued blocks randomised. Any order produced here is valid for the
/// dynamic program; used to test order independence.
pub fn random_end_block_order(dec: &BlockDecomposition, rng: &mut impl Rng) -> Vec<PeelStep> {
    order_from(dec, Some(rng))
}

fn order_from(dec: &BlockDecomposition, mut rng: Option<&mut impl Rng>) -> Vec<PeelStep> {
    let nb = dec.blocks.len();
    let mut visited = vec![false; nb];
    let mut steps = Vec::with_capacity(nb);
    for b0 in 0..nb {
        if visited[b0] {
            continue;
        }
        // Component root: choose among this component's blocks. Gather them
        // by a throwaway traversal first so the random picker sees them all.
        let comp = component_blocks(dec, b0);
        let root = match rng.as_deref_mut() {
            Some(r) => comp[r.gen_range(0..comp.len())],
            None => comp[0],
        };
        visited[root] = true;
        let mut queue: Vec<(BlockId, Option<VertexId>)> = vec![(root, None)];
        let mut head = 0;
        let mut bfs: Vec<(BlockId, Option<VertexId>)> = Vec::new();
        while head < queue.len() {
            let (b, anchor) = queue[head];
            head += 1;
            bfs.push((b, anchor));
            for &c in &dec.blocks[b] {
                if !dec.is_cut[c as usize] || anchor == Some(c) {
                    continue;
                }
                for &b2 in &dec.blocks_of[c as usize] {
                    if !visited[b2] {
                        visited[b2] = true;
                        queue.push((b2, Some(c)));
                    }
                }
            }
            if let Some(r) = rng.as_deref_mut() {
                // Shuffle the not-yet-dequeued tail: deeper blocks may then
                // be interleaved arbitrarily, which is still a valid peel.
                for i in (head + 1..queue.len()).rev() {
                    let j = r.gen_range(head..=i);
                    queue.swap(i, j);
                }
            }
        }
        // Deepest blocks first; the root block closes the component.
        steps.extend(bfs.into_iter().rev().map(|(block, anchor)| PeelStep { block, anchor }));
    }
    steps
}

fn component_blocks(dec: &BlockDecomposition, b0: BlockId) -> Vec<BlockId> {
    let mut seen = vec![false; dec.blocks.len()];
    let mut out = vec![b0];
    seen[b0] = true;
    let mut head = 0;
    while head < out.len() {
        let b = out[head];
        head += 1;
        for &v in &dec.blocks[b] {
            for &b2 in &dec.blocks_of[v as usize] {
                if !seen[b2] {
                    seen[b2] = true;
                    out.push(b2);
                }
            }
        }
    }
    out.sort_unstable();
    out
}
