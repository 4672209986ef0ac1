//! Reference exact solvers, independent of the block dynamic program.
//!
//! Everything here works on arbitrary graphs and is deliberately simple: the
//! brute force and the per-state enumeration are the ground truth the
//! dynamic program is tested against, and the branch-and-bound provides
//! budgeted exact solving for graphs the dynamic program cannot handle.

use std::time::{Duration, Instant};

use crate::dp::{ExtWeight, Finite, Infeasible};
use crate::graph::{verify_labeling, Graph, Labeling, VertexId, DEMAND};

/// BFS order over all components, components taken by smallest start vertex.
fn bfs_order(g: &Graph) -> Vec<VertexId> {
    let n = g.n();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut head = order.len();
        order.push(s as VertexId);
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in g.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    g: &'a Graph,
    order: Vec<VertexId>,
    labels: Vec<u8>,
    assigned: Vec<bool>,
    /// Sum of labels already assigned to neighbours.
    sum: Vec<u32>,
    /// Count of not-yet-assigned neighbours.
    rem: Vec<u32>,
    best: u64,
    best_labels: Vec<u8>,
}

impl Search<'_> {
    /// `v` was just assigned; `v` and every assigned neighbour must still be
    /// able to meet its demand, even if all remaining neighbours take 3.
    fn still_satisfiable(&self, v: VertexId) -> bool {
        let check = |u: VertexId| -> bool {
            let d = DEMAND[self.labels[u as usize] as usize];
            d <= self.sum[u as usize] + 3 * self.rem[u as usize]
        };
        if !check(v) {
            return false;
        }
        self.g
            .neighbors(v)
            .iter()
            .all(|&u| !self.assigned[u as usize] || check(u))
    }

    fn run(&mut self, idx: usize, weight: u64) {
        if idx == self.order.len() {
            // Strictly better than the incumbent by the pruning below; every
            // constraint was checked when its last neighbour got assigned.
            self.best = weight;
            self.best_labels = self.labels.clone();
            return;
        }
        let v = self.order[idx];
        for l in 0..=3u8 {
            let w2 = weight + l as u64;
            if w2 >= self.best {
                break; // labels ascend and completions only add weight
            }
            self.labels[v as usize] = l;
            self.assigned[v as usize] = true;
            for &u in self.g.neighbors(v) {
                self.sum[u as usize] += l as u32;
                self.rem[u as usize] -= 1;
            }
            if self.still_satisfiable(v) {
                self.run(idx + 1, w2);
            }
            for &u in self.g.neighbors(v) {
                self.sum[u as usize] -= l as u32;
                self.rem[u as usize] += 1;
            }
            self.assigned[v as usize] = false;
        }
    }
}

/// Exact minimum-weight Roman {3}-dominating function by pruned exhaustive
/// search. Works on any graph (intended for n up to roughly 12-14).
pub fn brute_force(g: &Graph) -> (u64, Labeling) {
    let n = g.n();
    if n == 0 {
        return (0, Labeling(Vec::new()));
    }
    let mut s = Search {
        g,
        order: bfs_order(g),
        labels: vec![0; n],
        assigned: vec![false; n],
        sum: vec![0; n],
        rem: (0..n).map(|v| g.degree(v as VertexId) as u32).collect(),
        best: 3 * n as u64, // the all-3 labelling is always valid
        best_labels: vec![3; n],
    };
    s.run(0, 0);
    debug_assert!(verify_labeling(g, &Labeling(s.best_labels.clone())).unwrap().valid);
    (s.best, Labeling(s.best_labels))
}

/// Number of rooted-state slots tracked by the dynamic program: nine public
/// states plus two relaxed bookkeeping variants (see below).
pub const STATE_SLOTS: usize = 11;

/// Per-state minimum weights at a root vertex, by full enumeration of all
/// 4^n labellings. Slot `i` is the cheapest labelling satisfying:
///
/// * `0..=3` — the labelling is valid everywhere and the root has label `i`;
/// * `4`, `5`, `6` — root labelled 0, neighbour labels sum to exactly 2, 1,
///   0 respectively, and every *other* vertex is satisfied in the graph with
///   the root deleted;
/// * `7`, `8` — root labelled 1, neighbour labels sum to exactly 1, 0, and
///   every other vertex is satisfied in the graph with the root deleted;
/// * `9`, `10` — relaxed variants of 7, 8: root labelled 1, neighbour labels
///   sum to exactly 1, 0, and every other vertex is satisfied in the *whole*
///   graph (the root's 1 counts for its neighbours).
///
/// Slots 4..=10 leave the root's own demand unmet; some neighbour added
/// later must supply the difference.
pub fn d_state_minima(g: &Graph, root: VertexId) -> [ExtWeight; STATE_SLOTS] {
    let n = g.n();
    assert!(n >= 1 && n <= 16, "state enumeration is 4^n; n={n} unsupported");
    assert!((root as usize) < n);
    let root_nbr: Vec<bool> = {
        let mut b = vec![false; n];
        for &w in g.neighbors(root) {
            b[w as usize] = true;
        }
        b
    };
    let mut best = [Infeasible; STATE_SLOTS];
    let mut f = vec![0u8; n];
    let total: u64 = 1u64 << (2 * n);
    for code in 0..total {
        for (i, fi) in f.iter_mut().enumerate() {
            *fi = ((code >> (2 * i)) & 3) as u8;
        }
        let mut valid_full = true; // every vertex satisfied in g
        let mut valid_minus = true; // every non-root vertex satisfied in g - root
        let mut valid_count = true; // every non-root vertex satisfied in g
        let mut isum = 0u32; // sum of labels on the root's neighbours
        for v in 0..n {
            let s: u32 = g
                .neighbors(v as VertexId)
                .iter()
                .map(|&w| f[w as usize] as u32)
                .sum();
            if v == root as usize {
                isum = s;
                if s < DEMAND[f[v] as usize] {
                    valid_full = false;
                }
                continue;
            }
            let d = DEMAND[f[v] as usize];
            if s < d {
                valid_full = false;
                valid_count = false;
            }
            let s_minus = s - if root_nbr[v] { f[root as usize] as u32 } else { 0 };
            if s_minus < d {
                valid_minus = false;
            }
        }
        let w = Finite(f.iter().map(|&l| l as u64).sum());
        let l = f[root as usize];
        let mut upd = |slot: usize| {
            if w < best[slot] {
                best[slot] = w;
            }
        };
        if valid_full {
            upd(l as usize);
        }
        if l == 0 && valid_minus {
            match isum {
                2 => upd(4),
                1 => upd(5),
                0 => upd(6),
                _ => {}
            }
        }
        if l == 1 {
            if valid_minus {
                match isum {
                    1 => upd(7),
                    0 => upd(8),
                    _ => {}
                }
            }
            if valid_count {
                match isum {
                    1 => upd(9),
                    0 => upd(10),
                    _ => {}
                }
            }
        }
    }
    best
}

/// Node and wall-clock limits for [`branch_and_bound`]. `None` means
/// unlimited.
#[derive(Clone, Copy, Debug, Default)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

/// Outcome of a budgeted search. `exact` is true iff the search space was
/// exhausted; otherwise `weight` is the best incumbent found in budget.
#[derive(Clone, Debug)]
pub struct BnbOutcome {
    pub weight: u64,
    pub labeling: Labeling,
    pub exact: bool,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BnbError {
    #[error("warm-start labeling is not a valid Roman {{3}}-dominating function")]
    InvalidWarmStart,
}

struct Bnb<'a> {
    g: &'a Graph,
    order: Vec<VertexId>,
    labels: Vec<u8>,
    assigned: Vec<bool>,
    sum: Vec<u32>,
    rem: Vec<u32>,
    best: u64,
    best_labels: Vec<u8>,
    nodes: u64,
    budget: SearchBudget,
    started: Instant,
    stopped: bool,
    // scratch for the lower bound: vertices claimed as helpers, by stamp
    claimed: Vec<u64>,
    stamp: u64,
}

impl Bnb<'_> {
    fn out_of_budget(&mut self) -> bool {
        if self.stopped {
            return true;
        }
        if let Some(limit) = self.budget.max_nodes {
            if self.nodes >= limit {
                self.stopped = true;
            }
        }
        if let Some(limit) = self.budget.max_time {
            if self.nodes % 1024 == 0 && self.started.elapsed() >= limit {
                self.stopped = true;
            }
        }
        self.stopped
    }

    /// Admissible lower bound on the weight still to be added: collect
    /// assigned vertices whose demand is short and whose unassigned
    /// neighbourhoods are pairwise disjoint; each needs ceil(deficit / 3)
    /// more label mass among its own helpers.
    fn lower_bound(&mut self) -> u64 {
        self.stamp += 1;
        let mut lb = 0u64;
        'verts: for u in 0..self.g.n() {
            if !self.assigned[u] {
                continue;
            }
            let d = DEMAND[self.labels[u] as usize];
            if d <= self.sum[u] {
                continue;
            }
            let deficit = d - self.sum[u];
            for &w in self.g.neighbors(u as VertexId) {
                if !self.assigned[w as usize] && self.claimed[w as usize] == self.stamp {
                    continue 'verts;
                }
            }
            for &w in self.g.neighbors(u as VertexId) {
                if !self.assigned[w as usize] {
                    self.claimed[w as usize] = self.stamp;
                }
            }
            lb += deficit.div_ceil(3) as u64;
        }
        lb
    }

    fn still_satisfiable(&self, v: VertexId) -> bool {
        let check = |u: VertexId| -> bool {
            let d = DEMAND[self.labels[u as usize] as usize];
            d <= self.sum[u as usize] + 3 * self.rem[u as usize]
        };
        check(v)
            && self
                .g
                .neighbors(v)
                .iter()
                .all(|&u| !self.assigned[u as usize] || check(u))
    }

    fn run(&mut self, idx: usize, weight: u64) {
        self.nodes += 1;
        if self.out_of_budget() {
            return;
        }
        if idx == self.order.len() {
            self.best = weight;
            self.best_labels = self.labels.clone();
            return;
        }
        let v = self.order[idx];
        for l in 0..=3u8 {
            let w2 = weight + l as u64;
            if w2 >= self.best {
                break;
            }
            self.labels[v as usize] = l;
            self.assigned[v as usize] = true;
            for &u in self.g.neighbors(v) {
                self.sum[u as usize] += l as u32;
                self.rem[u as usize] -= 1;
            }
            if self.still_satisfiable(v) && w2 + self.lower_bound() < self.best {
                self.run(idx + 1, w2);
            }
            for &u in self.g.neighbors(v) {
                self.sum[u as usize] -= l as u32;
                self.rem[u as usize] += 1;
            }
            self.assigned[v as usize] = false;
            if self.stopped {
                return;
            }
        }
    }
}

/// Budgeted branch-and-bound for the minimum-weight Roman {3}-dominating
/// function on an arbitrary graph. Vertices are assigned in non-increasing
/// degree order; an optional valid warm-start labelling seeds the incumbent.
pub fn branch_and_bound(
    g: &Graph,
    budget: SearchBudget,
    warm_start: Option<&Labeling>,
) -> Result<BnbOutcome, BnbError> {
    let n = g.n();
    let mut best = 3 * n as u64;
    let mut best_labels = vec![3u8; n];
    if let Some(w) = warm_start {
        let report = verify_labeling(g, w).map_err(|_| BnbError::InvalidWarmStart)?;
        if !report.valid {
            return Err(BnbError::InvalidWarmStart);
        }
        if report.weight < best {
            best = report.weight;
            best_labels = w.0.clone();
        }
    }
    if n == 0 {
        return Ok(BnbOutcome { weight: 0, labeling: Labeling(Vec::new()), exact: true, nodes: 0 });
    }
    let mut order: Vec<VertexId> = (0..n as VertexId).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut s = Bnb {
        g,
        order,
        labels: vec![0; n],
        assigned: vec![false; n],
        sum: vec![0; n],
        rem: (0..n).map(|v| g.degree(v as VertexId) as u32).collect(),
        best,
        best_labels,
        nodes: 0,
        budget,
        started: Instant::now(),
        stopped: false,
        claimed: vec![0; n],
        stamp: 0,
    };
    s.run(0, 0);
    Ok(BnbOutcome {
        weight: s.best,
        labeling: Labeling(s.best_labels),
        exact: !s.stopped,
        nodes: s.nodes,
    })
}

/// One minimum dominating set (every vertex is in the set or adjacent to a
/// member), by branch-and-bound on the closed neighbourhood of the first
/// undominated vertex. Intended for n up to about 20.
pub fn min_dominating_set(g: &Graph) -> Vec<VertexId> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    // Greedy incumbent: repeatedly take the vertex dominating the most
    // still-undominated vertices (smallest id on ties).
    let mut dominated = vec![false; n];
    let mut greedy = Vec::new();
    while dominated.iter().any(|&d| !d) {
        let mut pick = 0;
        let mut gain = 0usize;
        for v in 0..n {
            let c = std::iter::once(v as VertexId)
                .chain(g.neighbors(v as VertexId).iter().copied())
                .filter(|&u| !dominated[u as usize])
                .count();
            if c > gain {
                gain = c;
                pick = v;
            }
        }
        greedy.push(pick as VertexId);
        dominated[pick] = true;
        for &u in g.neighbors(pick as VertexId) {
            dominated[u as usize] = true;
        }
    }
    greedy.sort_unstable();

    struct Mds<'a> {
        g: &'a Graph,
        max_span: usize, // largest closed neighbourhood size
        cover_count: Vec<u32>,
        cur: Vec<VertexId>,
        best: Vec<VertexId>,
    }
    impl Mds<'_> {
        fn run(&mut self) {
            let undominated: Vec<VertexId> = (0..self.g.n() as VertexId)
                .filter(|&v| self.cover_count[v as usize] == 0)
                .collect();
            if undominated.is_empty() {
                self.best = self.cur.clone();
                self.best.sort_unstable();
                return;
            }
            let need = undominated.len().div_ceil(self.max_span) as usize;
            if self.cur.len() + need >= self.best.len() {
                return;
            }
            let v = undominated[0];
            let mut branch: Vec<VertexId> = std::iter::once(v)
                .chain(self.g.neighbors(v).iter().copied())
                .collect();
            branch.sort_by_key(|&u| (std::cmp::Reverse(self.g.degree(u)), u));
            for u in branch {
                self.cur.push(u);
                self.cover_count[u as usize] += 1;
                for &w in self.g.neighbors(u) {
                    self.cover_count[w as usize] += 1;
                }
                self.run();
                for &w in self.g.neighbors(u) {
                    self.cover_count[w as usize] -= 1;
                }
                self.cover_count[u as usize] -= 1;
                self.cur.pop();
            }
        }
    }
    let max_span = (0..n).map(|v| g.degree(v as VertexId) + 1).max().unwrap();
    let mut s = Mds { g, max_span, cover_count: vec![0; n], cur: Vec::new(), best: greedy };
    s.run();
    s.best
}
