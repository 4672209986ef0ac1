//! Exact solvers for the Roman {3}-domination problem.
//!
//! A Roman {3}-dominating function labels every vertex of a graph with
//! 0, 1, 2 or 3 such that every vertex labelled 0 sees a total of at least 3
//! on its neighbours, and every vertex labelled 1 sees at least 2. The
//! minimum total weight of such a labelling is the Roman {3}-domination
//! number of the graph.
//!
//! The crate provides:
//!
//! * [`graph`] — compact undirected graphs, labellings, verification;
//! * [`blocks`] — block/cut-vertex decomposition and the block processing
//!   order used by the dynamic program;
//! * [`dp`] — an exact O(n + m + Σk³) dynamic program over the blocks of a
//!   block graph (every block a clique);
//! * [`oracle`] — reference exact solvers (exponential brute force, a
//!   branch-and-bound with budgets, per-state minima, minimum dominating
//!   set) used to cross-check the dynamic program;
//! * [`reductions`] — polynomial reductions from exact 3-cover and from
//!   dominating set into Roman {3}-domination instances, with witness
//!   labellings and solution extraction;
//! * [`gen`] — seeded instance generators and small-graph enumerators;
//! * [`files`] — plain-text file formats for graphs, labellings and exact
//!   3-cover instances.

pub mod blocks;
pub mod dp;
pub mod files;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod reductions;
