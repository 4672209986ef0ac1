//! Acceptance suite: eight end-to-end checks covering solver correctness,
//! per-state recurrence semantics, reduction witnesses, generator structure,
//! cubic scaling and algebraic properties. Each check prints one
//! `criterion N (...): PASS|FAIL` line (visible under `--nocapture`) and
//! fails the build on any violation.
//!
//! Run alone with:
//!
//! ```text
//! cargo test -p r3dom-cli --test acceptance -- --test-threads=1 --nocapture
//! ```

use r3dom::blocks::{check_block_graph, decompose, random_end_block_order};
use r3dom::dp::{solve_block_graph, solve_block_graph_traced, solve_block_graph_with_order};
use r3dom::gen;
use r3dom::graph::{verify_labeling, Graph, VertexId};
use r3dom::oracle::{branch_and_bound, brute_force, d_state_minima, min_dominating_set, SearchBudget};
use r3dom::reductions::{
    ds_to_r3d, ds_witness_to_labeling, extract_cover_from_labeling, extract_ds_from_labeling,
    is_split_partition, x3c_to_split, x3c_witness_to_labeling, X3cInstance,
};
use std::time::{Duration, Instant};

/// Prints the one-line verdict for a criterion, then panics if it failed.
fn report(number: usize, name: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("criterion {number} ({name}): PASS");
    } else {
        println!("criterion {number} ({name}): FAIL — {} violation(s)", failures.len());
        for f in failures.iter().take(12) {
            println!("  {f}");
        }
        panic!("criterion {number} ({name}): {} violation(s)", failures.len());
    }
}

/// The shared instance pool for criteria 1 and 2: 500 seeded random
/// connected block graphs on up to 12 vertices plus every tree on up to 8.
fn oracle_instances() -> Vec<(String, Graph)> {
    let mut pool = Vec::new();
    for seed in 0..500u64 {
        let n = 1 + (seed % 12) as usize;
        let max_block = 2 + (seed % 3) as usize;
        let g = gen::gen_block_graph(seed, n, max_block);
        pool.push((format!("gen_block_graph(seed={seed}, n={n}, max_block={max_block})"), g));
    }
    for (i, t) in gen::enumerate_trees(8).into_iter().enumerate() {
        pool.push((format!("tree #{i} on {} vertices", t.n()), t));
    }
    pool
}

/// The worked 8-vertex example: a triangle and a K4 glued at one cut
/// vertex, with a pendant path hanging off the K4. Optimum weight 5.
fn glued_fixture() -> Graph {
    Graph::new(
        8,
        &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (2, 5), (2, 6), (4, 5), (4, 6), (5, 6), (6, 7)],
    )
    .unwrap()
}

/// Six elements, four triples, unique exact cover {0, 2}.
fn six_element_instance() -> X3cInstance {
    X3cInstance::new(6, vec![[0, 1, 2], [0, 1, 3], [3, 4, 5], [1, 4, 5]]).unwrap()
}

#[test]
fn criterion_1_oracle_equivalence() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (desc, g) in &oracle_instances() {
        let dp = solve_block_graph(g).unwrap_or_else(|e| panic!("{desc}: refused: {e}"));
        let (brute, _) = brute_force(g);
        if dp.weight != brute {
            failures.push(format!("{desc}: block-dp {} != brute {brute}", dp.weight));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(120) {
        failures.push(format!("suite took {elapsed:.1?}, budget is 2 minutes"));
    }
    report(1, "oracle equivalence", failures);
}

#[test]
fn criterion_2_witness_soundness() {
    let mut failures = Vec::new();
    for (desc, g) in &oracle_instances() {
        let sol = solve_block_graph(g).unwrap_or_else(|e| panic!("{desc}: refused: {e}"));
        match verify_labeling(g, &sol.labeling) {
            Ok(rep) if rep.valid && rep.weight == sol.weight => {}
            Ok(rep) => failures.push(format!(
                "{desc}: labelling valid={} weight={} vs reported {}",
                rep.valid, rep.weight, sol.weight
            )),
            Err(e) => failures.push(format!("{desc}: malformed labelling: {e}")),
        }
    }
    report(2, "witness soundness", failures);
}

#[test]
fn criterion_3_fixed_value_fixtures() {
    let mut failures = Vec::new();
    // (name, graph, expected weight, solvable by the block DP?)
    let fixtures: Vec<(&str, Graph, u64, bool)> = vec![
        ("K1", Graph::complete(1), 2, true),
        ("P2", Graph::path(2), 3, true),
        ("P3", Graph::path(3), 3, true),
        ("K3", Graph::complete(3), 3, true),
        ("C4", Graph::cycle(4), 4, false),
        ("K1,4", Graph::star(4), 3, true),
        ("glued 8-vertex example", glued_fixture(), 5, true),
    ];
    for (name, g, want, block) in &fixtures {
        let (brute, _) = brute_force(g);
        if brute != *want {
            failures.push(format!("{name}: brute {brute} != expected {want}"));
        }
        if *block {
            match solve_block_graph(g) {
                Ok(sol) if sol.weight == *want => {}
                Ok(sol) => failures.push(format!("{name}: block-dp {} != {want}", sol.weight)),
                Err(e) => failures.push(format!("{name}: refused: {e}")),
            }
        }
    }
    report(3, "fixed-value fixtures", failures);
}

#[test]
fn criterion_4_per_state_recurrence_semantics() {
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for g in &gen::enumerate_connected_block_graphs(7) {
        let (_, trace) = solve_block_graph_traced(g).expect("catalog graphs are block graphs");
        for entry in &trace {
            let sub = g.induced(&entry.subtree);
            let root = entry.subtree.iter().position(|&v| v == entry.anchor).unwrap() as VertexId;
            let want = d_state_minima(&sub, root);
            let got = entry.vector.states();
            for i in 0..got.len() {
                checked += 1;
                if got[i] != want[i] {
                    failures.push(format!(
                        "n={} subtree={:?} root={}: state {i} is {:?}, enumeration says {:?}",
                        g.n(),
                        entry.subtree,
                        entry.anchor,
                        got[i],
                        want[i]
                    ));
                }
            }
        }
    }
    assert!(checked > 1000, "the catalog sweep must actually exercise the recurrences");
    report(4, "per-state recurrence semantics", failures);
}

#[test]
fn criterion_5_reduction_witnesses() {
    let mut failures = Vec::new();

    // Exact 3-cover side: the six-element instance, cover {0, 2}.
    let red = x3c_to_split(&six_element_instance());
    if red.target != 14 || red.target != 7 * red.q as u64 {
        failures.push(format!("split target {} != 7q = 14", red.target));
    }
    match x3c_witness_to_labeling(&red, &[0, 2]) {
        Ok(f) => {
            let rep = verify_labeling(&red.graph, &f).unwrap();
            if !rep.valid || rep.weight != 14 {
                failures.push(format!(
                    "cover witness: valid={} weight={} (want valid at 14)",
                    rep.valid, rep.weight
                ));
            }
            match extract_cover_from_labeling(&red, &f) {
                Ok(cover) if cover == vec![0, 2] => {}
                Ok(cover) => failures.push(format!("round trip returned {cover:?}, not [0, 2]")),
                Err(e) => failures.push(format!("round trip failed: {e}")),
            }
            // A budgeted warm-started search must confirm the witness: on a
            // yes-instance nothing beats the target.
            let budget = SearchBudget {
                max_nodes: Some(50_000),
                max_time: Some(Duration::from_secs(30)),
            };
            let out = branch_and_bound(&red.graph, budget, Some(&f)).unwrap();
            if out.weight != 14 {
                failures.push(format!("warm-started search moved the incumbent to {}", out.weight));
            } else if let Err(e) = extract_cover_from_labeling(&red, &out.labeling) {
                failures.push(format!("incumbent does not extract: {e}"));
            }
        }
        Err(e) => failures.push(format!("cover witness rejected: {e}")),
    }

    // Dominating-set side: C4 with k = 3.
    let c4 = Graph::cycle(4);
    let red = ds_to_r3d(&c4, 3);
    let (n, k) = (4u64, 3u64);
    if red.graph.n() as u64 != 3 * n + 3 * k * n + 9 * k {
        failures.push(format!("gadget order {} != 3n + 3kn + 9k = 75", red.graph.n()));
    }
    if red.target != 12 * k {
        failures.push(format!("gadget target {} != 12k = 36", red.target));
    }
    for s in [vec![0u32, 2], vec![0, 1, 2]] {
        match ds_witness_to_labeling(&red, &s) {
            Ok(f) => {
                let want = 3 * s.len() as u64 + 9 * k;
                let rep = verify_labeling(&red.graph, &f).unwrap();
                if !rep.valid || rep.weight != want {
                    failures.push(format!(
                        "set witness {s:?}: valid={} weight={} (want valid at {want})",
                        rep.valid, rep.weight
                    ));
                }
                if rep.weight <= red.target {
                    match extract_ds_from_labeling(&red, &f) {
                        Ok(back) if back.len() <= k as usize => {}
                        Ok(back) => failures.push(format!("extracted set too big: {back:?}")),
                        Err(e) => failures.push(format!("set witness {s:?} round trip: {e}")),
                    }
                }
            }
            Err(e) => failures.push(format!("set witness {s:?} rejected: {e}")),
        }
    }
    report(5, "reduction witnesses", failures);
}

#[test]
fn criterion_6_structural_validators() {
    let mut failures = Vec::new();
    for seed in 0..1000u64 {
        let n = 1 + (seed % 40) as usize;
        let max_block = 2 + (seed % 4) as usize;
        let g = gen::gen_block_graph(seed, n, max_block);
        if g.n() != n || !g.is_connected() {
            failures.push(format!("seed {seed}: generator broke its own contract"));
        }
        if let Err(e) = check_block_graph(&g, &decompose(&g)) {
            failures.push(format!("seed {seed}: not a block graph: {e}"));
        }

        let q = 1 + (seed % 4) as usize;
        let pool = 3 * q;
        let distinct = pool * (pool - 1) * (pool - 2) / 6;
        let t = (q + (seed % 5) as usize).min(distinct);
        let (inst, _) = gen::gen_x3c(seed, q, t);
        let red = x3c_to_split(&inst);
        if !is_split_partition(&red.graph, &red.clique_side(), &red.independent_side()) {
            failures.push(format!("seed {seed}: q={q} t={t}: gadget is not split"));
        }
    }
    report(6, "structural validators", failures);
}

#[test]
fn criterion_7_cubic_scaling() {
    let start = Instant::now();
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_r3dom"))
        .args(["bench", "--family", "clique", "--sizes", "100,200,400", "--seed", "7"])
        .output()
        .expect("bench run");
    let mut failures = Vec::new();
    if !out.status.success() {
        failures.push(format!("bench exited with {:?}", out.status.code()));
    }
    let text = String::from_utf8(out.stdout).unwrap();
    let mut wall = Vec::new();
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        wall.push((fields[2].parse::<u32>().unwrap(), fields[5].parse::<f64>().unwrap()));
    }
    if wall.len() != 3 {
        failures.push(format!("expected 3 CSV rows, got {}", wall.len()));
    } else {
        for pair in wall.windows(2) {
            let ((n0, w0), (n1, w1)) = (pair[0], pair[1]);
            let ratio = w1 / w0;
            println!("  K_{n0} -> K_{n1}: {w0:.3} ms -> {w1:.3} ms, ratio {ratio:.2}");
            if !(4.0..=16.0).contains(&ratio) {
                failures.push(format!(
                    "doubling K_{n0} -> K_{n1} scaled wall time by {ratio:.2}, outside [4, 16]"
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(300) {
        failures.push(format!("bench took {elapsed:.1?}, budget is 5 minutes"));
    }
    report(7, "cubic scaling", failures);
}

#[test]
fn criterion_8_property_suites() {
    let mut failures = Vec::new();

    // Positive-label support is a dominating set.
    for seed in 0..200u64 {
        let g = gen::gen_block_graph(seed, 2 + (seed % 11) as usize, 2 + (seed % 3) as usize);
        let f = solve_block_graph(&g).unwrap().labeling;
        for v in 0..g.n() as VertexId {
            let covered = f.0[v as usize] > 0
                || g.neighbors(v).iter().any(|&w| f.0[w as usize] > 0);
            if !covered {
                failures.push(format!("support: seed {seed} vertex {v} undominated"));
            }
        }
    }

    // Sandwich between the domination number and three times it.
    for seed in 0..200u64 {
        let g = gen::gen_block_graph(seed, 1 + (seed % 10) as usize, 2 + (seed % 3) as usize);
        let gamma = min_dominating_set(&g).len() as u64;
        let w = solve_block_graph(&g).unwrap().weight;
        if !(gamma <= w && w <= 3 * gamma) {
            failures.push(format!("sandwich: seed {seed}: γ={gamma}, weight {w}"));
        }
    }

    // Adding an edge never increases the optimum.
    let mut tested = 0;
    let mut seed = 0u64;
    while tested < 200 {
        let g = gen::gen_block_graph(seed, 2 + (seed % 8) as usize, 2 + (seed % 3) as usize);
        seed += 1;
        let mut non_edges = Vec::new();
        for u in 0..g.n() as VertexId {
            for v in u + 1..g.n() as VertexId {
                if !g.has_edge(u, v) {
                    non_edges.push((u, v));
                }
            }
        }
        let Some(&(u, v)) = non_edges.get(seed as usize % non_edges.len().max(1)) else {
            continue; // complete graph: nothing to add
        };
        let mut edges = g.edges();
        edges.push((u, v));
        let denser = Graph::new(g.n(), &edges).unwrap();
        let before = brute_force(&g).0;
        let after = brute_force(&denser).0;
        if after > before {
            failures.push(format!(
                "monotonicity: seed {}: +({u},{v}) raised {before} to {after}",
                seed - 1
            ));
        }
        tested += 1;
    }

    // Disjoint unions decompose additively.
    for seed in 0..200u64 {
        let g1 = gen::gen_block_graph(2 * seed + 1, 1 + (seed % 8) as usize, 2 + (seed % 3) as usize);
        let g2 = gen::gen_block_graph(2 * seed + 2, 1 + (seed % 5) as usize, 2 + (seed % 4) as usize);
        let both = g1.disjoint_union(&g2);
        let (w1, w2) = (solve_block_graph(&g1).unwrap().weight, solve_block_graph(&g2).unwrap().weight);
        let w = solve_block_graph(&both).unwrap().weight;
        if w != w1 + w2 {
            failures.push(format!("additivity: seed {seed}: {w} != {w1} + {w2}"));
        }
    }

    // The answer does not depend on the peel order.
    for seed in 0..200u64 {
        let g = gen::gen_block_graph(seed, 3 + (seed % 10) as usize, 2 + (seed % 3) as usize);
        let base = solve_block_graph(&g).unwrap().weight;
        let dec = decompose(&g);
        for round in 0..5u64 {
            let steps = random_end_block_order(&dec, &mut gen::seeded_rng(seed * 31 + round));
            let sol = solve_block_graph_with_order(&g, &steps).unwrap();
            let rep = verify_labeling(&g, &sol.labeling).unwrap();
            if sol.weight != base || !rep.valid || rep.weight != base {
                failures.push(format!(
                    "order independence: seed {seed} round {round}: weight {} vs {base}, valid={}",
                    sol.weight, rep.valid
                ));
            }
        }
    }

    report(8, "property suites", failures);
}
