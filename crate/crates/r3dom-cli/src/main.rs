//! `r3dom`: exact Roman {3}-domination tooling over plain-text files.
//!
//! Subcommands:
//!
//! * `solve --algo block-dp|brute|bnb [--budget-ms T] <graph>` — exact (or
//!   budgeted) minimum weight, as one JSON object on stdout.
//! * `verify <graph> <labeling>` — check a labelling, reporting every
//!   violated vertex; exit code 0 iff valid.
//! * `reduce x3c <instance>` / `reduce ds --k K <graph>` — build a hardness
//!   gadget, writing a role-annotated graph file plus a JSON sidecar.
//! * `gen block-graph|tree|x3c` — seeded instance generators.
//! * `bench --algo A --family F --sizes 100,200,400 --seed S` — timing runs,
//!   one CSV row per size (minimum wall time over several repetitions).
//!
//! Exit codes: 0 success/valid, 1 invalid-but-well-formed (a failed
//! verification, a solver refusal), 2 usage or parse errors.

use clap::{Parser, Subcommand, ValueEnum};
use r3dom::dp::solve_block_graph;
use r3dom::files;
use r3dom::gen;
use r3dom::graph::{verify_labeling, Graph, Labeling};
use r3dom::oracle::{branch_and_bound, brute_force, SearchBudget};
use r3dom::reductions::{ds_to_r3d, x3c_to_split, DsReduction, SplitReduction};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

#[derive(Parser)]
#[command(name = "r3dom", version, about = "Exact solvers for Roman {3}-domination")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a minimum-weight Roman {3}-dominating function of a graph.
    Solve {
        /// Solver: the block-graph program, the brute-force oracle, or
        /// branch and bound.
        #[arg(long, value_enum, default_value_t = Algo::BlockDp)]
        algo: Algo,
        /// Time budget for `--algo bnb` (without it the search runs to
        /// proven optimality).
        #[arg(long)]
        budget_ms: Option<u64>,
        /// Graph file.
        graph: PathBuf,
    },
    /// Check a labelling against a graph.
    Verify {
        /// Graph file.
        graph: PathBuf,
        /// Labelling file (one label per line).
        labeling: PathBuf,
    },
    /// Build a hardness-gadget instance from a source problem.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Generate a seeded random instance.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Time a solver on a family of growing instances; CSV on stdout.
    Bench {
        #[arg(long, value_enum, default_value_t = Algo::BlockDp)]
        algo: Algo,
        #[arg(long, value_enum)]
        family: Family,
        /// Comma-separated instance orders, e.g. `100,200,400`.
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Exact 3-cover to a split graph with weight target 7q.
    X3c {
        /// Exact-3-cover instance file.
        instance: PathBuf,
        /// Output graph file (default: `<instance>.reduced`); the JSON
        /// sidecar lands next to it with `.json` appended.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dominating set (bound k) to a graph with weight target 12k.
    Ds {
        /// The dominating-set bound.
        #[arg(long)]
        k: usize,
        /// Source graph file.
        graph: PathBuf,
        /// Output graph file (default: `<graph>.reduced`); the JSON sidecar
        /// lands next to it with `.json` appended.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Random connected block graph on exactly n vertices.
    BlockGraph {
        #[arg(long)]
        n: usize,
        /// Largest clique size attached while growing.
        #[arg(long, default_value_t = 4)]
        max_block: usize,
        #[arg(long)]
        seed: u64,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random tree on exactly n vertices.
    Tree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random exact-3-cover instance with a planted cover.
    X3c {
        /// Cover size: the universe has 3q elements.
        #[arg(long)]
        q: usize,
        /// Total number of triples (at least q).
        #[arg(long)]
        t: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    /// Cut-tree dynamic program, exact on block graphs.
    BlockDp,
    /// Exhaustive search with pruning, exact on anything small.
    Brute,
    /// Branch and bound, exact unless the budget runs out.
    Bnb,
}

impl Algo {
    fn id(self) -> &'static str {
        match self {
            Algo::BlockDp => "block-dp",
            Algo::Brute => "brute",
            Algo::Bnb => "bnb",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Complete graphs: one block of size n (the cubic worst case).
    Clique,
    /// Random trees.
    Tree,
    /// Random block graphs with blocks of up to 5 vertices.
    Random,
}

impl Family {
    fn id(self) -> &'static str {
        match self {
            Family::Clique => "clique",
            Family::Tree => "tree",
            Family::Random => "random",
        }
    }

    /// The instance this family assigns to (n, seed): deterministic, with
    /// the per-size seed mixed from the run seed and n.
    fn instance(self, n: usize, seed: u64) -> Graph {
        let mixed = seed.wrapping_add(n as u64);
        match self {
            Family::Clique => Graph::complete(n),
            Family::Tree => gen::gen_tree(mixed, n),
            Family::Random => gen::gen_block_graph(mixed, n, 5),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Dispatches a parsed command. `Err` is reserved for usage, IO and file
/// parse problems (exit code 2); domain outcomes choose their own code.
fn run(cmd: Cmd) -> Result<ExitCode, String> {
    match cmd {
        Cmd::Solve { algo, budget_ms, graph } => solve(algo, budget_ms, &graph),
        Cmd::Verify { graph, labeling } => verify(&graph, &labeling),
        Cmd::Reduce(cmd) => reduce(cmd),
        Cmd::Gen(cmd) => generate(cmd),
        Cmd::Bench { algo, family, sizes, seed } => bench(algo, family, &sizes, seed),
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph, String> {
    let (g, _roles) = files::parse_graph(&read_file(path)?)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(g)
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), String> {
    match path {
        Some(path) => {
            std::fs::write(path, content).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

// ==================================================================
// solve & verify
// ==================================================================

/// Runs `algo` once, returning (weight, labelling, exactness) or the
/// block-graph refusal.
fn run_algo(
    algo: Algo,
    g: &Graph,
    budget_ms: Option<u64>,
) -> Result<(u64, Labeling, bool), r3dom::blocks::NotBlockGraph> {
    match algo {
        Algo::BlockDp => {
            let sol = solve_block_graph(g)?;
            Ok((sol.weight, sol.labeling, true))
        }
        Algo::Brute => {
            let (weight, labeling) = brute_force(g);
            Ok((weight, labeling, true))
        }
        Algo::Bnb => {
            let budget = SearchBudget {
                max_nodes: None,
                max_time: budget_ms.map(Duration::from_millis),
            };
            let out = branch_and_bound(g, budget, None).expect("no warm start to reject");
            Ok((out.weight, out.labeling, out.exact))
        }
    }
}

fn solve(algo: Algo, budget_ms: Option<u64>, graph: &Path) -> Result<ExitCode, String> {
    if budget_ms.is_some() && algo != Algo::Bnb {
        return Err("--budget-ms only applies to --algo bnb".to_string());
    }
    let g = read_graph(graph)?;
    let start = Instant::now();
    match run_algo(algo, &g, budget_ms) {
        Ok((weight, labeling, exact)) => {
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;
            let out = json!({
                "weight": weight,
                "labels": labeling.0,
                "algo": algo.id(),
                "exact": exact,
                "wall_ms": wall_ms,
            });
            println!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Err(refusal) => {
            let out = json!({
                "error": {
                    "kind": "not_block_graph",
                    "block": refusal.block,
                    "missing": [refusal.missing.0, refusal.missing.1],
                    "message": refusal.to_string(),
                }
            });
            println!("{out}");
            Ok(ExitCode::FAILURE)
        }
    }
}

fn verify(graph: &Path, labeling: &Path) -> Result<ExitCode, String> {
    let g = read_graph(graph)?;
    let f = files::parse_labeling(&read_file(labeling)?)
        .map_err(|e| format!("{}: {e}", labeling.display()))?;
    match verify_labeling(&g, &f) {
        Ok(report) => {
            let violations: Vec<_> = report
                .violations
                .iter()
                .map(|v| {
                    json!({
                        "vertex": v.vertex,
                        "label": v.label,
                        "required": v.required,
                        "actual": v.actual,
                    })
                })
                .collect();
            let out = json!({
                "valid": report.valid,
                "weight": report.weight,
                "violations": violations,
            });
            println!("{out}");
            Ok(if report.valid { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        // Well-formed files that do not fit each other (e.g. a labelling of
        // the wrong length) are an invalid pair, not a parse error.
        Err(e) => {
            println!("{}", json!({ "valid": false, "weight": null, "error": e.to_string() }));
            Ok(ExitCode::FAILURE)
        }
    }
}

// ==================================================================
// reduce
// ==================================================================

fn split_sidecar(red: &SplitReduction) -> serde_json::Value {
    json!({
        "kind": "x3c-to-split",
        "target": red.target,
        "padding": {
            "universe_before": red.original_universe,
            "triples_before": red.original_triples,
            "padded": red.dummy_triple().is_some(),
        },
        "counts": {
            "n": red.graph.n(),
            "m": red.graph.m(),
            "elements": 3 * red.q,
            "triples": red.t(),
            "copies": 6 * red.q,
            "guards": 20 * red.q,
        },
    })
}

fn ds_sidecar(red: &DsReduction) -> serde_json::Value {
    json!({
        "kind": "ds-to-r3d",
        "target": red.target,
        "padding": {
            "k_before": red.original_k,
            "k": red.k,
            "n_before": red.original_n,
            "n": red.source.n(),
        },
        "counts": {
            "n": red.graph.n(),
            "m": red.graph.m(),
            "copies": 3 * red.source.n(),
            "b_sets": 3 * red.k * red.source.n(),
            "hubs": 3 * red.k,
            "relays": 3 * red.k,
            "guards": 3 * red.k,
        },
    })
}

fn reduce(cmd: ReduceCmd) -> Result<ExitCode, String> {
    let (input, out, graph_text, sidecar) = match cmd {
        ReduceCmd::X3c { instance, out } => {
            let (inst, _planted) = files::parse_x3c(&read_file(&instance)?)
                .map_err(|e| format!("{}: {e}", instance.display()))?;
            let red = x3c_to_split(&inst);
            let roles: Vec<_> =
                red.roles.iter().enumerate().map(|(v, r)| (v as u32, r.tag())).collect();
            (instance, out, files::write_graph(&red.graph, &roles), split_sidecar(&red))
        }
        ReduceCmd::Ds { k, graph, out } => {
            if k == 0 {
                return Err("--k must be at least 1".to_string());
            }
            let g = read_graph(&graph)?;
            let red = ds_to_r3d(&g, k);
            let roles: Vec<_> =
                red.roles.iter().enumerate().map(|(v, r)| (v as u32, r.tag())).collect();
            (graph, out, files::write_graph(&red.graph, &roles), ds_sidecar(&red))
        }
    };
    let graph_path = out.unwrap_or_else(|| {
        let mut p = input.into_os_string();
        p.push(".reduced");
        PathBuf::from(p)
    });
    let mut sidecar_path = graph_path.clone().into_os_string();
    sidecar_path.push(".json");
    let sidecar_path = PathBuf::from(sidecar_path);
    write_output(Some(&graph_path), &graph_text)?;
    write_output(Some(&sidecar_path), &format!("{sidecar}\n"))?;
    let summary = json!({
        "graph": graph_path.display().to_string(),
        "sidecar": sidecar_path.display().to_string(),
        "target": sidecar["target"],
    });
    println!("{summary}");
    Ok(ExitCode::SUCCESS)
}

// ==================================================================
// gen & bench
// ==================================================================

fn generate(cmd: GenCmd) -> Result<ExitCode, String> {
    match cmd {
        GenCmd::BlockGraph { n, max_block, seed, out } => {
            if n == 0 {
                return Err("--n must be at least 1".to_string());
            }
            if max_block < 2 {
                return Err("--max-block must be at least 2".to_string());
            }
            let g = gen::gen_block_graph(seed, n, max_block);
            write_output(out.as_deref(), &files::write_graph(&g, &[]))?;
        }
        GenCmd::Tree { n, seed, out } => {
            if n == 0 {
                return Err("--n must be at least 1".to_string());
            }
            let g = gen::gen_tree(seed, n);
            write_output(out.as_deref(), &files::write_graph(&g, &[]))?;
        }
        GenCmd::X3c { q, t, seed, out } => {
            if q == 0 {
                return Err("--q must be at least 1".to_string());
            }
            if t < q {
                return Err("--t must be at least --q".to_string());
            }
            let (inst, planted) = gen::gen_x3c(seed, q, t);
            write_output(out.as_deref(), &files::write_x3c(&inst, Some(&planted)))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Repetition count for an order-n timing run: enough repetitions to steady
/// small measurements, few for expensive ones.
fn bench_reps(n: usize) -> u32 {
    let n = n as u64;
    (40_000_000 / (n * n * n).max(1)).clamp(3, 500) as u32
}

fn bench(algo: Algo, family: Family, sizes: &str, seed: u64) -> Result<ExitCode, String> {
    let sizes: Vec<usize> = sizes
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| format!("bad size {s:?} in --sizes")))
        .collect::<Result<_, _>>()?;
    if sizes.is_empty() {
        return Err("--sizes must name at least one order".to_string());
    }
    println!("algo,family,n,m,seed,wall_ms,weight");
    for n in sizes {
        let g = family.instance(n, seed);
        let mut best = Duration::MAX;
        let mut weight = 0;
        for _ in 0..bench_reps(n) {
            let start = Instant::now();
            let result = run_algo(algo, &g, None)
                .map_err(|e| format!("{} refused order {n}: {e}", algo.id()))?;
            best = best.min(start.elapsed());
            weight = result.0;
        }
        println!(
            "{},{},{},{},{},{:.3},{}",
            algo.id(),
            family.id(),
            n,
            g.m(),
            seed,
            best.as_secs_f64() * 1e3,
            weight
        );
    }
    Ok(ExitCode::SUCCESS)
}
