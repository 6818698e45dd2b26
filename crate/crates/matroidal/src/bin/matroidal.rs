//! Command-line front end: parses instance files and dispatches to the
//! library solvers. Exit code 0 covers both feasible and reported-infeasible
//! outcomes; only hard errors (bad input, failed self-check) are nonzero.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use matroidal::apps::{self, RunReport};
use matroidal::io;
use matroidal::testkit;

#[derive(Parser)]
#[command(
    name = "matroidal",
    version,
    about = "Matroid intersection, union, and packing with instrumented dynamic-rank-oracle accounting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the full run report as JSON to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Print only instance/statistics lines, not the solution itself.
    #[arg(long, global = true)]
    stats_only: bool,
}

#[derive(Args)]
struct KArg {
    /// Number of disjoint independent sets / trees / forests.
    #[arg(short, long)]
    k: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum common independent set of two matroid files.
    Intersect {
        m1: PathBuf,
        m2: PathBuf,
        /// Stop early once shortest augmenting paths exceed 1/epsilon.
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Matroid union of one or more matroid files.
    Union { matroids: Vec<PathBuf> },
    /// k-fold union of a single matroid file.
    Kfold {
        matroid: PathBuf,
        #[command(flatten)]
        k: KArg,
    },
    /// k edge-disjoint spanning trees of a graph.
    Kdst {
        graph: PathBuf,
        #[command(flatten)]
        k: KArg,
    },
    /// k edge-disjoint forests of maximum total size.
    Kforest {
        graph: PathBuf,
        #[command(flatten)]
        k: KArg,
    },
    /// k edge-disjoint pseudoforests of maximum total size.
    Kpseudoforest {
        graph: PathBuf,
        #[command(flatten)]
        k: KArg,
    },
    /// f forests and p pseudoforests, edge-disjoint, maximum total size.
    Mixed {
        graph: PathBuf,
        #[arg(short = 'f', long)]
        forests: usize,
        #[arg(short = 'p', long)]
        pseudoforests: usize,
    },
    /// Minimum number of forests covering the edges.
    Arboricity { graph: PathBuf },
    /// Minimum number of pseudoforests covering the edges.
    Pseudoarboricity { graph: PathBuf },
    /// Maximum number of edge-disjoint spanning trees.
    TreePacking { graph: PathBuf },
    /// Who wins the Shannon switching game on this graph.
    Shannon { graph: PathBuf },
    /// Spanning tree with pairwise distinct edge colors.
    ColorfulSt { graph: PathBuf },
    /// Maximum forest of G1 that is simultaneously a forest of G2
    /// (edge bijection by line order).
    GraphicIntersect { g1: PathBuf, g2: PathBuf },
    /// Maximum matching of a bipartite graph.
    BipartiteMatching { graph: PathBuf },
    /// Two-machine job scheduling intersection.
    SchedulingIntersect { jobs: PathBuf },
    /// Common independent row sets of two matrices.
    LinearIntersect { a: PathBuf, b: PathBuf },
    /// Maximum forest buildable one edge per day before deadlines.
    ForestDeadlines { graph: PathBuf },
    /// Oracle-operation scaling measurements.
    Bench {
        /// query-scaling | rank-scaling | union-sparsification | basis
        #[arg(long, default_value = "query-scaling")]
        suite: String,
        #[arg(long, default_value_t = 0xA17)]
        seed: u64,
    },
    /// Randomized differential self-checks against brute-force oracles.
    Verify {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0x5EED)]
        seed: u64,
    },
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn graph(path: &PathBuf) -> Result<io::GraphInstance, String> {
    io::parse_graph(&read(path)?).map_err(|e| e.to_string())
}

fn run_report(cli: &Cli) -> Result<RunReport, String> {
    let report = match &cli.command {
        Command::Intersect { m1, m2, epsilon } => {
            let a = io::parse_matroid(&read(m1)?).map_err(|e| e.to_string())?;
            let b = io::parse_matroid(&read(m2)?).map_err(|e| e.to_string())?;
            apps::solve_intersect_generic(a, b, *epsilon)
        }
        Command::Union { matroids } => {
            if matroids.is_empty() {
                return Err("need at least one matroid file".into());
            }
            let ms: Result<Vec<_>, String> = matroids
                .iter()
                .map(|p| io::parse_matroid(&read(p)?).map_err(|e| e.to_string()))
                .collect();
            apps::solve_union_generic(ms?)
        }
        Command::Kfold { matroid, k } => {
            let m = io::parse_matroid(&read(matroid)?).map_err(|e| e.to_string())?;
            check_k(k.k, m.ground_size())?;
            apps::solve_kfold_generic(m, k.k)
        }
        Command::Kdst { graph: g, k } => {
            let g = graph(g)?;
            check_k(k.k, g.edges.len())?;
            apps::solve_kdst(&g, k.k)
        }
        Command::Kforest { graph: g, k } => {
            let g = graph(g)?;
            check_k(k.k, g.edges.len())?;
            apps::solve_kforest(&g, k.k)
        }
        Command::Kpseudoforest { graph: g, k } => {
            let g = graph(g)?;
            check_k(k.k, g.edges.len())?;
            apps::solve_kpseudoforest(&g, k.k)
        }
        Command::Mixed { graph: g, forests, pseudoforests } => {
            if forests + pseudoforests == 0 {
                return Err("need at least one forest or pseudoforest".into());
            }
            apps::solve_mixed(&graph(g)?, *forests, *pseudoforests)
        }
        Command::Arboricity { graph: g } => apps::solve_arboricity(&graph(g)?),
        Command::Pseudoarboricity { graph: g } => apps::solve_pseudoarboricity(&graph(g)?),
        Command::TreePacking { graph: g } => apps::solve_tree_packing(&graph(g)?),
        Command::Shannon { graph: g } => apps::solve_shannon(&graph(g)?),
        Command::ColorfulSt { graph: g } => apps::solve_colorful_st(&graph(g)?),
        Command::GraphicIntersect { g1, g2 } => {
            apps::solve_graphic_intersection(&graph(g1)?, &graph(g2)?)
        }
        Command::BipartiteMatching { graph: g } => apps::solve_bipartite_matching(&graph(g)?),
        Command::SchedulingIntersect { jobs } => {
            let jobs = io::parse_jobs(&read(jobs)?).map_err(|e| e.to_string())?;
            apps::solve_scheduling_intersect(&jobs)
        }
        Command::LinearIntersect { a, b } => {
            let a = io::parse_matrix(&read(a)?).map_err(|e| e.to_string())?;
            let b = io::parse_matrix(&read(b)?).map_err(|e| e.to_string())?;
            apps::solve_linear_intersect(a, b)
        }
        Command::ForestDeadlines { graph: g } => apps::solve_forest_deadlines(&graph(g)?),
        Command::Bench { .. } | Command::Verify { .. } => unreachable!(),
    };
    report.map_err(|e| e.to_string())
}

fn check_k(k: usize, n: usize) -> Result<(), String> {
    if k == 0 {
        return Err("k must be at least 1".into());
    }
    if k > n.max(1) {
        return Err(format!("k = {k} exceeds the ground-set size {n}"));
    }
    Ok(())
}

fn run_bench(suite: &str, seed: u64) -> Result<(), String> {
    let print = |rows: &[matroidal::bench::ScalingRow]| {
        println!(
            "{:<36} {:>12} {:>12} {:>10} {:>9}",
            "instance", "total ops", "solve ops", "norm", "wall ms"
        );
        for row in rows {
            println!(
                "{:<36} {:>12} {:>12} {:>10.3} {:>9.1}",
                row.label, row.total_ops, row.solve_ops, row.normalized, row.wall_ms
            );
        }
    };
    match suite {
        "query-scaling" => {
            let rows = matroidal::bench::matching_query_scaling(seed, 64, &[256, 1024, 4096])
                .map_err(|e| e.to_string())?;
            print(&rows);
        }
        "rank-scaling" => {
            let rows = matroidal::bench::matching_rank_scaling(seed, 4096, &[32, 64, 128])
                .map_err(|e| e.to_string())?;
            print(&rows);
        }
        "union-sparsification" => {
            let rows = matroidal::bench::union_sparsification(seed, 64, 2, &[512, 2048, 8192])
                .map_err(|e| e.to_string())?;
            print(&rows);
        }
        "basis" => {
            let p = matroidal::bench::basis_deletion_profile(seed, 64, 4096, 512)
                .map_err(|e| e.to_string())?;
            println!(
                "basis deletions on n={} r={}: max {} ops, avg {:.1} ops, budget {:.1}",
                p.n, p.r, p.max_ops_per_delete, p.avg_ops_per_delete, p.budget
            );
        }
        other => return Err(format!("unknown bench suite {other:?}")),
    }
    Ok(())
}

fn run_verify(trials: usize, seed: u64) -> bool {
    use rand::Rng;
    let mut ok = true;
    let mut check = |name: &str, pass: bool| {
        println!("{}  {name}", if pass { "PASS" } else { "FAIL" });
        ok &= pass;
    };

    let mut rng = testkit::rng(seed);
    let mut pass = true;
    for _ in 0..trials {
        let n = rng.gen_range(0..=10usize);
        let m1 = testkit::gen_instance(&mut rng, n);
        let m2 = testkit::gen_instance(&mut rng, n);
        let (expected, _) = testkit::brute_intersection(&m1, &m2).unwrap();
        let got = matroidal::intersection::intersect(Arc::new(m1), Arc::new(m2)).unwrap();
        pass &= got.len() == expected;
    }
    check("intersection vs subset enumeration", pass);

    let mut pass = true;
    for _ in 0..trials.div_ceil(2) {
        let n = rng.gen_range(1..=8usize);
        let k = rng.gen_range(1..=3usize);
        let m = testkit::gen_instance(&mut rng, n);
        let expected = testkit::brute_union(&m, k).unwrap();
        let (total, _) = matroidal::union::kfold_union(Arc::new(m), k).unwrap();
        pass &= total.len() == expected;
    }
    check("k-fold union vs the union rank formula", pass);

    let mut pass = true;
    for _ in 0..trials.div_ceil(4) {
        let n = rng.gen_range(1..=20usize);
        let m = testkit::gen_graphic(&mut rng, n);
        let mut oracle = matroidal::DynOracle::new(Arc::new(m.clone()));
        let mut x: Vec<matroidal::Element> = (0..n as u32).map(matroidal::Element).collect();
        let (mut d, _) = matroidal::basis::basis_init(&mut oracle, &x).unwrap();
        for _ in 0..n {
            let victim = x[rng.gen_range(0..x.len())];
            d.delete(&mut oracle, victim).unwrap();
            x.retain(|&e| e != victim);
            pass &= d.basis(&oracle) == testkit::greedy_basis(&m, &x);
        }
    }
    check("decremental basis vs greedy recompute", pass);

    let mut pass = true;
    for _ in 0..trials.div_ceil(4) {
        let left = rng.gen_range(1..=4usize);
        let right = rng.gen_range(2..=4usize);
        let arcs = rng.gen_range(0..=left * right);
        let (l, r, edges, a, b) = testkit::gen_bipartite_digraph(&mut rng, left, right, arcs);
        let (m1, m2, cand) =
            matroidal::matroids::gammoid_from_bipartite(l, r, &edges, a, b).unwrap();
        let mut g = testkit::exchange_graph_explicit(&m1, &m2, &cand).unwrap();
        g.e1.sort_unstable();
        g.e2.sort_unstable();
        let want = testkit::predicted_gammoid_exchange_graph(l, &edges, a, b);
        pass &= g == want;
    }
    check("gammoid construction reproduces its digraph", pass);
    ok
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Bench { suite, seed } => match run_bench(suite, *seed) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::FAILURE
            }
        },
        Command::Verify { trials, seed } => {
            if run_verify(*trials, *seed) {
                println!("all checks passed");
                ExitCode::SUCCESS
            } else {
                eprintln!("some checks FAILED");
                ExitCode::FAILURE
            }
        }
        _ => match run_report(&cli) {
            Ok(report) => {
                print!("{}", report.render_text(cli.stats_only));
                if let Some(path) = &cli.json {
                    match serde_json::to_string_pretty(&report) {
                        Ok(text) => {
                            if let Err(e) = std::fs::write(path, text) {
                                eprintln!("error: cannot write {}: {e}", path.display());
                                return ExitCode::FAILURE;
                            }
                        }
                        Err(e) => {
                            eprintln!("error: {e}");
                            return ExitCode::FAILURE;
                        }
                    }
                }
                if report.verified {
                    ExitCode::SUCCESS
                } else {
                    eprintln!("error: solution failed re-verification");
                    ExitCode::FAILURE
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::FAILURE
            }
        },
    }
}
