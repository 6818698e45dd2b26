//! Acceptance suite: one test per criterion, each printing a pass line with
//! its measured numbers (run with `--nocapture` to see them). Expected
//! values come from independent oracles: subset enumeration, the
//! matroid-union rank formula, densest-subgraph scans, greedy recomputation,
//! and vertex-disjoint-path max flow.

use std::sync::Arc;
use std::time::Instant;

use matroidal::basis::basis_init;
use matroidal::bench;
use matroidal::intersection::{intersect, Intersection, PhaseOutcome};
use matroidal::io::parse_graph;
use matroidal::matroids::{gammoid_from_bipartite, vertex_disjoint_paths, MatroidInstance};
use matroidal::testkit;
use matroidal::union::{covering, kfold_union, matroid_union};
use matroidal::{DynOracle, Element};
use rand::Rng;

/// 1. Intersection exactness: 1000 seeded random pairs over mixed kinds,
/// ground sets up to 12; solver size must equal brute force in every trial.
#[test]
fn criterion_1_intersection_exactness() {
    let start = Instant::now();
    let mut rng = testkit::rng(0xACC1);
    for trial in 0..1000 {
        let n = rng.gen_range(0..=12usize);
        let m1 = testkit::gen_instance(&mut rng, n);
        let m2 = testkit::gen_instance(&mut rng, n);
        let (expected, witness) = testkit::brute_intersection(&m1, &m2).unwrap();
        assert_eq!(m1.rank_of(&witness).unwrap(), expected);
        let got = intersect(Arc::new(m1), Arc::new(m2)).unwrap();
        assert_eq!(got.len(), expected, "trial {trial}");
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 60.0, "took {secs:.1}s, budget 60s");
    println!("criterion 1 PASS: 1000/1000 intersection sizes exact ({secs:.1}s)");
}

/// 2. Union exactness: 500 seeded random instances (n <= 10, k <= 3,
/// graphic/partition); both union drivers must match the rank formula.
#[test]
fn criterion_2_union_exactness() {
    let start = Instant::now();
    let mut rng = testkit::rng(0xACC2);
    for trial in 0..500 {
        let n = rng.gen_range(1..=10usize);
        let k = rng.gen_range(1..=3usize);
        let m = if rng.gen_bool(0.5) {
            testkit::gen_graphic(&mut rng, n)
        } else {
            testkit::gen_partition(&mut rng, n)
        };
        let expected = testkit::brute_union(&m, k).unwrap();
        let (fold, classes) = kfold_union(Arc::new(m.clone()), k).unwrap();
        assert_eq!(fold.len(), expected, "k-fold, trial {trial}");
        for class in &classes {
            assert_eq!(m.rank_of(class).unwrap(), class.len());
        }
        let arcs: Vec<Arc<MatroidInstance>> = (0..k).map(|_| Arc::new(m.clone())).collect();
        let (general, _) = matroid_union(arcs).unwrap();
        assert_eq!(general.len(), expected, "general, trial {trial}");
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 60.0, "took {secs:.1}s, budget 60s");
    println!("criterion 2 PASS: 500/500 union sizes exact ({secs:.1}s)");
}

/// 3. Query-count scaling: with r = 64 fixed, the per-element normalized
/// cost varies by less than 4x across n in {256, 1024, 4096}; with n = 4096
/// fixed, growing r from 32 to 128 grows the operation count sublinearly
/// (by less than the 4x a linear-in-r dependence would give).
#[test]
fn criterion_3_query_count_scaling() {
    let start = Instant::now();
    let rows = bench::matching_query_scaling(0xACC3, 64, &[256, 1024, 4096]).unwrap();
    for row in &rows {
        assert_eq!(row.solution, 64, "planted matching must be found");
    }
    let lo = rows.iter().map(|r| r.normalized).fold(f64::MAX, f64::min);
    let hi = rows.iter().map(|r| r.normalized).fold(0.0, f64::max);
    assert!(
        hi / lo < 4.0,
        "normalized ops vary {:.2}x across sizes (limit 4x)",
        hi / lo
    );
    let ranks = bench::matching_rank_scaling(0xACC3, 4096, &[32, 128]).unwrap();
    let ratio = ranks[1].total_ops as f64 / ranks[0].total_ops as f64;
    assert!(ratio < 4.0, "ops grew {ratio:.2}x for 4x rank (must be sublinear)");
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 300.0, "took {secs:.1}s, budget 300s");
    println!(
        "criterion 3 PASS: normalized spread {:.2}x < 4, rank growth {ratio:.2}x < 4 ({secs:.1}s)",
        hi / lo
    );
}

/// 4. Union sparsification payoff: graphic k = 2 at |V| = 64; operations
/// beyond the linear initialization grow by less than 1.5x while the edge
/// count grows 16x.
#[test]
fn criterion_4_union_sparsification() {
    let start = Instant::now();
    let rows = bench::union_sparsification(0xACC4, 64, 2, &[512, 2048, 8192]).unwrap();
    for row in &rows {
        assert_eq!(row.solution, 126, "two disjoint spanning trees must fill 2(|V|-1)");
    }
    let lo = rows.iter().map(|r| r.solve_ops).min().unwrap() as f64;
    let hi = rows.iter().map(|r| r.solve_ops).max().unwrap() as f64;
    assert!(
        hi / lo < 1.5,
        "post-initialization ops grew {:.3}x across 16x edges (limit 1.5x)",
        hi / lo
    );
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 300.0, "took {secs:.1}s, budget 300s");
    println!(
        "criterion 4 PASS: solve ops grew {:.3}x while |E| grew 16x ({secs:.1}s)",
        hi / lo
    );
}

/// 5. k disjoint spanning trees on K_{2k} for k = 2..8, verified spanning
/// and pairwise edge-disjoint, each under five seconds.
#[test]
fn criterion_5_kdst_on_complete_graphs() {
    for k in 2..=8usize {
        let start = Instant::now();
        let v = 2 * k;
        let mut text = format!("n {v} m {}\n", v * (v - 1) / 2);
        for u in 0..v {
            for w in u + 1..v {
                text.push_str(&format!("{u} {w}\n"));
            }
        }
        let g = parse_graph(&text).unwrap();
        let report = matroidal::apps::solve_kdst(&g, k).unwrap();
        assert!(report.feasible, "K_{{{v}}} must pack {k} spanning trees");
        assert!(report.verified);
        assert_eq!(report.solution_size, k * (v - 1));
        let secs = start.elapsed().as_secs_f64();
        assert!(secs < 5.0, "k = {k} took {secs:.2}s, budget 5s");
    }
    println!("criterion 5 PASS: K_2k packs k disjoint spanning trees for k = 2..=8");
}

/// 6. Arboricity equals the densest-subgraph bound on every simple graph
/// with at most 6 vertices (exhaustive) and on K_n up to n = 12.
#[test]
fn criterion_6_arboricity_exhaustive() {
    let start = Instant::now();
    let mut checked = 0usize;
    for v in 1..=6usize {
        let pairs: Vec<(u32, u32)> = (0..v as u32)
            .flat_map(|a| (a + 1..v as u32).map(move |b| (a, b)))
            .collect();
        for mask in 0..1u64 << pairs.len() {
            let ends: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let expected = testkit::nash_williams_arboricity(v, &ends);
            let m = MatroidInstance::graphic(v, ends.clone()).unwrap();
            let got = if ends.is_empty() { 0 } else { covering(Arc::new(m)).unwrap().value };
            assert_eq!(got, expected, "graph on {v} vertices, edges {ends:?}");
            checked += 1;
        }
    }
    for v in 2..=12usize {
        let ends: Vec<(u32, u32)> = (0..v as u32)
            .flat_map(|a| (a + 1..v as u32).map(move |b| (a, b)))
            .collect();
        let expected = ends.len().div_ceil(v - 1);
        let m = MatroidInstance::graphic(v, ends).unwrap();
        assert_eq!(covering(Arc::new(m)).unwrap().value, expected, "K_{v}");
        checked += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 120.0, "took {secs:.1}s, budget 120s");
    println!("criterion 6 PASS: {checked} graphs match the densest-subgraph bound ({secs:.1}s)");
}

/// 7. Decremental basis: 200 random instances with full deletion sequences
/// stay equal to the from-scratch greedy basis at every step; measured
/// per-deletion cost stays under 50 sqrt(r) log2(n) on instances up to
/// n = 4096.
#[test]
fn criterion_7_decremental_basis() {
    let start = Instant::now();
    let mut rng = testkit::rng(0xACC7);
    for trial in 0..200 {
        let n = rng.gen_range(1..=64usize);
        let m = match trial % 3 {
            0 => testkit::gen_graphic(&mut rng, n),
            1 => testkit::gen_partition(&mut rng, n),
            _ => testkit::gen_linear(&mut rng, n),
        };
        let mut oracle = DynOracle::new(Arc::new(m.clone()));
        let mut x: Vec<Element> = (0..n as u32).map(Element).collect();
        let (mut d, basis) = basis_init(&mut oracle, &x).unwrap();
        assert_eq!(basis, testkit::greedy_basis(&m, &x));
        let r = basis.len().max(1);
        let budget = 50.0 * (r as f64).sqrt() * (n.max(2) as f64).log2();
        while !x.is_empty() {
            let victim = x[rng.gen_range(0..x.len())];
            let before = oracle.stats().total_ops();
            let replacement = d.delete(&mut oracle, victim).unwrap();
            let cost = (oracle.stats().total_ops() - before) as f64;
            assert!(cost <= budget, "delete cost {cost} over budget {budget} (n={n})");
            x.retain(|&e| e != victim);
            assert_eq!(d.basis(&oracle), testkit::greedy_basis(&m, &x), "trial {trial}");
            if let Some(y) = replacement {
                assert!(m.weight(y) > m.weight(victim));
            }
        }
    }
    // operation-count bound on large instances
    let mut worst = 0f64;
    for &(v, n) in &[(64usize, 1024usize), (64, 4096), (12, 4096)] {
        let profile = bench::basis_deletion_profile(0xACC7, v, n, 400).unwrap();
        worst = worst.max(profile.max_ops_per_delete as f64 / profile.budget);
        assert!(
            (profile.max_ops_per_delete as f64) <= profile.budget,
            "n={n}: max {} ops over budget {}",
            profile.max_ops_per_delete,
            profile.budget
        );
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 180.0, "took {secs:.1}s, budget 180s");
    println!(
        "criterion 7 PASS: greedy-exact over 200 full deletion sequences; \
         worst large-instance delete at {:.0}% of the 50 sqrt(r) log n budget ({secs:.1}s)",
        worst * 100.0
    );
}

/// 8. Blocking-flow structure: the recomputed shortest distance strictly
/// increases per phase, and the baseline's total augmenting-path length
/// stays within 20 r ln r on each of 100 random instances.
#[test]
fn criterion_8_blocking_flow_structure() {
    let mut rng = testkit::rng(0xACC8);
    let mut phase_runs = 0usize;
    for _ in 0..60 {
        let n = rng.gen_range(2..=12usize);
        let m1 = testkit::gen_instance(&mut rng, n);
        let m2 = testkit::gen_instance(&mut rng, n);
        let mut solver = Intersection::new(Arc::new(m1), Arc::new(m2)).unwrap();
        let mut last = 0usize;
        loop {
            match solver.blocking_flow_phase(None).unwrap().outcome {
                PhaseOutcome::Optimal => break,
                PhaseOutcome::Advanced { d_t, .. } => {
                    assert!(d_t > last, "phase distance did not increase: {last} -> {d_t}");
                    last = d_t;
                    phase_runs += 1;
                }
                PhaseOutcome::TooDeep { .. } => unreachable!(),
            }
        }
    }
    for trial in 0..100 {
        let n = rng.gen_range(2..=12usize);
        let m1 = testkit::gen_instance(&mut rng, n);
        let m2 = testkit::gen_instance(&mut rng, n);
        let mut solver = Intersection::new(Arc::new(m1), Arc::new(m2)).unwrap();
        solver.run_baseline().unwrap();
        let r = solver.solution().len();
        let total: usize = solver.path_lengths.iter().sum();
        let budget = 20.0 * (r.max(2) as f64) * (r.max(2) as f64).ln();
        assert!(
            total as f64 <= budget,
            "trial {trial}: path lengths sum {total} over budget {budget:.1}"
        );
    }
    println!(
        "criterion 8 PASS: d_t strictly increased across {phase_runs} phases; \
         100/100 baselines within the 20 r ln r path-length budget"
    );
}

/// 9. The four-vertex deadline instance: maximum forest size 3 with a valid
/// day-by-day schedule.
#[test]
fn criterion_9_deadline_example() {
    let g = parse_graph("n 4 m 4\n0 1 dl=1\n0 1 dl=3\n1 2 dl=2\n2 3 dl=2\n").unwrap();
    let report = matroidal::apps::solve_forest_deadlines(&g).unwrap();
    assert_eq!(report.solution_size, 3);
    assert!(report.verified);
    let schedule = report.schedule.as_ref().unwrap();
    assert_eq!(schedule.len(), 3);
    let mut days: Vec<u32> = schedule.iter().map(|e| e.day).collect();
    days.sort_unstable();
    days.dedup();
    assert_eq!(days.len(), 3, "one edge per day");
    println!(
        "criterion 9 PASS: deadline instance builds a forest of 3 ({})",
        schedule
            .iter()
            .map(|e| format!("day {}: {}", e.day, e.item))
            .collect::<Vec<_>>()
            .join(", ")
    );
}

/// 10. Gammoid adversarial suite: for 100 random bipartite digraphs, the
/// exchange graph of the candidate set matches the closed-form prediction
/// edge for edge (the input digraph, the two terminal edges, and the
/// boundary edges forced by downward closure), and the number of
/// augmentations the solver performs equals the digraph's vertex-disjoint
/// (a, b)-path count from max flow.
#[test]
fn criterion_10_gammoid_adversarial() {
    let mut rng = testkit::rng(0xACC10);
    for trial in 0..100 {
        let left = rng.gen_range(1..=5usize);
        let right = rng.gen_range(2..=5usize);
        let arcs = rng.gen_range(0..=left * right);
        let (l, r, edges, a, b) = testkit::gen_bipartite_digraph(&mut rng, left, right, arcs);
        let (m1, m2, candidate) = gammoid_from_bipartite(l, r, &edges, a, b).unwrap();
        let mut got = testkit::exchange_graph_explicit(&m1, &m2, &candidate).unwrap();
        got.e1.sort_unstable();
        got.e2.sort_unstable();
        let want = testkit::predicted_gammoid_exchange_graph(l, &edges, a, b);
        assert_eq!(got, want, "trial {trial}: exchange graph mismatch");
        let flow = vertex_disjoint_paths(l + r, &edges, &[a], &[b]);
        let mut solver = Intersection::new(Arc::new(m1), Arc::new(m2)).unwrap();
        solver.seed_solution(&candidate).unwrap();
        let mut augmentations = 0;
        while solver.augment_one().unwrap().is_some() {
            augmentations += 1;
        }
        assert_eq!(augmentations, flow, "trial {trial}: augmentation count");
        // solving from scratch reaches the same size
        let full_size = solver.solution().len();
        let (m1b, m2b, _) = gammoid_from_bipartite(l, r, &edges, a, b).unwrap();
        let fresh = intersect(Arc::new(m1b), Arc::new(m2b)).unwrap();
        assert_eq!(fresh.len(), full_size);
    }
    println!(
        "criterion 10 PASS: 100/100 digraphs reproduced edge-for-edge; \
         augmentation counts equal max-flow path counts"
    );
}
