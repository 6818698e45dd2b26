//! Seeded measurement runs for the oracle-operation scaling experiments.
//! Used by the `bench` CLI subcommand and by the acceptance suite; trials
//! fan out across threads, one oracle per thread.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::elem::Element;
use crate::error::Result;
use crate::intersection::Intersection;
use crate::matroids::MatroidInstance;
use crate::testkit;
use crate::union::MatroidUnion;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScalingRow {
    pub label: String,
    pub n: usize,
    pub r: usize,
    pub total_ops: u64,
    /// Operations after the linear initialization scans (union runs).
    pub solve_ops: u64,
    /// total_ops / (n * sqrt(r) * log2(n)^2) for intersection rows.
    pub normalized: f64,
    pub solution: usize,
    pub wall_ms: f64,
}

fn run_matching(seed: u64, r: usize, n: usize) -> Result<ScalingRow> {
    let mut rng = testkit::rng(seed);
    let extra = n.saturating_sub(r);
    let (m1, m2, _) = testkit::gen_bipartite_matching(&mut rng, r, extra);
    let start = std::time::Instant::now();
    let mut solver = Intersection::new(Arc::new(m1), Arc::new(m2))?;
    solver.run()?;
    let ops = solver.stats().total_ops();
    let log2n = (n.max(2) as f64).log2();
    Ok(ScalingRow {
        label: format!("matching n={n} r={r}"),
        n,
        r,
        total_ops: ops,
        solve_ops: ops,
        normalized: ops as f64 / (n as f64 * (r as f64).sqrt() * log2n * log2n),
        solution: solver.solution().len(),
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Bipartite matching with fixed rank and growing ground set: the
/// per-element cost (ops normalized by n * sqrt(r) * log^2 n) should stay
/// flat.
pub fn matching_query_scaling(seed: u64, r: usize, sizes: &[usize]) -> Result<Vec<ScalingRow>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = sizes
            .iter()
            .map(|&n| scope.spawn(move || run_matching(seed ^ n as u64, r, n)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("bench thread panicked")).collect()
    })
}

/// Fixed ground set, growing rank: operation counts should grow clearly
/// sublinearly in r.
pub fn matching_rank_scaling(seed: u64, n: usize, ranks: &[usize]) -> Result<Vec<ScalingRow>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranks
            .iter()
            .map(|&r| scope.spawn(move || run_matching(seed ^ (r as u64) << 32, r, n)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("bench thread panicked")).collect()
    })
}

fn run_union(seed: u64, vertices: usize, edges: usize, k: usize) -> Result<ScalingRow> {
    let mut rng = testkit::rng(seed);
    let ends = testkit::gen_graph(&mut rng, vertices, edges);
    let m = MatroidInstance::graphic(vertices, ends)?;
    let start = std::time::Instant::now();
    let mut solver = MatroidUnion::new_kfold(Arc::new(m), k)?;
    solver.run()?;
    let solution = solver.total().len();
    Ok(ScalingRow {
        label: format!("graphic union |V|={vertices} |E|={edges} k={k}"),
        n: edges,
        r: vertices - 1,
        total_ops: solver.stats().total_ops(),
        solve_ops: solver.solve_stats().total_ops(),
        normalized: solver.solve_stats().total_ops() as f64,
        solution,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Graphic k-fold union at fixed |V| and growing |E|: everything beyond the
/// linear initialization scans is rank-bounded, so `solve_ops` should barely
/// move while |E| explodes.
pub fn union_sparsification(
    seed: u64,
    vertices: usize,
    k: usize,
    edge_counts: &[usize],
) -> Result<Vec<ScalingRow>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = edge_counts
            .iter()
            .map(|&m| scope.spawn(move || run_union(seed ^ m as u64, vertices, m, k)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("bench thread panicked")).collect()
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisProfile {
    pub n: usize,
    pub r: usize,
    pub deletions: usize,
    pub max_ops_per_delete: u64,
    pub avg_ops_per_delete: f64,
    /// The budget 50 * sqrt(r) * log2(n) the maximum is measured against.
    pub budget: f64,
}

/// Delete a random sequence from a dense graphic instance, recording the
/// per-deletion oracle-operation profile of the decremental basis.
pub fn basis_deletion_profile(
    seed: u64,
    vertices: usize,
    edges: usize,
    deletions: usize,
) -> Result<BasisProfile> {
    use rand::seq::SliceRandom;
    let mut rng = testkit::rng(seed);
    let ends = testkit::gen_graph(&mut rng, vertices, edges);
    let m = MatroidInstance::graphic(vertices, ends)?;
    let mut oracle = crate::oracle::DynOracle::new(Arc::new(m));
    let x: Vec<Element> = (0..edges as u32).map(Element).collect();
    let (mut d, basis) = crate::basis::basis_init(&mut oracle, &x)?;
    let r = basis.len().max(1);
    let mut order = x;
    order.shuffle(&mut rng);
    let mut max_ops = 0u64;
    let mut total = 0u64;
    let deletions = deletions.min(order.len());
    for &victim in order.iter().take(deletions) {
        let before = oracle.stats().total_ops();
        d.delete(&mut oracle, victim)?;
        let cost = oracle.stats().total_ops() - before;
        max_ops = max_ops.max(cost);
        total += cost;
    }
    Ok(BasisProfile {
        n: edges,
        r,
        deletions,
        max_ops_per_delete: max_ops,
        avg_ops_per_delete: total as f64 / deletions.max(1) as f64,
        budget: 50.0 * (r as f64).sqrt() * (edges.max(2) as f64).log2(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_rows_solve_to_the_planted_rank() {
        let rows = matching_query_scaling(7, 8, &[32, 64]).unwrap();
        assert_eq!(rows.len(), 2);
        for row in rows {
            assert_eq!(row.solution, 8);
            assert!(row.total_ops > 0);
        }
    }

    #[test]
    fn union_rows_report_init_separately() {
        let rows = union_sparsification(7, 8, 2, &[32, 64]).unwrap();
        for row in rows {
            assert!(row.solve_ops < row.total_ops);
        }
    }

    #[test]
    fn basis_profile_runs() {
        let p = basis_deletion_profile(11, 8, 64, 32).unwrap();
        assert!(p.max_ops_per_delete > 0);
        assert!((p.max_ops_per_delete as f64) <= p.budget);
    }
}
