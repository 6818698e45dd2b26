//! Graph and scheduling applications, each reduced to matroid intersection
//! or union. Every solver re-verifies its solution with direct rank probes
//! and structural checks before emitting the report.

use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::elem::Element;
use crate::error::{Error, Result};
use crate::intersection::{Intersection, PhaseTrace};
use crate::io::{GraphInstance, Job, MatrixInstance};
use crate::matroids::{convex_assignment, MatroidInstance};
use crate::oracle::OracleStats;
use crate::union::{covering, packing, MatroidUnion};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScheduleEntry {
    pub day: u32,
    pub item: String,
}

/// Everything a solve emits: solution, instrumentation, verification flag.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub problem: String,
    pub ground_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub feasible: bool,
    pub solution_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schedule: Option<Vec<ScheduleEntry>>,
    pub oracle: OracleStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_init: Option<OracleStats>,
    pub phase_trace: Vec<PhaseTrace>,
    pub wall_ms: f64,
    pub verified: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl RunReport {
    fn new(problem: &str, ground_size: usize) -> Self {
        RunReport {
            problem: problem.to_string(),
            ground_size,
            rank: None,
            k: None,
            feasible: true,
            solution_size: 0,
            value: None,
            elements: None,
            partition: None,
            schedule: None,
            oracle: OracleStats::default(),
            oracle_init: None,
            phase_trace: Vec::new(),
            wall_ms: 0.0,
            verified: false,
            notes: Vec::new(),
        }
    }

    pub fn render_text(&self, stats_only: bool) -> String {
        let mut out = String::new();
        use std::fmt::Write;
        let _ = writeln!(out, "problem: {}", self.problem);
        let _ = writeln!(
            out,
            "instance: n={}{}{}",
            self.ground_size,
            self.rank.map_or(String::new(), |r| format!(" r={r}")),
            self.k.map_or(String::new(), |k| format!(" k={k}")),
        );
        let _ = writeln!(
            out,
            "result: {} (size {}{})",
            if self.feasible { "feasible" } else { "infeasible" },
            self.solution_size,
            self.value.map_or(String::new(), |v| format!(", value {v}")),
        );
        if !stats_only {
            if let Some(elements) = &self.elements {
                let _ = writeln!(out, "solution: {}", elements.join(" "));
            }
            if let Some(partition) = &self.partition {
                for (i, class) in partition.iter().enumerate() {
                    let _ = writeln!(out, "class {}: {}", i + 1, class.join(" "));
                }
            }
            if let Some(schedule) = &self.schedule {
                for entry in schedule {
                    let _ = writeln!(out, "day {}: {}", entry.day, entry.item);
                }
            }
        }
        let _ = writeln!(
            out,
            "oracle ops: {} (inserts {}, deletes {}, rank queries {})",
            self.oracle.total_ops(),
            self.oracle.inserts,
            self.oracle.deletes,
            self.oracle.rank_queries,
        );
        if let Some(init) = &self.oracle_init {
            let _ = writeln!(out, "  of which initialization: {}", init.total_ops());
        }
        if !self.phase_trace.is_empty() {
            let phases: Vec<String> = self
                .phase_trace
                .iter()
                .map(|p| format!("d={}+{}", p.d_t, p.augmentations))
                .collect();
            let _ = writeln!(out, "phases: {}", phases.join(" "));
        }
        let _ = writeln!(out, "verified: {}", self.verified);
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        let _ = writeln!(out, "wall: {:.1} ms", self.wall_ms);
        out
    }
}

fn is_forest(vertices: usize, ends: &[(u32, u32)], subset: &[Element]) -> bool {
    let mut parent: Vec<u32> = (0..vertices as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for &e in subset {
        let (u, v) = ends[e.index()];
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return false;
        }
        parent[ru as usize] = rv;
    }
    true
}

fn is_spanning_tree(vertices: usize, ends: &[(u32, u32)], subset: &[Element]) -> bool {
    subset.len() == vertices.saturating_sub(1) && is_forest(vertices, ends, subset)
}

fn pairwise_disjoint(classes: &[Vec<Element>]) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    for class in classes {
        for &e in class {
            if !seen.insert(e) {
                return false;
            }
        }
    }
    true
}

fn labels(g: &GraphInstance, elems: &[Element]) -> Vec<String> {
    elems.iter().map(|&e| g.edge_label(e)).collect()
}

/// k edge-disjoint spanning trees via k-fold union of the graphic matroid.
pub fn solve_kdst(g: &GraphInstance, k: usize) -> Result<RunReport> {
    let start = Instant::now();
    let m = Arc::new(g.graphic_matroid()?);
    let mut solver = MatroidUnion::new_kfold(m.clone(), k)?;
    solver.run()?;
    let classes = solver.class_sets();
    let total: usize = classes.iter().map(|c| c.len()).sum();
    let want = k * g.vertices.saturating_sub(1);
    let feasible = g.vertices > 0 && total == want;
    let mut report = RunReport::new("k-disjoint-spanning-trees", g.edges.len());
    report.rank = Some(g.vertices.saturating_sub(1));
    report.k = Some(k);
    report.feasible = feasible;
    report.solution_size = total;
    report.oracle = solver.stats();
    report.oracle_init = Some(solver.init_stats());
    report.phase_trace = solver.trace.clone();
    if feasible {
        let ends = g.edge_ends();
        let ok = pairwise_disjoint(&classes)
            && classes.iter().all(|c| is_spanning_tree(g.vertices, &ends, c));
        assert!(ok, "solver emitted an invalid tree packing");
        report.verified = true;
        report.partition = Some(classes.iter().map(|c| labels(g, c)).collect());
    } else {
        report.verified = true;
        report.notes.push(format!("need {want} edges across {k} trees, best packing is {total}"));
    }
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn union_forest_like(
    problem: &str,
    g: &GraphInstance,
    matroid: MatroidInstance,
    k: usize,
    forest_check: bool,
) -> Result<RunReport> {
    let start = Instant::now();
    let m = Arc::new(matroid);
    let mut solver = MatroidUnion::new_kfold(m.clone(), k)?;
    solver.run()?;
    let classes = solver.class_sets();
    let mut report = RunReport::new(problem, g.edges.len());
    report.k = Some(k);
    report.solution_size = classes.iter().map(|c| c.len()).sum();
    report.oracle = solver.stats();
    report.oracle_init = Some(solver.init_stats());
    report.phase_trace = solver.trace.clone();
    let ends = g.edge_ends();
    let ok = pairwise_disjoint(&classes)
        && classes.iter().all(|c| {
            m.rank_of(c).unwrap() == c.len()
                && (!forest_check || is_forest(g.vertices, &ends, c))
        });
    assert!(ok, "solver emitted an invalid decomposition");
    report.verified = true;
    report.partition = Some(classes.iter().map(|c| labels(g, c)).collect());
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// Maximum total size of k edge-disjoint forests.
pub fn solve_kforest(g: &GraphInstance, k: usize) -> Result<RunReport> {
    union_forest_like("k-forest", g, g.graphic_matroid()?, k, true)
}

/// Maximum total size of k edge-disjoint pseudoforests.
pub fn solve_kpseudoforest(g: &GraphInstance, k: usize) -> Result<RunReport> {
    union_forest_like("k-pseudoforest", g, g.bicircular_matroid()?, k, false)
}

/// f forests plus p pseudoforests, all edge-disjoint, of maximum total size.
pub fn solve_mixed(g: &GraphInstance, forests: usize, pseudo: usize) -> Result<RunReport> {
    let start = Instant::now();
    let graphic = Arc::new(g.graphic_matroid()?);
    let bicircular = Arc::new(g.bicircular_matroid()?);
    let mut instances: Vec<Arc<MatroidInstance>> = Vec::new();
    instances.extend(std::iter::repeat_n(graphic.clone(), forests));
    instances.extend(std::iter::repeat_n(bicircular.clone(), pseudo));
    assert!(!instances.is_empty(), "need at least one forest or pseudoforest");
    let mut solver = MatroidUnion::new_general(instances.clone())?;
    solver.run()?;
    let classes = solver.class_sets();
    let mut report = RunReport::new("mixed-forest-pseudoforest", g.edges.len());
    report.k = Some(forests + pseudo);
    report.solution_size = classes.iter().map(|c| c.len()).sum();
    report.oracle = solver.stats();
    report.oracle_init = Some(solver.init_stats());
    report.phase_trace = solver.trace.clone();
    let ok = pairwise_disjoint(&classes)
        && classes
            .iter()
            .enumerate()
            .all(|(i, c)| instances[i].rank_of(c).unwrap() == c.len());
    assert!(ok, "solver emitted an invalid mixed decomposition");
    report.verified = true;
    report.partition = Some(classes.iter().map(|c| labels(g, c)).collect());
    report.notes.push(format!("{forests} forest classes, then {pseudo} pseudoforest classes"));
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn covering_report(problem: &str, g: &GraphInstance, m: MatroidInstance) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = RunReport::new(problem, g.edges.len());
    if g.edges.is_empty() {
        report.value = Some(0);
        report.verified = true;
        report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
        return Ok(report);
    }
    let m = Arc::new(m);
    let out = covering(m.clone())?;
    report.value = Some(out.value);
    report.solution_size = out.classes.iter().map(|c| c.len()).sum();
    report.oracle = out.stats;
    let ok = pairwise_disjoint(&out.classes)
        && report.solution_size == g.edges.len()
        && out.classes.iter().all(|c| m.rank_of(c).unwrap() == c.len());
    assert!(ok, "covering output is not a partition into independent sets");
    report.verified = true;
    report.partition = Some(out.classes.iter().map(|c| labels(g, c)).collect());
    report.notes.push(probe_note(&out.probes));
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn probe_note(probes: &[(usize, usize)]) -> String {
    let body: Vec<String> = probes.iter().map(|&(k, size)| format!("k={k}:{size}")).collect();
    format!("search probes (k:union size): {}", body.join(" "))
}

/// Minimum number of forests covering all edges.
pub fn solve_arboricity(g: &GraphInstance) -> Result<RunReport> {
    covering_report("arboricity", g, g.graphic_matroid()?)
}

/// Minimum number of pseudoforests covering all edges.
pub fn solve_pseudoarboricity(g: &GraphInstance) -> Result<RunReport> {
    covering_report("pseudoarboricity", g, g.bicircular_matroid()?)
}

/// Maximum number of edge-disjoint spanning trees.
pub fn solve_tree_packing(g: &GraphInstance) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = RunReport::new("tree-packing", g.edges.len());
    report.rank = Some(g.vertices.saturating_sub(1));
    // a disconnected graph packs no spanning tree at all
    let m = g.graphic_matroid()?;
    let all: Vec<Element> = (0..g.edges.len() as u32).map(Element).collect();
    let connected = g.vertices <= 1 || m.rank_of(&all)? == g.vertices - 1;
    if !connected {
        report.value = Some(0);
        report.verified = true;
        report.notes.push("graph is disconnected; no spanning tree exists".into());
        report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
        return Ok(report);
    }
    let m = Arc::new(m);
    let out = packing(m.clone())?;
    report.value = Some(out.value);
    report.solution_size = out.classes.iter().map(|c| c.len()).sum();
    report.oracle = out.stats;
    let ends = g.edge_ends();
    let ok = pairwise_disjoint(&out.classes)
        && out.classes.iter().all(|c| is_spanning_tree(g.vertices, &ends, c));
    assert!(ok, "packing output is not a set of disjoint spanning trees");
    report.verified = true;
    report.partition = Some(out.classes.iter().map(|c| labels(g, c)).collect());
    report.notes.push(probe_note(&out.probes));
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// The edge-coloring game on a graph: Short wins iff two disjoint spanning
/// trees exist; the trees are the winning certificate.
pub fn solve_shannon(g: &GraphInstance) -> Result<RunReport> {
    let mut report = solve_kdst(g, 2)?;
    report.problem = "shannon-switching-game".to_string();
    let short_wins = report.feasible;
    report.feasible = true;
    report.notes.insert(
        0,
        if short_wins {
            "Short wins: the two disjoint spanning trees are Short's strategy certificate".into()
        } else {
            "Cut wins: no two disjoint spanning trees exist".into()
        },
    );
    if !short_wins {
        report.partition = None;
    }
    Ok(report)
}

/// Spanning tree with pairwise distinct edge colors: graphic x partition
/// intersection.
pub fn solve_colorful_st(g: &GraphInstance) -> Result<RunReport> {
    let start = Instant::now();
    let colors: Result<Vec<u32>> = g
        .edges
        .iter()
        .map(|e| e.color.ok_or_else(|| Error::Parse("every edge needs c=<color>".into())))
        .collect();
    let colors = colors?;
    let palette = colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let graphic = Arc::new(g.graphic_matroid()?);
    let chroma = Arc::new(MatroidInstance::partition(colors.clone(), vec![1; palette])?);
    let mut solver = Intersection::new(graphic.clone(), chroma.clone())?;
    solver.run()?;
    let sol = solver.solution();
    let feasible = sol.len() == g.vertices.saturating_sub(1);
    let mut report = RunReport::new("colorful-spanning-tree", g.edges.len());
    report.rank = Some(g.vertices.saturating_sub(1));
    report.feasible = feasible;
    report.solution_size = sol.len();
    report.oracle = solver.stats();
    report.phase_trace = solver.trace.clone();
    let ends = g.edge_ends();
    let mut used = std::collections::BTreeSet::new();
    let ok = is_forest(g.vertices, &ends, &sol)
        && sol.iter().all(|&e| used.insert(colors[e.index()]))
        && chroma.rank_of(&sol)? == sol.len();
    assert!(ok, "colorful solution re-verification failed");
    report.verified = true;
    if feasible {
        report.elements = Some(labels(g, &sol));
    } else {
        report.notes.push(format!(
            "largest colorful forest has {} of the {} edges a spanning tree needs",
            sol.len(),
            g.vertices.saturating_sub(1)
        ));
    }
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn intersection_report(
    problem: &str,
    m1: Arc<MatroidInstance>,
    m2: Arc<MatroidInstance>,
    epsilon: Option<f64>,
) -> Result<(RunReport, Vec<Element>)> {
    let start = Instant::now();
    let mut solver = Intersection::new(m1.clone(), m2.clone())?;
    match epsilon {
        Some(e) => solver.run_approx(e)?,
        None => solver.run()?,
    }
    let sol = solver.solution();
    let mut report = RunReport::new(problem, m1.ground_size());
    report.rank = Some(solver.rank_estimate());
    report.solution_size = sol.len();
    report.oracle = solver.stats();
    report.phase_trace = solver.trace.clone();
    assert_eq!(m1.rank_of(&sol)?, sol.len(), "solution dependent in the first matroid");
    assert_eq!(m2.rank_of(&sol)?, sol.len(), "solution dependent in the second matroid");
    report.verified = true;
    if let Some(e) = epsilon {
        let d = solver.trace.last().map_or(0, |p| p.d_t);
        report.notes.push(format!(
            "approximation mode: stopped once shortest augmenting paths exceeded 1/epsilon \
             (epsilon = {e}, reached length {d}); the result is within an O(epsilon) \
             fraction of the optimum"
        ));
    }
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok((report, sol))
}

/// Generic matroid intersection of two instance files.
pub fn solve_intersect_generic(
    m1: MatroidInstance,
    m2: MatroidInstance,
    epsilon: Option<f64>,
) -> Result<RunReport> {
    let (mut report, sol) =
        intersection_report("matroid-intersection", Arc::new(m1), Arc::new(m2), epsilon)?;
    report.elements = Some(sol.iter().map(|e| e.to_string()).collect());
    Ok(report)
}

/// Generic matroid union of several instance files.
pub fn solve_union_generic(instances: Vec<MatroidInstance>) -> Result<RunReport> {
    let start = Instant::now();
    let arcs: Vec<Arc<MatroidInstance>> = instances.into_iter().map(Arc::new).collect();
    let mut solver = MatroidUnion::new_general(arcs.clone())?;
    solver.run()?;
    let classes = solver.class_sets();
    let mut report = RunReport::new("matroid-union", arcs[0].ground_size());
    report.k = Some(arcs.len());
    report.solution_size = classes.iter().map(|c| c.len()).sum();
    report.oracle = solver.stats();
    report.oracle_init = Some(solver.init_stats());
    report.phase_trace = solver.trace.clone();
    let ok = pairwise_disjoint(&classes)
        && classes.iter().enumerate().all(|(i, c)| arcs[i].rank_of(c).unwrap() == c.len());
    assert!(ok, "union output is not a valid partition");
    report.verified = true;
    report.partition =
        Some(classes.iter().map(|c| c.iter().map(|e| e.to_string()).collect()).collect());
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// Generic k-fold union of one instance file.
pub fn solve_kfold_generic(m: MatroidInstance, k: usize) -> Result<RunReport> {
    let start = Instant::now();
    let m = Arc::new(m);
    let mut solver = MatroidUnion::new_kfold(m.clone(), k)?;
    solver.run()?;
    let classes = solver.class_sets();
    let mut report = RunReport::new("k-fold-matroid-union", m.ground_size());
    report.k = Some(k);
    report.solution_size = classes.iter().map(|c| c.len()).sum();
    report.oracle = solver.stats();
    report.oracle_init = Some(solver.init_stats());
    report.phase_trace = solver.trace.clone();
    let ok =
        pairwise_disjoint(&classes) && classes.iter().all(|c| m.rank_of(c).unwrap() == c.len());
    assert!(ok, "k-fold union output is not a valid partition");
    report.verified = true;
    report.partition =
        Some(classes.iter().map(|c| c.iter().map(|e| e.to_string()).collect()).collect());
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// Maximum forest in G1 mapping to a forest in G2 under the index bijection.
pub fn solve_graphic_intersection(g1: &GraphInstance, g2: &GraphInstance) -> Result<RunReport> {
    if g1.edges.len() != g2.edges.len() {
        return Err(Error::GroundSetMismatch(g1.edges.len(), g2.edges.len()));
    }
    let m1 = Arc::new(g1.graphic_matroid()?);
    let m2 = Arc::new(g2.graphic_matroid()?);
    let (mut report, sol) =
        intersection_report("graphic-matroid-intersection", m1, m2, None)?;
    let e1 = g1.edge_ends();
    let e2 = g2.edge_ends();
    assert!(is_forest(g1.vertices, &e1, &sol) && is_forest(g2.vertices, &e2, &sol));
    report.elements = Some(labels(g1, &sol));
    Ok(report)
}

/// Maximum matching of a bipartite graph via two partition matroids.
pub fn solve_bipartite_matching(g: &GraphInstance) -> Result<RunReport> {
    // 2-color the graph; sides define the two endpoint matroids
    let mut side: Vec<i8> = vec![-1; g.vertices];
    let mut adj: Vec<Vec<(u32, usize)>> = vec![Vec::new(); g.vertices];
    for (i, e) in g.edges.iter().enumerate() {
        adj[e.u as usize].push((e.v, i));
        adj[e.v as usize].push((e.u, i));
    }
    for start in 0..g.vertices {
        if side[start] >= 0 {
            continue;
        }
        side[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &adj[u] {
                if side[v as usize] < 0 {
                    side[v as usize] = 1 - side[u];
                    queue.push_back(v as usize);
                } else if side[v as usize] == side[u] {
                    return Err(Error::MalformedInstance(
                        "graph is not bipartite (odd cycle found)".into(),
                    ));
                }
            }
        }
    }
    let left: Vec<u32> =
        g.edges.iter().map(|e| if side[e.u as usize] == 0 { e.u } else { e.v }).collect();
    let right: Vec<u32> =
        g.edges.iter().map(|e| if side[e.u as usize] == 0 { e.v } else { e.u }).collect();
    let m1 = Arc::new(MatroidInstance::partition(left.clone(), vec![1; g.vertices])?);
    let m2 = Arc::new(MatroidInstance::partition(right.clone(), vec![1; g.vertices])?);
    let (mut report, sol) = intersection_report("bipartite-matching", m1, m2, None)?;
    let mut used = std::collections::BTreeSet::new();
    for &e in &sol {
        assert!(used.insert(g.edges[e.index()].u) && used.insert(g.edges[e.index()].v));
    }
    report.elements = Some(labels(g, &sol));
    report.value = Some(sol.len());
    Ok(report)
}

/// Two-machine job scheduling: each accepted job gets one slot in its window
/// on each machine.
pub fn solve_scheduling_intersect(jobs: &[Job]) -> Result<RunReport> {
    let first: Vec<(u32, u32)> = jobs.iter().map(|j| j.first).collect();
    let second: Vec<(u32, u32)> = jobs.iter().map(|j| j.second.unwrap_or(j.first)).collect();
    let mu1 = first.iter().map(|&(_, t)| t as usize).max().unwrap_or(1);
    let mu2 = second.iter().map(|&(_, t)| t as usize).max().unwrap_or(1);
    let m1 = Arc::new(MatroidInstance::convex_transversal(mu1, first.clone())?);
    let m2 = Arc::new(MatroidInstance::convex_transversal(mu2, second.clone())?);
    let (mut report, sol) =
        intersection_report("scheduling-matroid-intersection", m1, m2, None)?;
    let schedule1 = convex_assignment(
        mu1,
        &sol.iter().map(|&e| (e, first[e.index()].0, first[e.index()].1)).collect::<Vec<_>>(),
    );
    assert_eq!(schedule1.len(), sol.len(), "machine-1 schedule must place every accepted job");
    report.schedule = Some(
        schedule1
            .iter()
            .map(|&(e, day)| ScheduleEntry { day, item: jobs[e.index()].id.clone() })
            .collect(),
    );
    report.elements = Some(sol.iter().map(|&e| jobs[e.index()].id.clone()).collect());
    Ok(report)
}

/// Common independent row sets of two matrices.
pub fn solve_linear_intersect(a: MatrixInstance, b: MatrixInstance) -> Result<RunReport> {
    if a.rows.len() != b.rows.len() {
        return Err(Error::GroundSetMismatch(a.rows.len(), b.rows.len()));
    }
    let m1 = MatroidInstance::linear(a.field, a.rows)?;
    let m2 = MatroidInstance::linear(b.field, b.rows)?;
    let (mut report, sol) =
        intersection_report("linear-matroid-intersection", Arc::new(m1), Arc::new(m2), None)?;
    report.problem = "linear-matroid-intersection".into();
    report.elements = Some(sol.iter().map(|e| format!("row{e}")).collect());
    Ok(report)
}

/// Maximum forest constructible one edge per day, edge e available in days
/// `rel(e) ..= dl(e)`: graphic x convex-transversal intersection. The
/// matching witness is re-derived to emit the day-by-day plan.
pub fn solve_forest_deadlines(g: &GraphInstance) -> Result<RunReport> {
    let windows: Result<Vec<(u32, u32)>> = g
        .edges
        .iter()
        .map(|e| {
            let dl = e.deadline.ok_or_else(|| Error::Parse("every edge needs dl=<day>".into()))?;
            let rel = e.release.unwrap_or(1);
            if rel < 1 || rel > dl {
                return Err(Error::MalformedInstance(format!(
                    "edge window [{rel}, {dl}] is empty"
                )));
            }
            Ok((rel, dl))
        })
        .collect();
    let windows = windows?;
    let mu = windows.iter().map(|&(_, t)| t as usize).max().unwrap_or(1);
    let graphic = Arc::new(g.graphic_matroid()?);
    let transversal = Arc::new(MatroidInstance::convex_transversal(mu, windows.clone())?);
    let (mut report, sol) =
        intersection_report("maximum-forest-with-deadlines", graphic, transversal, None)?;
    report.problem = "maximum-forest-with-deadlines".into();
    let ends = g.edge_ends();
    assert!(is_forest(g.vertices, &ends, &sol));
    let schedule = convex_assignment(
        mu,
        &sol.iter().map(|&e| (e, windows[e.index()].0, windows[e.index()].1)).collect::<Vec<_>>(),
    );
    assert_eq!(schedule.len(), sol.len(), "every chosen edge must get a build day");
    for &(e, day) in &schedule {
        let (rel, dl) = windows[e.index()];
        assert!(rel <= day && day <= dl);
    }
    let mut schedule = schedule;
    schedule.sort_by_key(|&(_, day)| day);
    report.schedule = Some(
        schedule
            .iter()
            .map(|&(e, day)| ScheduleEntry { day, item: g.edge_label(e) })
            .collect(),
    );
    report.elements = Some(labels(g, &sol));
    Ok(report)
}
