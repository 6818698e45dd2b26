//! Matroid intersection by blocking flow over the exchange graph.
//!
//! A phase builds BFS distance layers with two binary search trees, then
//! eliminates all shortest augmenting paths of the current length with a
//! depth-first search guided by per-layer trees (batched updates sized
//! `beta = sqrt(r) / d_t`). Once the (s, t)-distance passes `sqrt(r)` the
//! remaining few augmenting paths are found one at a time.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::bst::{BstVariant, ExchangeBst, FindFrom, FindResult};
use crate::elem::{DenseSet, Element};
use crate::error::{Error, Result};
use crate::matroids::MatroidInstance;
use crate::oracle::{DynOracle, OracleStats, VersionId, ROOT};

/// BFS snapshot of the exchange graph G(S): distances, layers, and one
/// shortest augmenting path when t is reachable.
#[derive(Debug, Clone)]
pub struct Layers {
    pub d_t: Option<usize>,
    pub dist: Vec<Option<u32>>,
    /// `layers[l - 1]` is the distance-l layer, for `1 <= l <= d_t - 1`.
    pub layers: Vec<Vec<Element>>,
    /// Elements of one shortest (s, t)-path, layer by layer.
    pub path: Option<Vec<Element>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseOutcome {
    /// t unreachable: S is a maximum common independent set.
    Optimal,
    /// The shortest path length exceeded the caller's bound; nothing done.
    TooDeep { d_t: usize },
    /// One blocking-flow phase ran to completion.
    Advanced { d_t: usize, augmentations: usize },
}

/// One line of the phase trace emitted by the drivers.
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct PhaseTrace {
    pub d_t: usize,
    pub augmentations: usize,
}

/// Details of a finished blocking-flow phase, for invariant checking.
#[derive(Debug, Clone)]
pub struct PhaseReport {
    pub outcome: PhaseOutcome,
    /// Committed augmenting-set layers D_1 .. D_{d_t - 1}.
    pub committed: Vec<Vec<Element>>,
    /// Elements removed as dead ends (never committed).
    pub dead_ends: Vec<Element>,
}

pub struct Intersection {
    pub o1: DynOracle,
    pub o2: DynOracle,
    s: DenseSet,
    q1: VersionId,
    q2: VersionId,
    r_est: usize,
    pub trace: Vec<PhaseTrace>,
    /// Length (edge count) of every augmenting path applied.
    pub path_lengths: Vec<usize>,
}

impl Intersection {
    pub fn new(m1: Arc<MatroidInstance>, m2: Arc<MatroidInstance>) -> Result<Self> {
        let n = m1.ground_size();
        if n != m2.ground_size() {
            return Err(Error::GroundSetMismatch(n, m2.ground_size()));
        }
        let mut o1 = DynOracle::new(m1);
        let mut o2 = DynOracle::new(m2);
        // one linear pass per matroid pins down the rank estimate
        let all: Vec<Element> = (0..n as u32).map(Element).collect();
        let probe1 = o1.insert_all(ROOT, all.iter().copied())?;
        let r1 = o1.query(probe1)?;
        o1.release(probe1);
        let probe2 = o2.insert_all(ROOT, all.iter().copied())?;
        let r2 = o2.query(probe2)?;
        o2.release(probe2);
        Ok(Intersection {
            o1,
            o2,
            s: DenseSet::new(n),
            q1: ROOT,
            q2: ROOT,
            r_est: r1.min(r2),
            trace: Vec::new(),
            path_lengths: Vec::new(),
        })
    }

    pub fn rank_estimate(&self) -> usize {
        self.r_est
    }

    pub fn solution(&self) -> Vec<Element> {
        self.s.to_vec()
    }

    pub fn stats(&self) -> OracleStats {
        self.o1.stats() + self.o2.stats()
    }

    /// Overwrite the maintained common independent set. Test scaffolding for
    /// inspecting exchange graphs of engineered states.
    pub fn seed_solution(&mut self, s: &[Element]) -> Result<()> {
        assert!(self.s.is_empty(), "seed before solving");
        for &e in s {
            self.s.insert(e);
            self.q1 = self.o1.insert(self.q1, e)?;
            self.q2 = self.o2.insert(self.q2, e)?;
        }
        debug_assert!(self.s_is_common_independent());
        Ok(())
    }

    /// BFS over G(S): out-edges of S elements are M1 co-circuit exchanges
    /// into the complement, out-edges of complement elements are M2 circuit
    /// exchanges into S, source edges are M1 free elements, sink edges M2
    /// free elements.
    pub fn build_layers(&mut self) -> Result<Layers> {
        let n = self.o1.ground_size();
        let s_elems = self.s.to_vec();
        let sbar: Vec<Element> =
            (0..n as u32).map(Element).filter(|e| !self.s.contains(*e)).collect();
        let mut t_co =
            ExchangeBst::new(&mut self.o1, &s_elems, self.q1, &sbar, 1, BstVariant::CoCircuit)?;
        let mut t_ci =
            ExchangeBst::new(&mut self.o2, &s_elems, self.q2, &s_elems, 1, BstVariant::Circuit)?;
        let mut dist: Vec<Option<u32>> = vec![None; n];
        let mut parent: Vec<Option<Element>> = vec![None; n];
        let mut queue: VecDeque<Element> = VecDeque::new();
        while let FindResult::Element(x) = t_co.find(&mut self.o1, FindFrom::Source)? {
            dist[x.index()] = Some(1);
            queue.push_back(x);
            t_co.delete(&mut self.o1, x)?;
        }
        let mut d_t: Option<usize> = None;
        let mut t_parent: Option<Element> = None;
        while let Some(u) = queue.pop_front() {
            let du = dist[u.index()].unwrap() as usize;
            if let Some(d) = d_t {
                if du + 1 >= d {
                    break;
                }
            }
            if self.s.contains(u) {
                while let FindResult::Element(y) = t_co.find(&mut self.o1, FindFrom::Elem(u))? {
                    dist[y.index()] = Some(du as u32 + 1);
                    parent[y.index()] = Some(u);
                    queue.push_back(y);
                    t_co.delete(&mut self.o1, y)?;
                }
            } else {
                if d_t.is_none() && self.o2.probe_rank(self.q2, &[u], &[])? > self.s.len() {
                    d_t = Some(du + 1);
                    t_parent = Some(u);
                }
                while let FindResult::Element(x) = t_ci.find(&mut self.o2, FindFrom::Elem(u))? {
                    dist[x.index()] = Some(du as u32 + 1);
                    parent[x.index()] = Some(u);
                    queue.push_back(x);
                    t_ci.delete(&mut self.o2, x)?;
                }
            }
        }
        t_co.dispose(&mut self.o1);
        t_ci.dispose(&mut self.o2);
        let mut layers = Vec::new();
        if let Some(d) = d_t {
            layers = vec![Vec::new(); d - 1];
            for e in (0..n as u32).map(Element) {
                if let Some(de) = dist[e.index()] {
                    if (de as usize) < d {
                        layers[de as usize - 1].push(e);
                    }
                }
            }
        }
        let path = t_parent.map(|mut at| {
            let mut p = vec![at];
            while let Some(prev) = parent[at.index()] {
                p.push(prev);
                at = prev;
            }
            p.reverse();
            p
        });
        Ok(Layers { d_t, dist, layers, path })
    }

    /// Toggle the elements of an augmenting path in S and in both maintained
    /// S versions.
    fn apply_path(&mut self, path: &[Element]) -> Result<()> {
        for &e in path {
            if self.s.toggle(e) {
                self.q1 = self.o1.insert(self.q1, e)?;
                self.q2 = self.o2.insert(self.q2, e)?;
            } else {
                self.q1 = self.o1.delete(self.q1, e)?;
                self.q2 = self.o2.delete(self.q2, e)?;
            }
        }
        debug_assert!(self.s_is_common_independent());
        Ok(())
    }

    fn s_is_common_independent(&self) -> bool {
        let s = self.s.to_vec();
        self.o1.instance().rank_of(&s).unwrap() == s.len()
            && self.o2.instance().rank_of(&s).unwrap() == s.len()
    }

    /// Augment along one shortest path; returns its length (edge count).
    pub fn augment_one(&mut self) -> Result<Option<usize>> {
        let layers = self.build_layers()?;
        match layers.path {
            Some(path) => {
                let d_t = layers.d_t.unwrap();
                self.apply_path(&path)?;
                self.path_lengths.push(d_t);
                self.trace.push(PhaseTrace { d_t, augmentations: 1 });
                Ok(Some(d_t))
            }
            None => Ok(None),
        }
    }

    /// One blocking-flow phase: eliminate all augmenting paths of the
    /// current shortest length, leaving a strictly larger (s, t)-distance.
    /// Skips (returning `TooDeep`) when that length exceeds `max_d`.
    pub fn blocking_flow_phase(&mut self, max_d: Option<usize>) -> Result<PhaseReport> {
        let layers = self.build_layers()?;
        let Some(d_t) = layers.d_t else {
            return Ok(PhaseReport {
                outcome: PhaseOutcome::Optimal,
                committed: Vec::new(),
                dead_ends: Vec::new(),
            });
        };
        if let Some(bound) = max_d {
            if d_t > bound {
                return Ok(PhaseReport {
                    outcome: PhaseOutcome::TooDeep { d_t },
                    committed: Vec::new(),
                    dead_ends: Vec::new(),
                });
            }
        }
        let beta = ((self.r_est as f64).sqrt() / d_t as f64).ceil().max(1.0) as usize;
        let s_elems = self.s.to_vec();
        // per-layer trees: odd layers sit outside S and answer M1 exchanges,
        // even layers inside S answer M2 exchanges, the sink layer tests M2
        // free elements
        let mut trees: Vec<ExchangeBst> = Vec::with_capacity(d_t);
        for l in 1..=d_t {
            let tree = if l == d_t {
                ExchangeBst::new(&mut self.o2, &s_elems, self.q2, &[], beta, BstVariant::Sink)?
            } else if l % 2 == 1 {
                ExchangeBst::new(
                    &mut self.o1,
                    &s_elems,
                    self.q1,
                    &layers.layers[l - 1],
                    beta,
                    BstVariant::CoCircuit,
                )?
            } else {
                ExchangeBst::new(
                    &mut self.o2,
                    &s_elems,
                    self.q2,
                    &layers.layers[l - 1],
                    beta,
                    BstVariant::Circuit,
                )?
            };
            trees.push(tree);
        }
        let mut committed: Vec<Vec<Element>> = vec![Vec::new(); d_t - 1];
        let mut dead_ends: Vec<Element> = Vec::new();
        let mut path: Vec<Element> = Vec::new();
        let mut augmentations = 0usize;
        loop {
            let level = path.len();
            if level == 0 && trees[0].live_count() == 0 {
                break;
            }
            let from = match path.last() {
                Some(&a) => FindFrom::Elem(a),
                None => FindFrom::Source,
            };
            let found = {
                let tree = &mut trees[level];
                match tree.variant() {
                    BstVariant::CoCircuit => tree.find(&mut self.o1, from)?,
                    _ => tree.find(&mut self.o2, from)?,
                }
            };
            match found {
                FindResult::Element(x) => path.push(x),
                FindResult::Sink => {
                    // committed path a_1 .. a_{d_t - 1}: remove it from the
                    // alive sets and push the per-layer S updates (the sink
                    // tree sees the last layer's update too)
                    debug_assert_eq!(path.len(), d_t - 1);
                    for (i, &a) in path.iter().enumerate() {
                        committed[i].push(a);
                        let delta: Vec<Element> =
                            if i == 0 { vec![a] } else { vec![path[i - 1], a] };
                        let tree = &mut trees[i];
                        let oracle = if tree.variant() == BstVariant::CoCircuit {
                            &mut self.o1
                        } else {
                            &mut self.o2
                        };
                        tree.delete(oracle, a)?;
                        tree.update(oracle, &delta)?;
                    }
                    let last = *path.last().unwrap();
                    trees[d_t - 1].update(&mut self.o2, &[last])?;
                    let full = path.clone();
                    self.apply_path(&full)?;
                    self.path_lengths.push(d_t);
                    augmentations += 1;
                    path.clear();
                }
                FindResult::None => {
                    if level == 0 {
                        break;
                    }
                    let dead = path.pop().unwrap();
                    dead_ends.push(dead);
                    let tree = &mut trees[level - 1];
                    let oracle = if tree.variant() == BstVariant::CoCircuit {
                        &mut self.o1
                    } else {
                        &mut self.o2
                    };
                    tree.delete(oracle, dead)?;
                }
            }
        }
        for tree in trees {
            match tree.variant() {
                BstVariant::CoCircuit => tree.dispose(&mut self.o1),
                _ => tree.dispose(&mut self.o2),
            }
        }
        self.trace.push(PhaseTrace { d_t, augmentations });
        Ok(PhaseReport {
            outcome: PhaseOutcome::Advanced { d_t, augmentations },
            committed,
            dead_ends,
        })
    }

    /// Full solve: blocking-flow phases while the shortest path length is at
    /// most `sqrt(r)`, then one augmentation at a time.
    pub fn run(&mut self) -> Result<()> {
        if self.r_est == 0 || self.o1.ground_size() == 0 {
            return Ok(());
        }
        let cutoff = (self.r_est as f64).sqrt().ceil() as usize;
        loop {
            match self.blocking_flow_phase(Some(cutoff))?.outcome {
                PhaseOutcome::Optimal => return Ok(()),
                PhaseOutcome::TooDeep { .. } => break,
                PhaseOutcome::Advanced { .. } => {}
            }
        }
        while self.augment_one()?.is_some() {}
        Ok(())
    }

    /// Approximate solve: stop once the shortest augmenting path is longer
    /// than `1 / epsilon`; the result is within an O(epsilon) fraction of
    /// optimal.
    pub fn run_approx(&mut self, epsilon: f64) -> Result<()> {
        if self.r_est == 0 || self.o1.ground_size() == 0 {
            return Ok(());
        }
        let cutoff = (1.0 / epsilon).ceil() as usize;
        loop {
            match self.blocking_flow_phase(Some(cutoff))?.outcome {
                PhaseOutcome::Optimal | PhaseOutcome::TooDeep { .. } => return Ok(()),
                PhaseOutcome::Advanced { .. } => {}
            }
        }
    }

    /// Textbook baseline: repeated single shortest augmentations from the
    /// empty set, no blocking flow.
    pub fn run_baseline(&mut self) -> Result<()> {
        while self.augment_one()?.is_some() {}
        Ok(())
    }
}

/// Maximum common independent set of two matroids.
pub fn intersect(m1: Arc<MatroidInstance>, m2: Arc<MatroidInstance>) -> Result<Vec<Element>> {
    let mut solver = Intersection::new(m1, m2)?;
    solver.run()?;
    Ok(solver.solution())
}

/// Reference implementation used as a differential-test oracle.
pub fn intersect_baseline(
    m1: Arc<MatroidInstance>,
    m2: Arc<MatroidInstance>,
) -> Result<Vec<Element>> {
    let mut solver = Intersection::new(m1, m2)?;
    solver.run_baseline()?;
    Ok(solver.solution())
}
