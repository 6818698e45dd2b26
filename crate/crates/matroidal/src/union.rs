//! Matroid union via blocking flow on the union exchange graph.
//!
//! The solver keeps an explicit partition S_1 .. S_k (one class per matroid;
//! for the k-fold case, k classes over one matroid). The first BFS layer is
//! sparsified: instead of all of `U \ S`, only a maintained basis of it is
//! explored, kept up to date by the decremental-basis structures, which is
//! what brings the per-phase cost down from the ground-set size to the rank.
//! Augmenting along `(s, a_1, ..., a_{d-1}, t)` moves each `a_i` into the
//! class that contained `a_{i+1}` and inserts `a_1` into the set.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use crate::basis::{basis_init, DynamicBasis};
use crate::bst::{BstVariant, ExchangeBst, FindFrom, FindResult};
use crate::elem::{DenseSet, Element};
use crate::error::{Error, Result};
use crate::intersection::{PhaseOutcome, PhaseTrace};
use crate::matroids::MatroidInstance;
use crate::oracle::{DynOracle, OracleStats, VersionId, ROOT};

/// BFS result over the union exchange graph H(S).
#[derive(Debug, Clone)]
pub struct UnionBfs {
    pub d_t: Option<usize>,
    pub dist: Vec<Option<u32>>,
    pub parent: Vec<Option<Element>>,
    /// Last path vertex and the class admitting the final hop to t.
    pub t_entry: Option<(Element, usize)>,
}

pub struct MatroidUnion {
    instances: Vec<Arc<MatroidInstance>>,
    oracles: Vec<DynOracle>,
    /// class index -> oracle index (identity for general union, all zero for
    /// k-fold)
    oracle_of: Vec<usize>,
    k: usize,
    n: usize,
    kfold: bool,
    classes: Vec<DenseSet>,
    class_of: Vec<i32>,
    q_class: Vec<VersionId>,
    bases: Vec<DynamicBasis>,
    p_est: usize,
    pub trace: Vec<PhaseTrace>,
    init_stats: OracleStats,
}

impl MatroidUnion {
    /// Union of k distinct matroids over a common ground set.
    pub fn new_general(instances: Vec<Arc<MatroidInstance>>) -> Result<Self> {
        assert!(!instances.is_empty(), "need at least one matroid");
        let n = instances[0].ground_size();
        for m in &instances {
            if m.ground_size() != n {
                return Err(Error::GroundSetMismatch(n, m.ground_size()));
            }
        }
        let k = instances.len();
        let mut oracles: Vec<DynOracle> =
            instances.iter().map(|m| DynOracle::new(m.clone())).collect();
        let all: Vec<Element> = (0..n as u32).map(Element).collect();
        let mut bases = Vec::with_capacity(k);
        let mut rank_sum = 0usize;
        for oracle in oracles.iter_mut() {
            let (d, basis) = basis_init(oracle, &all)?;
            rank_sum += basis.len();
            bases.push(d);
        }
        let init_stats = oracles.iter().map(|o| o.stats()).fold(OracleStats::default(), |a, b| a + b);
        Ok(MatroidUnion {
            oracle_of: (0..k).collect(),
            instances,
            oracles,
            k,
            n,
            kfold: false,
            classes: vec![DenseSet::new(n); k],
            class_of: vec![-1; n],
            q_class: vec![ROOT; k],
            bases,
            p_est: n.min(rank_sum),
            trace: Vec::new(),
            init_stats,
        })
    }

    /// k-fold union: k disjoint independent sets of one matroid.
    pub fn new_kfold(instance: Arc<MatroidInstance>, k: usize) -> Result<Self> {
        assert!(k >= 1, "k must be positive");
        let n = instance.ground_size();
        let mut oracle = DynOracle::new(instance.clone());
        let all: Vec<Element> = (0..n as u32).map(Element).collect();
        let (d, basis) = basis_init(&mut oracle, &all)?;
        let r = basis.len();
        let init_stats = oracle.stats();
        Ok(MatroidUnion {
            instances: vec![instance],
            oracles: vec![oracle],
            oracle_of: vec![0; k],
            k,
            n,
            kfold: true,
            classes: vec![DenseSet::new(n); k],
            class_of: vec![-1; n],
            q_class: vec![ROOT; k],
            bases: vec![d],
            p_est: n.min(k * r),
            trace: Vec::new(),
            init_stats,
        })
    }

    pub fn rank_bound(&self) -> usize {
        self.p_est
    }

    pub fn stats(&self) -> OracleStats {
        self.oracles.iter().map(|o| o.stats()).fold(OracleStats::default(), |a, b| a + b)
    }

    /// Operations spent after the linear initialization scans.
    pub fn solve_stats(&self) -> OracleStats {
        self.stats() - self.init_stats
    }

    pub fn init_stats(&self) -> OracleStats {
        self.init_stats
    }

    pub fn total(&self) -> Vec<Element> {
        (0..self.n as u32).map(Element).filter(|&e| self.class_of[e.index()] >= 0).collect()
    }

    pub fn class_sets(&self) -> Vec<Vec<Element>> {
        self.classes.iter().map(|c| c.to_vec()).collect()
    }

    fn instance_of(&self, class: usize) -> &Arc<MatroidInstance> {
        &self.instances[if self.kfold { 0 } else { class }]
    }

    /// Current bases of `U \ S`, merged and deduplicated (layer 1 of H(S)).
    fn first_layer(&self, oracles: &[DynOracle]) -> BTreeSet<Element> {
        let mut out = BTreeSet::new();
        for (i, d) in self.bases.iter().enumerate() {
            for e in d.basis(&oracles[i]) {
                out.insert(e);
            }
        }
        out
    }

    /// BFS over H(S) from the maintained first-layer bases. In the k-fold
    /// case only elements that extend the running independent prefix R are
    /// expanded; skipped elements keep their distances.
    pub fn bfs(&mut self) -> Result<UnionBfs> {
        let n = self.n;
        let mut dist: Vec<Option<u32>> = vec![None; n];
        let mut parent: Vec<Option<Element>> = vec![None; n];
        let first = self.first_layer(&self.oracles);
        let mut queue: VecDeque<Element> = VecDeque::new();
        for &e in &first {
            dist[e.index()] = Some(1);
            queue.push_back(e);
        }
        // one circuit tree per class over S_i
        let mut trees: Vec<ExchangeBst> = Vec::with_capacity(self.k);
        for i in 0..self.k {
            let s_i = self.classes[i].to_vec();
            let oracle = &mut self.oracles[self.oracle_of[i]];
            trees.push(ExchangeBst::new(oracle, &s_i, self.q_class[i], &s_i, 1, BstVariant::Circuit)?);
        }
        // k-fold prefix R of explored elements
        let mut r_version = ROOT;
        let mut r_rank = 0usize;
        let mut r_chain: Vec<VersionId> = Vec::new();
        let mut d_t: Option<usize> = None;
        let mut t_entry: Option<(Element, usize)> = None;
        while let Some(u) = queue.pop_front() {
            let du = dist[u.index()].unwrap() as usize;
            if let Some(d) = d_t {
                if du + 1 >= d {
                    break;
                }
            }
            if self.kfold {
                let oracle = &mut self.oracles[0];
                if oracle.probe_rank(r_version, &[u], &[])? == r_rank {
                    continue;
                }
                r_version = oracle.insert(r_version, u)?;
                r_chain.push(r_version);
                r_rank += 1;
            }
            for i in 0..self.k {
                if self.classes[i].contains(u) {
                    continue;
                }
                let oracle = &mut self.oracles[self.oracle_of[i]];
                if d_t.is_none()
                    && oracle.probe_rank(self.q_class[i], &[u], &[])? > self.classes[i].len()
                {
                    d_t = Some(du + 1);
                    t_entry = Some((u, i));
                }
                while let FindResult::Element(v) = trees[i].find(oracle, FindFrom::Elem(u))? {
                    dist[v.index()] = Some(du as u32 + 1);
                    parent[v.index()] = Some(u);
                    queue.push_back(v);
                    trees[i].delete(oracle, v)?;
                }
            }
        }
        for (i, tree) in trees.into_iter().enumerate() {
            tree.dispose(&mut self.oracles[self.oracle_of[i]]);
        }
        for v in r_chain.into_iter().rev() {
            self.oracles[0].release(v);
        }
        Ok(UnionBfs { d_t, dist, parent, t_entry })
    }

    /// Augment along `(s, path..., t)` ending in class `t_class`: each
    /// element moves to the class of its successor.
    fn commit_moves(&mut self, path: &[Element], t_class: usize) -> Result<()> {
        let old_class: Vec<i32> = path.iter().map(|&a| self.class_of[a.index()]).collect();
        for (idx, &a) in path.iter().enumerate() {
            let target =
                if idx + 1 == path.len() { t_class } else { old_class[idx + 1] as usize };
            if idx > 0 {
                let from = old_class[idx] as usize;
                self.classes[from].remove(a);
                let oracle = &mut self.oracles[self.oracle_of[from]];
                self.q_class[from] = oracle.delete(self.q_class[from], a)?;
            }
            self.classes[target].insert(a);
            let oracle = &mut self.oracles[self.oracle_of[target]];
            self.q_class[target] = oracle.insert(self.q_class[target], a)?;
            self.class_of[a.index()] = target as i32;
        }
        debug_assert!(self.partition_is_valid());
        Ok(())
    }

    fn partition_is_valid(&self) -> bool {
        let mut seen = vec![false; self.n];
        for (i, class) in self.classes.iter().enumerate() {
            let elems = class.to_vec();
            for &e in &elems {
                if seen[e.index()] {
                    return false;
                }
                seen[e.index()] = true;
            }
            if self.instance_of(i).rank_of(&elems).unwrap() != elems.len() {
                return false;
            }
        }
        true
    }

    /// Remove `a` (entering S) from every decremental basis; replacements
    /// join `alive` when given.
    fn first_layer_delete(
        &mut self,
        a: Element,
        mut alive: Option<&mut BTreeSet<Element>>,
    ) -> Result<()> {
        for (d, oracle) in self.bases.iter_mut().zip(self.oracles.iter_mut()) {
            if let Some(x) = d.delete(oracle, a)? {
                if let Some(alive) = alive.as_deref_mut() {
                    alive.insert(x);
                }
            }
        }
        Ok(())
    }

    /// Find and apply one augmenting path; true if S grew.
    pub fn augment_one(&mut self) -> Result<bool> {
        let bfs = self.bfs()?;
        let Some((end, t_class)) = bfs.t_entry else { return Ok(false) };
        let mut path = vec![end];
        let mut at = end;
        while let Some(prev) = bfs.parent[at.index()] {
            path.push(prev);
            at = prev;
        }
        path.reverse();
        let d_t = bfs.d_t.unwrap();
        self.commit_moves(&path, t_class)?;
        self.first_layer_delete(path[0], None)?;
        self.trace.push(PhaseTrace { d_t, augmentations: 1 });
        Ok(true)
    }

    /// One blocking-flow phase over H(S). Same contract as the intersection
    /// phase: eliminates every shortest augmenting path of the entry length.
    pub fn blocking_flow(&mut self, max_d: Option<usize>) -> Result<PhaseOutcome> {
        let bfs = self.bfs()?;
        let Some(d_t) = bfs.d_t else { return Ok(PhaseOutcome::Optimal) };
        if let Some(bound) = max_d {
            if d_t > bound {
                return Ok(PhaseOutcome::TooDeep { d_t });
            }
        }
        let beta = ((self.p_est as f64).sqrt() / d_t as f64).ceil().max(1.0) as usize;
        let mut alive1 = self.first_layer(&self.oracles);
        // layers[l - 2] holds the distance-l elements of S for 2 <= l < d_t
        let mut layer_elems: Vec<Vec<Element>> = vec![Vec::new(); d_t.saturating_sub(2)];
        for e in (0..self.n as u32).map(Element) {
            if let Some(d) = bfs.dist[e.index()] {
                let d = d as usize;
                if (2..d_t).contains(&d) {
                    layer_elems[d - 2].push(e);
                }
            }
        }
        // circuit trees per (layer, class)
        let mut trees: Vec<Vec<ExchangeBst>> = Vec::new();
        for layer in &layer_elems {
            let mut row = Vec::with_capacity(self.k);
            for i in 0..self.k {
                let members: Vec<Element> =
                    layer.iter().copied().filter(|&e| self.classes[i].contains(e)).collect();
                let s_i = self.classes[i].to_vec();
                let oracle = &mut self.oracles[self.oracle_of[i]];
                row.push(ExchangeBst::new(
                    oracle,
                    &s_i,
                    self.q_class[i],
                    &members,
                    beta,
                    BstVariant::Circuit,
                )?);
            }
            trees.push(row);
        }
        // k-fold span bookkeeping: for each layer l, a growing query-set for
        // L_1 + ... + L_{l-1} + R_l with its rank
        let mut span_version: Vec<VersionId> = Vec::new();
        let mut span_rank: Vec<usize> = Vec::new();
        let mut span_owned: Vec<Vec<VersionId>> = Vec::new();
        if self.kfold {
            let oracle = &mut self.oracles[0];
            let mut chain: Vec<Element> = alive1.iter().copied().collect();
            let mut at = ROOT;
            let mut owned = Vec::new();
            for l in 2..d_t {
                for &e in &chain {
                    at = oracle.insert(at, e)?;
                    owned.push(at);
                }
                span_version.push(at);
                span_rank.push(oracle.query(at)?);
                chain = layer_elems[l - 2].clone();
            }
            span_owned.push(std::mem::take(&mut owned));
        }
        let mut path: Vec<Element> = Vec::new();
        let mut augmentations = 0usize;
        loop {
            let level = path.len();
            if level == 0 && alive1.is_empty() {
                break;
            }
            if level == 0 {
                path.push(*alive1.iter().next().unwrap());
                continue;
            }
            let a = *path.last().unwrap();
            if level + 1 == d_t {
                // final hop: some class must accept a as a free element
                let mut entered = None;
                for i in 0..self.k {
                    if self.classes[i].contains(a) {
                        continue;
                    }
                    let oracle = &mut self.oracles[self.oracle_of[i]];
                    if oracle.probe_rank(self.q_class[i], &[a], &[])? > self.classes[i].len() {
                        entered = Some(i);
                        break;
                    }
                }
                if let Some(t_class) = entered {
                    self.commit_phase_path(&path, t_class, &mut trees, &mut alive1)?;
                    if self.kfold {
                        // dead ends recorded below still span their layers
                    }
                    augmentations += 1;
                    path.clear();
                    continue;
                }
            } else {
                // explore out-edges via the next layer's trees, skipping
                // k-fold candidates spanned by earlier layers
                let mut next = None;
                'classes: for i in 0..self.k {
                    if self.classes[i].contains(a) {
                        continue;
                    }
                    loop {
                        let oracle = &mut self.oracles[self.oracle_of[i]];
                        match trees[level - 1][i].find(oracle, FindFrom::Elem(a))? {
                            FindResult::Element(v) => {
                                if self.kfold {
                                    let oracle = &mut self.oracles[0];
                                    let spanned = oracle
                                        .probe_rank(span_version[level - 1], &[v], &[])?
                                        == span_rank[level - 1];
                                    if spanned {
                                        let j = self.class_of[v.index()] as usize;
                                        let oracle = &mut self.oracles[self.oracle_of[j]];
                                        trees[level - 1][j].delete(oracle, v)?;
                                        continue;
                                    }
                                }
                                next = Some(v);
                                break 'classes;
                            }
                            FindResult::None => break,
                            FindResult::Sink => unreachable!(),
                        }
                    }
                }
                if let Some(v) = next {
                    path.push(v);
                    continue;
                }
            }
            // dead end: retreat
            let dead = path.pop().unwrap();
            if level >= 2 {
                let j = self.class_of[dead.index()] as usize;
                let oracle = &mut self.oracles[self.oracle_of[j]];
                trees[level - 2][j].delete(oracle, dead)?;
                if self.kfold {
                    // dead ends join R_level: they were not spanned, so the
                    // prefix rank grows by one
                    let oracle = &mut self.oracles[0];
                    let extended = oracle.insert(span_version[level - 2], dead)?;
                    span_owned[0].push(extended);
                    span_version[level - 2] = extended;
                    span_rank[level - 2] = oracle.query(extended)?;
                }
            } else {
                alive1.remove(&dead);
            }
        }
        for layer in trees {
            for (i, tree) in layer.into_iter().enumerate() {
                tree.dispose(&mut self.oracles[self.oracle_of[i]]);
            }
        }
        for owned in span_owned {
            for v in owned.into_iter().rev() {
                self.oracles[0].release(v);
            }
        }
        self.trace.push(PhaseTrace { d_t, augmentations });
        Ok(PhaseOutcome::Advanced { d_t, augmentations })
    }

    /// Commit a phase path: remove it from alive sets and trees, feed the
    /// per-layer S updates to the trees, update the partition and the
    /// first-layer bases.
    fn commit_phase_path(
        &mut self,
        path: &[Element],
        t_class: usize,
        trees: &mut [Vec<ExchangeBst>],
        alive1: &mut BTreeSet<Element>,
    ) -> Result<()> {
        let a_1 = path[0];
        alive1.remove(&a_1);
        for (idx, &a) in path.iter().enumerate().skip(1) {
            let j = self.class_of[a.index()] as usize;
            let oracle = &mut self.oracles[self.oracle_of[j]];
            trees[idx - 1][j].delete(oracle, a)?;
            trees[idx - 1][j].update(oracle, &[path[idx - 1], a])?;
        }
        self.commit_moves(path, t_class)?;
        self.first_layer_delete(a_1, Some(alive1))?;
        Ok(())
    }

    /// Full driver: blocking-flow phases up to depth sqrt(p), then one
    /// augmentation at a time.
    pub fn run(&mut self) -> Result<()> {
        if self.n == 0 || self.p_est == 0 {
            return Ok(());
        }
        let cutoff = (self.p_est as f64).sqrt().ceil() as usize;
        loop {
            match self.blocking_flow(Some(cutoff))? {
                PhaseOutcome::Optimal => return Ok(()),
                PhaseOutcome::TooDeep { .. } => break,
                PhaseOutcome::Advanced { .. } => {}
            }
        }
        while self.augment_one()? {}
        Ok(())
    }
}

/// Largest set partitionable into one independent set per matroid.
pub fn matroid_union(
    instances: Vec<Arc<MatroidInstance>>,
) -> Result<(Vec<Element>, Vec<Vec<Element>>)> {
    let mut solver = MatroidUnion::new_general(instances)?;
    solver.run()?;
    Ok((solver.total(), solver.class_sets()))
}

/// Largest set partitionable into k disjoint independent sets of `m`.
pub fn kfold_union(
    m: Arc<MatroidInstance>,
    k: usize,
) -> Result<(Vec<Element>, Vec<Vec<Element>>)> {
    let mut solver = MatroidUnion::new_kfold(m, k)?;
    solver.run()?;
    Ok((solver.total(), solver.class_sets()))
}

/// Result of a packing or covering search: the optimal value, a witness
/// partition, the operations spent across all probe solves, and the
/// `(k, union size)` trail of probes.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub value: usize,
    pub classes: Vec<Vec<Element>>,
    pub stats: OracleStats,
    pub probes: Vec<(usize, usize)>,
}

/// Largest k with k disjoint bases, plus the bases.
pub fn packing(m: Arc<MatroidInstance>) -> Result<SearchOutcome> {
    let n = m.ground_size();
    let all: Vec<Element> = (0..n as u32).map(Element).collect();
    let r = m.rank_of(&all)?;
    if r == 0 {
        return Err(Error::ZeroRankMatroid);
    }
    let mut stats = OracleStats::default();
    let mut probes = Vec::new();
    let mut feasible = |k: usize| -> Result<Option<Vec<Vec<Element>>>> {
        let mut solver = MatroidUnion::new_kfold(m.clone(), k)?;
        solver.run()?;
        let total = solver.total().len();
        stats = stats + solver.stats();
        probes.push((k, total));
        Ok((total == k * r).then(|| solver.class_sets()))
    };
    let mut lo = 1usize;
    let mut hi = n / r;
    let mut best = (1, feasible(1)?.expect("a matroid of positive rank has a basis"));
    lo += 1;
    while lo <= hi {
        let mid = (lo + hi).div_ceil(2);
        match feasible(mid)? {
            Some(classes) => {
                best = (mid, classes);
                lo = mid + 1;
            }
            None => hi = mid - 1,
        }
    }
    let (value, classes) = best;
    Ok(SearchOutcome { value, classes, stats, probes })
}

/// Smallest number of independent sets covering the ground set, plus the
/// partition.
pub fn covering(m: Arc<MatroidInstance>) -> Result<SearchOutcome> {
    let n = m.ground_size();
    if n == 0 {
        return Ok(SearchOutcome {
            value: 0,
            classes: Vec::new(),
            stats: OracleStats::default(),
            probes: Vec::new(),
        });
    }
    for e in (0..n as u32).map(Element) {
        if m.rank_of(std::slice::from_ref(&e))? == 0 {
            return Err(Error::LoopElement(e));
        }
    }
    let mut stats = OracleStats::default();
    let mut probes = Vec::new();
    let mut covers = |k: usize| -> Result<Option<Vec<Vec<Element>>>> {
        let mut solver = MatroidUnion::new_kfold(m.clone(), k)?;
        solver.run()?;
        let total = solver.total().len();
        stats = stats + solver.stats();
        probes.push((k, total));
        Ok((total == n).then(|| solver.class_sets()))
    };
    // doubling for a 2-approximation, then binary search below it
    let mut hi = 1usize;
    let mut hi_classes = loop {
        if let Some(classes) = covers(hi)? {
            break classes;
        }
        hi *= 2;
        if hi > n {
            hi = n;
            break covers(hi)?.expect("n loop-free singletons always cover");
        }
    };
    let mut lo = hi / 2 + 1;
    let mut best = (hi, std::mem::take(&mut hi_classes));
    while lo < best.0 {
        let mid = (lo + best.0) / 2;
        match covers(mid)? {
            Some(classes) => best = (mid, classes),
            None => lo = mid + 1,
        }
    }
    let (value, mut classes) = best;
    classes.truncate(value);
    Ok(SearchOutcome { value, classes, stats, probes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit;

    fn arc(m: MatroidInstance) -> Arc<MatroidInstance> {
        Arc::new(m)
    }

    fn k4() -> MatroidInstance {
        MatroidInstance::graphic(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap()
    }

    fn k6() -> MatroidInstance {
        let mut ends = Vec::new();
        for u in 0..6u32 {
            for v in u + 1..6 {
                ends.push((u, v));
            }
        }
        MatroidInstance::graphic(6, ends).unwrap()
    }

    #[test]
    fn bfs_from_empty_s_reaches_t_at_distance_two() {
        let mut solver = MatroidUnion::new_kfold(arc(k4()), 2).unwrap();
        let bfs = solver.bfs().unwrap();
        assert_eq!(bfs.d_t, Some(2));
    }

    #[test]
    fn k4_packs_two_spanning_trees() {
        let (total, classes) = kfold_union(arc(k4()), 2).unwrap();
        assert_eq!(total.len(), 6);
        for class in &classes {
            assert_eq!(class.len(), 3);
            assert_eq!(k4().rank_of(class).unwrap(), 3);
        }
    }

    #[test]
    fn single_fold_union_is_a_basis() {
        let (total, classes) = kfold_union(arc(k4()), 1).unwrap();
        assert_eq!(total.len(), 3);
        assert_eq!(classes[0].len(), 3);
        // k = 1 degenerates to a greedy basis: one phase of length-2 paths
        let mut solver = MatroidUnion::new_kfold(arc(k4()), 1).unwrap();
        solver.run().unwrap();
        assert_eq!(solver.trace.len(), 1);
        assert_eq!(solver.trace[0].d_t, 2);
        assert_eq!(solver.trace[0].augmentations, 3);
    }

    #[test]
    fn union_phase_distances_strictly_increase() {
        let mut rng = testkit::rng(0x7A);
        for _ in 0..40 {
            let n = rand::Rng::gen_range(&mut rng, 2..=9usize);
            let k = rand::Rng::gen_range(&mut rng, 1..=3usize);
            let m = testkit::gen_graphic(&mut rng, n);
            let mut solver = MatroidUnion::new_kfold(arc(m), k).unwrap();
            let mut last = 0usize;
            loop {
                match solver.blocking_flow(None).unwrap() {
                    PhaseOutcome::Optimal => break,
                    PhaseOutcome::Advanced { d_t, .. } => {
                        assert!(d_t > last, "union d_t went from {last} to {d_t}");
                        last = d_t;
                    }
                    PhaseOutcome::TooDeep { .. } => unreachable!(),
                }
            }
        }
    }

    #[test]
    fn k6_two_fold_union_covers_ten_edges() {
        let (total, classes) = kfold_union(arc(k6()), 2).unwrap();
        assert_eq!(total.len(), 10);
        for class in &classes {
            assert_eq!(class.len(), 5);
        }
    }

    #[test]
    fn zero_rank_matroids_union_to_nothing() {
        let m = MatroidInstance::uniform(5, 0).unwrap();
        let (total, _) = kfold_union(arc(m), 3).unwrap();
        assert!(total.is_empty());
    }

    #[test]
    fn mixed_forest_pseudoforest_on_c4() {
        let ends = vec![(0u32, 1u32), (1, 2), (2, 3), (3, 0)];
        let g = MatroidInstance::graphic(4, ends.clone()).unwrap();
        let b = MatroidInstance::bicircular(4, ends).unwrap();
        let expected = testkit::brute_union_general(&[&g, &b]).unwrap();
        assert_eq!(expected, 4);
        let (total, classes) = matroid_union(vec![arc(g.clone()), arc(b.clone())]).unwrap();
        assert_eq!(total.len(), expected);
        assert_eq!(g.rank_of(&classes[0]).unwrap(), classes[0].len());
        assert_eq!(b.rank_of(&classes[1]).unwrap(), classes[1].len());
    }

    #[test]
    fn matches_brute_force_on_random_instances() {
        let mut rng = testkit::rng(0x17);
        for trial in 0..80 {
            let n = rand::Rng::gen_range(&mut rng, 1..=8usize);
            let k = rand::Rng::gen_range(&mut rng, 1..=3usize);
            let ms: Vec<MatroidInstance> =
                (0..k).map(|_| testkit::gen_instance(&mut rng, n)).collect();
            let refs: Vec<&MatroidInstance> = ms.iter().collect();
            let expected = testkit::brute_union_general(&refs).unwrap();
            let arcs: Vec<Arc<MatroidInstance>> = ms.iter().cloned().map(Arc::new).collect();
            let (total, classes) = matroid_union(arcs).unwrap();
            assert_eq!(total.len(), expected, "trial {trial}");
            for (i, class) in classes.iter().enumerate() {
                assert_eq!(ms[i].rank_of(class).unwrap(), class.len());
            }
        }
    }

    #[test]
    fn kfold_and_general_union_agree() {
        let mut rng = testkit::rng(0x2F);
        for _ in 0..60 {
            let n = rand::Rng::gen_range(&mut rng, 1..=8usize);
            let k = rand::Rng::gen_range(&mut rng, 1..=3usize);
            let m = testkit::gen_graphic(&mut rng, n);
            let (fold_total, _) = kfold_union(arc(m.clone()), k).unwrap();
            let arcs: Vec<Arc<MatroidInstance>> = (0..k).map(|_| arc(m.clone())).collect();
            let (gen_total, _) = matroid_union(arcs).unwrap();
            assert_eq!(fold_total.len(), gen_total.len());
            assert_eq!(fold_total.len(), testkit::brute_union(&m, k).unwrap());
        }
    }

    #[test]
    fn kfold_bfs_distances_match_general_bfs() {
        let mut rng = testkit::rng(0x3D);
        for _ in 0..40 {
            let n = rand::Rng::gen_range(&mut rng, 2..=8usize);
            let k = rand::Rng::gen_range(&mut rng, 1..=3usize);
            let m = testkit::gen_graphic(&mut rng, n);
            let mut fold = MatroidUnion::new_kfold(arc(m.clone()), k).unwrap();
            let arcs: Vec<Arc<MatroidInstance>> = (0..k).map(|_| arc(m.clone())).collect();
            let mut gen = MatroidUnion::new_general(arcs).unwrap();
            // advance both by a few identical augmentations
            for _ in 0..2 {
                let a = fold.augment_one().unwrap();
                let b = gen.augment_one().unwrap();
                assert_eq!(a, b);
            }
            let bf = fold.bfs().unwrap();
            let bg = gen.bfs().unwrap();
            assert_eq!(bf.d_t, bg.d_t);
            // the skip rule must not change any distance either
            assert_eq!(bf.dist, bg.dist);
        }
    }

    #[test]
    fn first_layer_sparsification_is_sound() {
        // distances computed from the maintained bases match a BFS that uses
        // all of U \ S in the first layer
        let mut rng = testkit::rng(0x4C);
        for _ in 0..30 {
            let n = rand::Rng::gen_range(&mut rng, 2..=8usize);
            let k = rand::Rng::gen_range(&mut rng, 1..=2usize);
            let m = testkit::gen_graphic(&mut rng, n);
            let mut solver = MatroidUnion::new_kfold(arc(m.clone()), k).unwrap();
            solver.augment_one().unwrap();
            solver.augment_one().unwrap();
            let bfs = solver.bfs().unwrap();
            // reference: exhaustive H(S) from the full complement
            let classes = solver.class_sets();
            let mut dist_ref: Vec<Option<usize>> = vec![None; n];
            let mut queue: VecDeque<Element> = VecDeque::new();
            for e in (0..n as u32).map(Element) {
                if solver.class_of[e.index()] < 0 {
                    dist_ref[e.index()] = Some(1);
                    queue.push_back(e);
                }
            }
            let mut dt_ref: Option<usize> = None;
            while let Some(u) = queue.pop_front() {
                let du = dist_ref[u.index()].unwrap();
                for class in &classes {
                    if class.contains(&u) {
                        continue;
                    }
                    let mut with: Vec<Element> = class.clone();
                    with.push(u);
                    if m.rank_of(&with).unwrap() == with.len() {
                        dt_ref = Some(dt_ref.map_or(du + 1, |d| d.min(du + 1)));
                    }
                    for &v in class.iter() {
                        if dist_ref[v.index()].is_some() {
                            continue;
                        }
                        let swapped: Vec<Element> =
                            with.iter().copied().filter(|&e| e != v).collect();
                        if m.rank_of(&swapped).unwrap() == swapped.len() {
                            dist_ref[v.index()] = Some(du + 1);
                            queue.push_back(v);
                        }
                    }
                }
            }
            assert_eq!(bfs.d_t, dt_ref);
            // distance-2 sets agree (the sparsification claim); the solver
            // only constructs layers below d_t, so compare when they exist
            if bfs.d_t.is_none_or(|d| d > 2) {
                for e in (0..n as u32).map(Element) {
                    let got2 = bfs.dist[e.index()] == Some(2);
                    let ref2 = dist_ref[e.index()] == Some(2);
                    assert_eq!(got2, ref2, "element {e}");
                }
            }
        }
    }

    #[test]
    fn bases_stay_synchronized_with_the_partition() {
        let mut rng = testkit::rng(0x55);
        for _ in 0..25 {
            let n = rand::Rng::gen_range(&mut rng, 2..=9usize);
            let m = testkit::gen_graphic(&mut rng, n);
            let mut solver = MatroidUnion::new_kfold(arc(m.clone()), 2).unwrap();
            loop {
                match solver.blocking_flow(None).unwrap() {
                    PhaseOutcome::Optimal => break,
                    _ => {
                        let in_s: Vec<Element> = solver.total();
                        let rest: Vec<Element> = (0..n as u32)
                            .map(Element)
                            .filter(|e| !in_s.contains(e))
                            .collect();
                        let expect = testkit::greedy_basis(&m, &rest);
                        assert_eq!(solver.bases[0].basis(&solver.oracles[0]), expect);
                    }
                }
            }
        }
    }

    #[test]
    fn packing_counts_disjoint_bases() {
        let out = packing(arc(k4())).unwrap();
        assert_eq!(out.value, 2);
        assert_eq!(out.classes.len(), 2);
        assert!(out.stats.total_ops() > 0);
        // a tree has packing number 1
        let path = MatroidInstance::graphic(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(packing(arc(path)).unwrap().value, 1);
        // uniform U(6, 2): three disjoint pairs
        let u = MatroidInstance::uniform(6, 2).unwrap();
        assert_eq!(packing(arc(u)).unwrap().value, 3);
        // rank zero is an error
        let z = MatroidInstance::uniform(3, 0).unwrap();
        assert!(matches!(packing(arc(z)), Err(Error::ZeroRankMatroid)));
    }

    #[test]
    fn covering_partitions_the_ground_set() {
        let out = covering(arc(k4())).unwrap();
        assert_eq!(out.value, 2);
        assert_eq!(out.classes.iter().map(|c| c.len()).sum::<usize>(), 6);
        // free matroid: one class
        let free = MatroidInstance::uniform(4, 4).unwrap();
        assert_eq!(covering(arc(free)).unwrap().value, 1);
        // K5 has arboricity 3
        let mut ends = Vec::new();
        for u in 0..5u32 {
            for v in u + 1..5 {
                ends.push((u, v));
            }
        }
        let k5 = MatroidInstance::graphic(5, ends).unwrap();
        assert_eq!(covering(arc(k5)).unwrap().value, 3);
        // loops cannot be covered
        let loopy = MatroidInstance::uniform(2, 0).unwrap();
        assert!(matches!(covering(arc(loopy)), Err(Error::LoopElement(_))));
    }
}
