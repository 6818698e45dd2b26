//! The dynamic rank oracle: query-sets are versions created by one-element
//! edits of any previously created version, and every `insert`, `delete`,
//! and `query` is counted. Rank is computed eagerly when a version is
//! created, so `query` itself is a counter bump plus a cache read.
//!
//! Internally a single mutable "cursor" set is rewound along the version
//! tree to the parent of each new version; per-kind backends either track
//! rank incrementally under these flips (partition, uniform, explicit) or
//! recompute it from the materialized set (graphic, linear, gammoid, ...).
//! Only the operation counts are contractual; rewinding costs wall-clock
//! time proportional to the tree distance between consecutive parents.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::elem::{DenseSet, Element};
use crate::error::{Error, Result};
use crate::matroids::{Kind, MatroidInstance};

/// Opaque version identifier: a table slot plus a generation stamp so that
/// identifiers of released versions never alias later ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VersionId(u64);

impl VersionId {
    fn new(slot: u32, gen: u32) -> Self {
        VersionId((gen as u64) << 32 | slot as u64)
    }

    fn slot(self) -> usize {
        (self.0 & u32::MAX as u64) as usize
    }

    fn gen(self) -> u32 {
        (self.0 >> 32) as u32
    }
}

pub const ROOT: VersionId = VersionId(0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaKind {
    Insert,
    Delete,
}

#[derive(Debug, Clone)]
struct VersionNode {
    parent: VersionId,
    delta: (Element, DeltaKind),
    size: u32,
    rank: u32,
    depth: u32,
    children: u32,
    released: bool,
}

/// Operation counters for one oracle instance. `live_versions` excludes the
/// root and shrinks under explicit release; everything else only grows.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleStats {
    pub inserts: u64,
    pub deletes: u64,
    pub rank_queries: u64,
    pub live_versions: u64,
    pub max_set_size: u64,
}

impl OracleStats {
    pub fn total_ops(&self) -> u64 {
        self.inserts + self.deletes + self.rank_queries
    }
}

impl std::ops::Add for OracleStats {
    type Output = OracleStats;
    fn add(self, rhs: OracleStats) -> OracleStats {
        OracleStats {
            inserts: self.inserts + rhs.inserts,
            deletes: self.deletes + rhs.deletes,
            rank_queries: self.rank_queries + rhs.rank_queries,
            live_versions: self.live_versions + rhs.live_versions,
            max_set_size: self.max_set_size.max(rhs.max_set_size),
        }
    }
}

impl std::ops::Sub for OracleStats {
    type Output = OracleStats;
    fn sub(self, rhs: OracleStats) -> OracleStats {
        OracleStats {
            inserts: self.inserts - rhs.inserts,
            deletes: self.deletes - rhs.deletes,
            rank_queries: self.rank_queries - rhs.rank_queries,
            live_versions: self.live_versions,
            max_set_size: self.max_set_size,
        }
    }
}

/// Rank maintenance under single-element flips of one mutable set.
pub trait RankBackend: Send {
    /// `e` was just toggled; it is present afterwards iff `now_present`.
    fn flip(&mut self, e: Element, now_present: bool);
    /// Rank of the current set. `view` is the materialized set for backends
    /// that recompute instead of tracking state.
    fn rank(&mut self, view: &DenseSet) -> usize;
}

enum InstanceBackend {
    Partition { counts: Vec<u32>, rank: usize },
    ExplicitMask { mask: usize },
    Uniform { r: usize },
    Recompute,
}

struct DefaultBackend {
    instance: Arc<MatroidInstance>,
    state: InstanceBackend,
}

impl DefaultBackend {
    fn new(instance: Arc<MatroidInstance>) -> Self {
        let state = match instance.kind() {
            Kind::Partition { caps, .. } => {
                InstanceBackend::Partition { counts: vec![0; caps.len()], rank: 0 }
            }
            Kind::Explicit { .. } => InstanceBackend::ExplicitMask { mask: 0 },
            Kind::Uniform { r } => InstanceBackend::Uniform { r: *r },
            _ => InstanceBackend::Recompute,
        };
        DefaultBackend { instance, state }
    }
}

impl RankBackend for DefaultBackend {
    fn flip(&mut self, e: Element, now_present: bool) {
        match &mut self.state {
            InstanceBackend::Partition { counts, rank } => {
                let Kind::Partition { color, caps } = self.instance.kind() else {
                    unreachable!()
                };
                let c = color[e.index()] as usize;
                if now_present {
                    counts[c] += 1;
                    *rank += (counts[c] <= caps[c]) as usize;
                } else {
                    *rank -= (counts[c] <= caps[c]) as usize;
                    counts[c] -= 1;
                }
            }
            InstanceBackend::ExplicitMask { mask } => {
                *mask ^= 1usize << e.index();
                debug_assert_eq!(*mask >> e.index() & 1 == 1, now_present);
            }
            InstanceBackend::Uniform { .. } | InstanceBackend::Recompute => {}
        }
    }

    fn rank(&mut self, view: &DenseSet) -> usize {
        match &self.state {
            InstanceBackend::Partition { rank, .. } => *rank,
            InstanceBackend::ExplicitMask { mask } => {
                let Kind::Explicit { rank_table } = self.instance.kind() else { unreachable!() };
                rank_table[*mask] as usize
            }
            InstanceBackend::Uniform { r } => view.len().min(*r),
            InstanceBackend::Recompute => self.instance.rank_unchecked(view.iter(), view.len()),
        }
    }
}

/// One dynamic-rank oracle over one matroid instance. Single-threaded; no
/// operation is reentrant.
struct Slot {
    gen: u32,
    node: Option<VersionNode>,
}

pub struct DynOracle {
    instance: Arc<MatroidInstance>,
    backend: Box<dyn RankBackend>,
    nodes: Vec<Slot>,
    free: Vec<u32>,
    cursor: VersionId,
    view: DenseSet,
    stats: OracleStats,
}

impl DynOracle {
    pub fn new(instance: Arc<MatroidInstance>) -> Self {
        let backend = Box::new(DefaultBackend::new(instance.clone()));
        Self::with_backend(instance, backend)
    }

    pub fn with_backend(instance: Arc<MatroidInstance>, backend: Box<dyn RankBackend>) -> Self {
        let root = VersionNode {
            parent: ROOT,
            delta: (Element(0), DeltaKind::Insert),
            size: 0,
            rank: 0,
            depth: 0,
            children: 0,
            released: false,
        };
        let view = DenseSet::new(instance.ground_size());
        DynOracle {
            instance,
            backend,
            nodes: vec![Slot { gen: 0, node: Some(root) }],
            free: Vec::new(),
            cursor: ROOT,
            view,
            stats: OracleStats::default(),
        }
    }

    pub fn instance(&self) -> &Arc<MatroidInstance> {
        &self.instance
    }

    pub fn ground_size(&self) -> usize {
        self.instance.ground_size()
    }

    pub fn stats(&self) -> OracleStats {
        self.stats
    }

    fn node(&self, v: VersionId) -> Result<&VersionNode> {
        self.nodes
            .get(v.slot())
            .filter(|s| s.gen == v.gen())
            .and_then(|s| s.node.as_ref())
            .ok_or(Error::UnknownVersion(v))
    }

    fn raw(&self, v: VersionId) -> &VersionNode {
        self.nodes[v.slot()].node.as_ref().unwrap()
    }

    fn node_mut(&mut self, v: VersionId) -> &mut VersionNode {
        self.nodes[v.slot()].node.as_mut().unwrap()
    }

    /// Create the version `materialize(v) + x`.
    pub fn insert(&mut self, v: VersionId, x: Element) -> Result<VersionId> {
        self.node(v)?;
        self.instance.check_element(x)?;
        self.rewind_to(v);
        if self.view.contains(x) {
            return Err(Error::ElementAlreadyPresent(x));
        }
        self.stats.inserts += 1;
        Ok(self.commit(v, x, DeltaKind::Insert))
    }

    /// Create the version `materialize(v) - x`.
    pub fn delete(&mut self, v: VersionId, x: Element) -> Result<VersionId> {
        self.node(v)?;
        self.instance.check_element(x)?;
        self.rewind_to(v);
        if !self.view.contains(x) {
            return Err(Error::ElementAbsent(x));
        }
        self.stats.deletes += 1;
        Ok(self.commit(v, x, DeltaKind::Delete))
    }

    fn commit(&mut self, parent: VersionId, x: Element, kind: DeltaKind) -> VersionId {
        self.view.toggle(x);
        self.backend.flip(x, kind == DeltaKind::Insert);
        let rank = self.backend.rank(&self.view) as u32;
        let parent_node = self.raw(parent);
        let depth = parent_node.depth + 1;
        debug_assert!(
            rank.abs_diff(parent_node.rank) <= 1,
            "rank must change by at most one per element edit"
        );
        let node = VersionNode {
            parent,
            delta: (x, kind),
            size: self.view.len() as u32,
            rank,
            depth,
            children: 0,
            released: false,
        };
        let id = match self.free.pop() {
            Some(slot) => {
                let s = &mut self.nodes[slot as usize];
                s.node = Some(node);
                VersionId::new(slot, s.gen)
            }
            None => {
                self.nodes.push(Slot { gen: 0, node: Some(node) });
                VersionId::new(self.nodes.len() as u32 - 1, 0)
            }
        };
        self.node_mut(parent).children += 1;
        let old_cursor = self.cursor;
        self.cursor = id;
        self.try_free(old_cursor);
        self.stats.live_versions += 1;
        self.stats.max_set_size = self.stats.max_set_size.max(self.view.len() as u64);
        id
    }

    /// Rank of version `v` (cached at creation).
    pub fn query(&mut self, v: VersionId) -> Result<usize> {
        let rank = self.node(v)?.rank;
        self.stats.rank_queries += 1;
        Ok(rank as usize)
    }

    /// Set size of version `v`; bookkeeping, not a counted oracle operation.
    pub fn size(&self, v: VersionId) -> Result<usize> {
        Ok(self.node(v)?.size as usize)
    }

    /// Walk the delta chain back to the root and return the sorted set.
    pub fn materialize(&self, v: VersionId) -> Result<Vec<Element>> {
        self.node(v)?;
        let mut chain = Vec::new();
        let mut at = v;
        while at != ROOT {
            let node = self.node(at)?;
            chain.push(node.delta);
            at = node.parent;
        }
        let cap = self.instance.ground_size();
        let mut set = DenseSet::new(cap);
        for &(e, kind) in chain.iter().rev() {
            match kind {
                DeltaKind::Insert => {
                    set.insert(e);
                }
                DeltaKind::Delete => {
                    set.remove(e);
                }
            }
        }
        Ok(set.to_vec())
    }

    /// Drop a version the caller will never touch again. Memory is reclaimed
    /// once no other version builds on it. Releasing the root is a no-op.
    pub fn release(&mut self, v: VersionId) {
        if v == ROOT || self.node(v).is_err() {
            return;
        }
        if !self.raw(v).released {
            self.node_mut(v).released = true;
            self.stats.live_versions -= 1;
        }
        self.try_free(v);
    }

    fn try_free(&mut self, mut v: VersionId) {
        loop {
            if v == ROOT || v == self.cursor {
                return;
            }
            let node = self.raw(v);
            if !node.released || node.children > 0 {
                return;
            }
            let parent = node.parent;
            let slot = &mut self.nodes[v.slot()];
            slot.node = None;
            slot.gen = slot.gen.wrapping_add(1);
            self.free.push(v.slot() as u32);
            self.node_mut(parent).children -= 1;
            v = parent;
        }
    }

    /// Move the cursor set (and backend state) to version `v` by flipping
    /// deltas along the tree path.
    fn rewind_to(&mut self, v: VersionId) {
        if self.cursor == v {
            return;
        }
        let mut up = self.cursor;
        let mut down = v;
        let mut redo: Vec<(Element, DeltaKind)> = Vec::new();
        let (mut du, mut dd) = (self.raw(up).depth, self.raw(down).depth);
        while du > dd {
            up = self.undo_step(up);
            du -= 1;
        }
        while dd > du {
            let node = self.raw(down);
            redo.push(node.delta);
            down = node.parent;
            dd -= 1;
        }
        while up != down {
            up = self.undo_step(up);
            let node = self.raw(down);
            redo.push(node.delta);
            down = node.parent;
        }
        for &(e, kind) in redo.iter().rev() {
            self.view.toggle(e);
            self.backend.flip(e, kind == DeltaKind::Insert);
        }
        let old_cursor = self.cursor;
        self.cursor = v;
        self.try_free(old_cursor);
    }

    fn undo_step(&mut self, at: VersionId) -> VersionId {
        let node = self.raw(at);
        let (e, kind) = node.delta;
        let parent = node.parent;
        self.view.toggle(e);
        self.backend.flip(e, kind == DeltaKind::Delete);
        parent
    }

    /// Chain of inserts; convenience for building query-sets.
    pub fn insert_all(
        &mut self,
        from: VersionId,
        elems: impl IntoIterator<Item = Element>,
    ) -> Result<VersionId> {
        let mut at = from;
        for e in elems {
            at = self.insert(at, e)?;
        }
        Ok(at)
    }

    /// Rank of `base` with `adds` inserted and `dels` removed; the probe
    /// versions are created, queried once, and released.
    pub fn probe_rank(
        &mut self,
        base: VersionId,
        adds: &[Element],
        dels: &[Element],
    ) -> Result<usize> {
        let mut chain = Vec::new();
        let mut at = base;
        for &e in adds {
            at = self.insert(at, e)?;
            chain.push(at);
        }
        for &e in dels {
            at = self.delete(at, e)?;
            chain.push(at);
        }
        let rank = self.query(at)?;
        for v in chain.into_iter().rev() {
            self.release(v);
        }
        Ok(rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroids::MatroidInstance;

    fn oracle(inst: MatroidInstance) -> DynOracle {
        DynOracle::new(Arc::new(inst))
    }

    #[test]
    fn fresh_oracle_has_zeroed_counters() {
        let o = oracle(MatroidInstance::uniform(4, 2).unwrap());
        assert_eq!(o.stats(), OracleStats::default());
    }

    #[test]
    fn empty_set_has_rank_zero() {
        let mut o = oracle(MatroidInstance::uniform(4, 2).unwrap());
        assert_eq!(o.query(ROOT).unwrap(), 0);
        assert_eq!(o.materialize(ROOT).unwrap(), vec![]);
    }

    #[test]
    fn single_element_is_independent_in_a_loopless_matroid() {
        // partition matroid, 2 colors with cap 1 each
        let m = MatroidInstance::partition(vec![0, 0, 1], vec![1, 1]).unwrap();
        let mut o = oracle(m);
        let v = o.insert(ROOT, Element(0)).unwrap();
        assert_eq!(o.query(v).unwrap(), 1);
    }

    #[test]
    fn graphic_triangle_insert_keeps_rank_two() {
        // rank = 3 vertices - 1 component = 2 after all three edges
        let m = MatroidInstance::graphic(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let mut o = oracle(m);
        let v1 = o.insert(ROOT, Element(0)).unwrap();
        let v2 = o.insert(v1, Element(1)).unwrap();
        assert_eq!(o.query(v2).unwrap(), 2);
        let v3 = o.insert(v2, Element(2)).unwrap();
        assert_eq!(o.query(v3).unwrap(), 2);
        let v4 = o.delete(v3, Element(2)).unwrap();
        assert_eq!(o.query(v4).unwrap(), 2);
    }

    #[test]
    fn duplicate_insert_and_missing_delete_are_errors() {
        let m = MatroidInstance::uniform(3, 3).unwrap();
        let mut o = oracle(m);
        let v = o.insert(ROOT, Element(1)).unwrap();
        assert_eq!(o.insert(v, Element(1)), Err(Error::ElementAlreadyPresent(Element(1))));
        assert_eq!(o.delete(v, Element(2)), Err(Error::ElementAbsent(Element(2))));
        assert_eq!(o.insert(v, Element(9)), Err(Error::ElementOutOfGroundSet(Element(9))));
        let bogus = VersionId::new(99, 0);
        assert_eq!(o.query(bogus), Err(Error::UnknownVersion(bogus)));
    }

    #[test]
    fn insert_then_delete_restores_the_set() {
        let m = MatroidInstance::uniform(4, 4).unwrap();
        let mut o = oracle(m);
        let a = o.insert(ROOT, Element(0)).unwrap();
        let b = o.insert(a, Element(1)).unwrap();
        assert_eq!(o.materialize(b).unwrap(), vec![Element(0), Element(1)]);
        let c = o.delete(b, Element(1)).unwrap();
        assert_eq!(o.materialize(c).unwrap(), o.materialize(a).unwrap());
    }

    #[test]
    fn branching_versions_do_not_alias() {
        let m = MatroidInstance::uniform(4, 4).unwrap();
        let mut o = oracle(m);
        let base = o.insert(ROOT, Element(0)).unwrap();
        let left = o.insert(base, Element(1)).unwrap();
        let right = o.insert(base, Element(2)).unwrap();
        let left2 = o.delete(left, Element(0)).unwrap();
        assert_eq!(o.materialize(left2).unwrap(), vec![Element(1)]);
        assert_eq!(o.materialize(right).unwrap(), vec![Element(0), Element(2)]);
        assert_eq!(o.materialize(left).unwrap(), vec![Element(0), Element(1)]);
    }

    #[test]
    fn stats_count_operations() {
        let m = MatroidInstance::uniform(8, 4).unwrap();
        let mut o = oracle(m);
        let a = o.insert(ROOT, Element(0)).unwrap();
        let b = o.insert(a, Element(1)).unwrap();
        let _c = o.insert(b, Element(2)).unwrap();
        o.query(b).unwrap();
        let s = o.stats();
        assert_eq!((s.inserts, s.deletes, s.rank_queries), (3, 0, 1));
        assert_eq!(s.live_versions, 3);
        assert_eq!(s.max_set_size, 3);
    }

    #[test]
    fn release_reclaims_leaf_chains() {
        let m = MatroidInstance::uniform(8, 4).unwrap();
        let mut o = oracle(m);
        let a = o.insert(ROOT, Element(0)).unwrap();
        let b = o.insert(a, Element(1)).unwrap();
        o.release(b);
        // b is the cursor, so the slot is only reclaimed after the cursor moves
        let c = o.insert(a, Element(2)).unwrap();
        assert_eq!(o.query(b), Err(Error::UnknownVersion(b)));
        assert_eq!(o.stats().live_versions, 2);
        assert_eq!(o.query(c).unwrap(), 2);
    }

    #[test]
    fn probe_rank_leaves_no_live_versions() {
        let m = MatroidInstance::graphic(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let mut o = oracle(m);
        let v = o.insert_all(ROOT, [Element(0), Element(1)]).unwrap();
        let live = o.stats().live_versions;
        let r = o.probe_rank(v, &[Element(2)], &[]).unwrap();
        assert_eq!(r, 2);
        assert_eq!(o.stats().live_versions, live);
        // the probed version is gone but v still works
        assert_eq!(o.query(v).unwrap(), 2);
    }
}
