//! Binary search tree over query-sets for finding free elements and exchange
//! pairs in logarithmically many rank probes.
//!
//! A tree is built over an active set `X` (on one fixed side of the
//! maintained independent set `S`); every node caches a query-set version
//! for `S + X_v` (co-circuit), `S - X_v` (circuit), or just `S` (sink).
//! Updates to `S` are batched in `delta` and replayed on top of the cached
//! versions during a find; once the batch outgrows `beta` the whole tree is
//! rebuilt against the up-to-date `S`. One always-current root version makes
//! unsuccessful finds cost O(1) oracle operations.

use std::collections::HashMap;

use crate::elem::{DenseSet, Element};
use crate::error::{Error, Result};
use crate::oracle::{DynOracle, VersionId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BstVariant {
    /// `X` on the complement of `S`; finds `x` with `S - y + x` (or `S + x`)
    /// independent.
    CoCircuit,
    /// `X` inside `S`; finds `x` with `S - x + y` independent.
    Circuit,
    /// No real `X`; answers whether `S + y` is independent.
    Sink,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FindFrom {
    /// The source vertex `s` of the exchange graph (free-element search).
    Source,
    Elem(Element),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FindResult {
    Element(Element),
    /// Sink-variant hit: `S + y` is independent.
    Sink,
    None,
}

impl FindResult {
    pub fn element(self) -> Option<Element> {
        match self {
            FindResult::Element(e) => Some(e),
            _ => None,
        }
    }

    pub fn is_none(self) -> bool {
        self == FindResult::None
    }
}

#[derive(Debug, Clone)]
struct Node {
    version: VersionId,
    live: u32,
    lo: u32,
    hi: u32,
    left: i32,
    right: i32,
}

pub struct ExchangeBst {
    variant: BstVariant,
    beta: usize,
    s_built: DenseSet,
    s_cur: DenseSet,
    /// Batched updates: exactly the symmetric difference of current and
    /// built S, as a list plus a membership bitmap.
    delta: Vec<Element>,
    delta_set: DenseSet,
    q_s: VersionId,
    q_s_owned: bool,
    root_cur: VersionId,
    root_cur_owned: bool,
    nodes: Vec<Node>,
    leaves: Vec<Element>,
    leaf_live: Vec<bool>,
    leaf_of: HashMap<Element, u32>,
    rebuilds: usize,
}

impl ExchangeBst {
    /// Build a tree for `S` (whose query-set version is `q_s`) over the
    /// active set `x`. `beta` is the rebuild threshold.
    pub fn new(
        oracle: &mut DynOracle,
        s: &[Element],
        q_s: VersionId,
        x: &[Element],
        beta: usize,
        variant: BstVariant,
    ) -> Result<Self> {
        let n = oracle.ground_size();
        let mut s_set = DenseSet::new(n);
        for &e in s {
            s_set.insert(e);
        }
        let mut seen = DenseSet::new(n);
        for &e in x {
            if !seen.insert(e) {
                return Err(Error::VariantSetMismatch(format!("duplicate element {e} in X")));
            }
            match variant {
                BstVariant::CoCircuit if s_set.contains(e) => {
                    return Err(Error::VariantSetMismatch(format!("{e} is in S")));
                }
                BstVariant::Circuit if !s_set.contains(e) => {
                    return Err(Error::VariantSetMismatch(format!("{e} is not in S")));
                }
                BstVariant::Sink => {
                    return Err(Error::VariantSetMismatch("sink trees take no X".into()));
                }
                _ => {}
            }
        }
        debug_assert_eq!(
            oracle.instance().rank_of(s).unwrap(),
            s.len(),
            "S must be independent"
        );
        let mut tree = ExchangeBst {
            variant,
            beta: beta.max(1),
            s_built: s_set.clone(),
            s_cur: s_set,
            delta: Vec::new(),
            delta_set: DenseSet::new(n),
            q_s,
            q_s_owned: false,
            root_cur: q_s,
            root_cur_owned: false,
            nodes: Vec::new(),
            leaves: Vec::new(),
            leaf_live: Vec::new(),
            leaf_of: HashMap::new(),
            rebuilds: 0,
        };
        tree.build(oracle, x.to_vec())?;
        Ok(tree)
    }

    fn build(&mut self, oracle: &mut DynOracle, x: Vec<Element>) -> Result<()> {
        self.nodes.clear();
        self.leaf_of.clear();
        self.leaf_live = vec![true; x.len()];
        for (i, &e) in x.iter().enumerate() {
            self.leaf_of.insert(e, i as u32);
        }
        self.leaves = x;
        if self.variant == BstVariant::Sink || self.leaves.is_empty() {
            self.root_cur = self.q_s;
            self.root_cur_owned = false;
            return Ok(());
        }
        // root version: S +/- X, then children by removing/restoring halves
        let mut root_version = self.q_s;
        for &e in &self.leaves {
            root_version = match self.variant {
                BstVariant::CoCircuit => oracle.insert(root_version, e)?,
                BstVariant::Circuit => oracle.delete(root_version, e)?,
                BstVariant::Sink => unreachable!(),
            };
        }
        // a separate always-current copy of the root set
        let mut cur = self.q_s;
        for &e in &self.leaves {
            cur = match self.variant {
                BstVariant::CoCircuit => oracle.insert(cur, e)?,
                BstVariant::Circuit => oracle.delete(cur, e)?,
                BstVariant::Sink => unreachable!(),
            };
        }
        self.root_cur = cur;
        self.root_cur_owned = true;
        self.split(oracle, root_version, 0, self.leaves.len() as u32)?;
        Ok(())
    }

    /// Allocate the node for leaf range `[lo, hi)` whose query-set version is
    /// `version`, recursing into halves.
    fn split(
        &mut self,
        oracle: &mut DynOracle,
        version: VersionId,
        lo: u32,
        hi: u32,
    ) -> Result<i32> {
        let idx = self.nodes.len() as i32;
        self.nodes.push(Node { version, live: hi - lo, lo, hi, left: -1, right: -1 });
        if hi - lo > 1 {
            let mid = (lo + hi) / 2;
            let mut left_version = version;
            for i in mid..hi {
                left_version = self.strip(oracle, left_version, self.leaves[i as usize])?;
            }
            let mut right_version = version;
            for i in lo..mid {
                right_version = self.strip(oracle, right_version, self.leaves[i as usize])?;
            }
            let left = self.split(oracle, left_version, lo, mid)?;
            let right = self.split(oracle, right_version, mid, hi)?;
            self.nodes[idx as usize].left = left;
            self.nodes[idx as usize].right = right;
        }
        Ok(idx)
    }

    /// Remove one X element from a node's query-set (direction depends on
    /// the variant).
    fn strip(&self, oracle: &mut DynOracle, version: VersionId, e: Element) -> Result<VersionId> {
        match self.variant {
            BstVariant::CoCircuit => oracle.delete(version, e),
            BstVariant::Circuit => oracle.insert(version, e),
            BstVariant::Sink => unreachable!(),
        }
    }

    pub fn variant(&self) -> BstVariant {
        self.variant
    }

    pub fn live_count(&self) -> usize {
        if self.nodes.is_empty() {
            0
        } else {
            self.nodes[0].live as usize
        }
    }

    pub fn contains(&self, e: Element) -> bool {
        matches!(self.leaf_of.get(&e), Some(&pos) if self.leaf_live[pos as usize])
    }

    pub fn live_elements(&self) -> Vec<Element> {
        (0..self.leaves.len()).filter(|&i| self.leaf_live[i]).map(|i| self.leaves[i]).collect()
    }

    pub fn rebuild_count(&self) -> usize {
        self.rebuilds
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn depth(&self) -> usize {
        fn rec(nodes: &[Node], at: i32) -> usize {
            if at < 0 || nodes[at as usize].left < 0 {
                return 0;
            }
            1 + rec(nodes, nodes[at as usize].left).max(rec(nodes, nodes[at as usize].right))
        }
        rec(&self.nodes, if self.nodes.is_empty() { -1 } else { 0 })
    }

    /// Number of batched S-updates not yet folded into the tree.
    pub fn pending_updates(&self) -> usize {
        self.delta.len()
    }

    fn in_live_x(&self, e: Element, lo: u32, hi: u32) -> bool {
        match self.leaf_of.get(&e) {
            Some(&pos) => pos >= lo && pos < hi && self.leaf_live[pos as usize],
            None => false,
        }
    }

    /// Build the query-set for the *current* S against node `v`'s cached
    /// version: replay the batched deltas (skipping X members, which the
    /// cached version already treats correctly) and apply the find pivot.
    /// Returns the rank; all probe versions are released.
    fn probe_node(
        &self,
        oracle: &mut DynOracle,
        version: VersionId,
        lo: u32,
        hi: u32,
        from: FindFrom,
    ) -> Result<usize> {
        let mut chain = Vec::new();
        let mut at = version;
        for &d in &self.delta {
            if let FindFrom::Elem(y) = from {
                if d == y {
                    continue;
                }
            }
            if self.in_live_x(d, lo, hi) {
                continue;
            }
            at = if self.s_cur.contains(d) { oracle.insert(at, d)? } else { oracle.delete(at, d)? };
            chain.push(at);
        }
        if let FindFrom::Elem(y) = from {
            match self.variant {
                BstVariant::CoCircuit => {
                    // y rides with the S part of the cached version only if
                    // it was already in the built S (batched additions were
                    // skipped above)
                    if self.s_built.contains(y) {
                        at = oracle.delete(at, y)?;
                        chain.push(at);
                    }
                }
                BstVariant::Circuit | BstVariant::Sink => {
                    at = oracle.insert(at, y)?;
                    chain.push(at);
                }
            }
        }
        let rank = oracle.query(at)?;
        for v in chain.into_iter().rev() {
            oracle.release(v);
        }
        Ok(rank)
    }

    fn success(&self, rank: usize, live: u32, from: FindFrom) -> bool {
        let s_len = self.s_cur.len();
        match (self.variant, from) {
            (BstVariant::CoCircuit, FindFrom::Source) => rank > s_len,
            (BstVariant::CoCircuit, FindFrom::Elem(_)) => rank >= s_len,
            (BstVariant::Circuit, FindFrom::Elem(_)) => rank == s_len - live as usize + 1,
            (BstVariant::Sink, FindFrom::Elem(_)) => rank > s_len,
            (BstVariant::Circuit | BstVariant::Sink, FindFrom::Source) => unreachable!(),
        }
    }

    /// Find an exchange or free element for `from`, or report that none
    /// exists. Unsuccessful finds cost O(1) oracle operations (one probe of
    /// the maintained current root set); successful ones descend the tree,
    /// replaying the batched deltas at each level.
    pub fn find(&mut self, oracle: &mut DynOracle, from: FindFrom) -> Result<FindResult> {
        match (self.variant, from) {
            (BstVariant::CoCircuit, FindFrom::Elem(y)) => {
                if !self.s_cur.contains(y) {
                    return Err(Error::WrongSideElement(y));
                }
            }
            (BstVariant::Circuit | BstVariant::Sink, FindFrom::Elem(y)) => {
                if self.s_cur.contains(y) {
                    return Err(Error::WrongSideElement(y));
                }
            }
            (BstVariant::CoCircuit, FindFrom::Source) => {}
            (BstVariant::Circuit | BstVariant::Sink, FindFrom::Source) => {
                return Err(Error::VariantSetMismatch(
                    "free-element search needs a co-circuit tree".into(),
                ));
            }
        }
        if self.variant == BstVariant::Sink {
            // root_cur always tracks the current S here, so probe directly
            let FindFrom::Elem(y) = from else { unreachable!() };
            let probe = oracle.insert(self.root_cur, y)?;
            let rank = oracle.query(probe)?;
            oracle.release(probe);
            return Ok(if self.success(rank, 0, from) {
                FindResult::Sink
            } else {
                FindResult::None
            });
        }
        let live = self.live_count() as u32;
        if live == 0 {
            return Ok(FindResult::None);
        }
        // fast path on the always-current root version: no delta replay needed
        let rank = match from {
            FindFrom::Source => oracle.query(self.root_cur)?,
            FindFrom::Elem(y) => {
                let probe = match self.variant {
                    BstVariant::CoCircuit => oracle.delete(self.root_cur, y)?,
                    BstVariant::Circuit => oracle.insert(self.root_cur, y)?,
                    BstVariant::Sink => unreachable!(),
                };
                let r = oracle.query(probe)?;
                oracle.release(probe);
                r
            }
        };
        if !self.success(rank, live, from) {
            return Ok(FindResult::None);
        }
        let mut at = 0usize;
        while self.nodes[at].left >= 0 {
            let (l, r) = (self.nodes[at].left as usize, self.nodes[at].right as usize);
            at = if self.nodes[l].live == 0 {
                r
            } else if self.nodes[r].live == 0 {
                l
            } else {
                let node = &self.nodes[l];
                let rank = self.probe_node(oracle, node.version, node.lo, node.hi, from)?;
                if self.success(rank, node.live, from) {
                    l
                } else {
                    r
                }
            };
        }
        let x = self.leaves[self.nodes[at].lo as usize];
        debug_assert!(self.exchange_is_valid(oracle, from, x));
        Ok(FindResult::Element(x))
    }

    #[allow(dead_code)]
    fn exchange_is_valid(&self, oracle: &DynOracle, from: FindFrom, x: Element) -> bool {
        let mut set: Vec<Element> = self.s_cur.iter().collect();
        match (self.variant, from) {
            (BstVariant::CoCircuit, FindFrom::Source) => set.push(x),
            (BstVariant::CoCircuit, FindFrom::Elem(y)) => {
                set.retain(|&e| e != y);
                set.push(x);
            }
            (BstVariant::Circuit, FindFrom::Elem(y)) => {
                set.retain(|&e| e != x);
                set.push(y);
            }
            _ => return true,
        }
        oracle.instance().rank_of(&set).unwrap() == set.len()
    }

    /// Remove `x` from the active set, updating the cached versions along
    /// its root-to-leaf path.
    pub fn delete(&mut self, oracle: &mut DynOracle, x: Element) -> Result<()> {
        let pos = match self.leaf_of.get(&x) {
            Some(&pos) if self.leaf_live[pos as usize] => pos,
            _ => return Err(Error::ElementNotInX(x)),
        };
        self.leaf_live[pos as usize] = false;
        self.update_path(oracle, pos, Some(x), None)?;
        Ok(())
    }

    /// Swap `x` out of the active set for `y` (same leaf slot).
    pub fn replace(&mut self, oracle: &mut DynOracle, x: Element, y: Element) -> Result<()> {
        let pos = match self.leaf_of.get(&x) {
            Some(&pos) if self.leaf_live[pos as usize] => pos,
            _ => return Err(Error::ElementNotInX(x)),
        };
        if self.contains(y) {
            return Err(Error::ElementAlreadyInX(y));
        }
        match self.variant {
            BstVariant::CoCircuit if self.s_cur.contains(y) => {
                return Err(Error::WrongSideElement(y));
            }
            BstVariant::Circuit if !self.s_cur.contains(y) => {
                return Err(Error::WrongSideElement(y));
            }
            _ => {}
        }
        self.leaf_of.remove(&x);
        self.leaf_of.insert(y, pos);
        self.leaves[pos as usize] = y;
        self.update_path(oracle, pos, Some(x), Some(y))?;
        Ok(())
    }

    /// Rewrite the versions on the root-to-leaf path of leaf `pos`,
    /// removing `out` from and adding `add` to each node's X view.
    fn update_path(
        &mut self,
        oracle: &mut DynOracle,
        pos: u32,
        out: Option<Element>,
        add: Option<Element>,
    ) -> Result<()> {
        let delta_live = add.is_some() as i32 - out.is_some() as i32;
        let mut at = 0i32;
        while at >= 0 {
            let (left, right) = (self.nodes[at as usize].left, self.nodes[at as usize].right);
            let mut version = self.nodes[at as usize].version;
            // X elements outside the built S occupy their own slot in the
            // cached set; the rest ride along with the S part.
            if let Some(x) = out {
                if self.x_materialized(x) {
                    let old = version;
                    version = self.strip(oracle, version, x)?;
                    oracle.release(old);
                }
            }
            if let Some(y) = add {
                if self.x_materialized(y) {
                    let old = version;
                    version = self.unstrip(oracle, version, y)?;
                    oracle.release(old);
                }
            }
            let node = &mut self.nodes[at as usize];
            node.version = version;
            node.live = (node.live as i32 + delta_live) as u32;
            at = if left < 0 {
                -1
            } else if pos < self.nodes[left as usize].hi {
                left
            } else {
                right
            };
        }
        // keep the always-current root set in sync
        if let Some(x) = out {
            if self.x_materialized_cur(x) {
                let old = self.root_cur;
                self.root_cur = self.strip(oracle, self.root_cur, x)?;
                self.release_if_owned(oracle, old, self.root_cur_owned);
                self.root_cur_owned = true;
            }
        }
        if let Some(y) = add {
            if self.x_materialized_cur(y) {
                let old = self.root_cur;
                self.root_cur = self.unstrip(oracle, self.root_cur, y)?;
                self.release_if_owned(oracle, old, self.root_cur_owned);
                self.root_cur_owned = true;
            }
        }
        Ok(())
    }

    fn unstrip(&self, oracle: &mut DynOracle, version: VersionId, e: Element) -> Result<VersionId> {
        match self.variant {
            BstVariant::CoCircuit => oracle.insert(version, e),
            BstVariant::Circuit => oracle.delete(version, e),
            BstVariant::Sink => unreachable!(),
        }
    }

    /// Whether an X element occupies its own slot in the cached (built)
    /// query-sets, as opposed to riding along with the S part.
    fn x_materialized(&self, e: Element) -> bool {
        match self.variant {
            BstVariant::CoCircuit => !self.s_built.contains(e),
            BstVariant::Circuit => self.s_built.contains(e),
            BstVariant::Sink => false,
        }
    }

    fn x_materialized_cur(&self, e: Element) -> bool {
        match self.variant {
            BstVariant::CoCircuit => !self.s_cur.contains(e),
            BstVariant::Circuit => self.s_cur.contains(e),
            BstVariant::Sink => false,
        }
    }

    fn release_if_owned(&self, oracle: &mut DynOracle, v: VersionId, owned: bool) {
        if owned {
            oracle.release(v);
        }
    }

    /// Apply `S := S xor delta` (the caller guarantees the result stays
    /// independent and strips the s/t endpoints). Rebuilds the tree once the
    /// batch exceeds `beta`.
    pub fn update(&mut self, oracle: &mut DynOracle, delta: &[Element]) -> Result<()> {
        if delta.is_empty() {
            return Ok(());
        }
        for &d in delta {
            let added = self.s_cur.toggle(d);
            if self.delta_set.toggle(d) {
                self.delta.push(d);
            } else {
                self.delta.retain(|&e| e != d);
            }
            if added && self.contains(d) && self.variant == BstVariant::CoCircuit {
                return Err(Error::ResultingSetDependent);
            }
        }
        debug_assert!(
            {
                let s: Vec<Element> = self.s_cur.iter().collect();
                oracle.instance().rank_of(&s).unwrap() == s.len()
            },
            "batched update must keep S independent"
        );
        // fold the whole delta into the maintained S version...
        for &d in delta {
            let step = if self.s_cur.contains(d) {
                oracle.insert(self.q_s, d)?
            } else {
                oracle.delete(self.q_s, d)?
            };
            self.release_if_owned(oracle, self.q_s, self.q_s_owned);
            self.q_s = step;
            self.q_s_owned = true;
        }
        // ...and into the always-current root set
        if self.variant != BstVariant::Sink && !self.leaves.is_empty() {
            for &d in delta {
                if self.in_live_x(d, 0, self.leaves.len() as u32) {
                    continue;
                }
                let step = if self.s_cur.contains(d) {
                    oracle.insert(self.root_cur, d)?
                } else {
                    oracle.delete(self.root_cur, d)?
                };
                self.release_if_owned(oracle, self.root_cur, self.root_cur_owned);
                self.root_cur = step;
                self.root_cur_owned = true;
            }
        } else {
            self.root_cur = self.q_s;
            self.root_cur_owned = false;
        }
        if self.delta.len() > self.beta {
            self.rebuild(oracle)?;
        }
        Ok(())
    }

    /// Rebuild against the up-to-date S, dropping dead leaves.
    fn rebuild(&mut self, oracle: &mut DynOracle) -> Result<()> {
        self.rebuilds += 1;
        let live = self.live_elements();
        for node in std::mem::take(&mut self.nodes) {
            oracle.release(node.version);
        }
        if self.root_cur_owned {
            oracle.release(self.root_cur);
            self.root_cur_owned = false;
        }
        self.s_built = self.s_cur.clone();
        self.delta.clear();
        self.delta_set.clear();
        self.build(oracle, live)
    }

    /// Release every version this tree still owns. Call at the end of a
    /// phase; the tree is consumed.
    pub fn dispose(mut self, oracle: &mut DynOracle) {
        for node in std::mem::take(&mut self.nodes) {
            oracle.release(node.version);
        }
        if self.root_cur_owned {
            oracle.release(self.root_cur);
        }
        if self.q_s_owned {
            oracle.release(self.q_s);
        }
    }
}
