//! Decremental min-weight basis of a matroid.
//!
//! The baseline structure keeps the set in weight-ordered blocks of about
//! sqrt(k) elements with prefix query-sets, so a deletion only rescans the
//! one block where the replacement element lives. The sparsification tree
//! stacks baselines over a balanced tree (weight-contiguous ranges, only
//! bases propagate upward), shrinking per-node inputs to at most 2r and the
//! deletion cost to O(sqrt(r)) oracle operations times the tree height.

use std::collections::HashMap;

use crate::elem::{DenseSet, Element};
use crate::error::{Error, Result};
use crate::oracle::{DynOracle, VersionId, ROOT};

/// Outcome of a block-structure deletion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockDelete {
    /// The element was not in the maintained basis; nothing else changed.
    NotInBasis,
    /// It was; the basis now contains `replacement` instead (if any).
    Removed { replacement: Option<Element> },
}

/// Weight-ordered blocks with prefix query-sets (the unsparsified baseline).
pub struct BlockStructure {
    /// Initial block-size target, fixed at init.
    target: usize,
    blocks: Vec<Vec<Element>>,
    /// prefix[j] materializes blocks 0..=j; ranks tracked alongside.
    prefix: Vec<VersionId>,
    prefix_rank: Vec<usize>,
    block_of: HashMap<Element, usize>,
    basis: DenseSet,
    count: usize,
}

impl BlockStructure {
    /// Build over `x` (any order); elements are sorted by instance weight.
    /// Runs the greedy basis scan while constructing the prefix versions.
    pub fn init(oracle: &mut DynOracle, x: &[Element]) -> Result<Self> {
        Self::init_with_block_target(oracle, x, None)
    }

    /// `init` with an explicit block-size target. Callers that rarely pay
    /// for block rescans (the sparsifier's upper nodes, whose replacement
    /// hints almost always verify) prefer fewer, larger blocks to cut the
    /// prefix-rewrite cost per deletion.
    pub fn init_with_block_target(
        oracle: &mut DynOracle,
        x: &[Element],
        block_target: Option<usize>,
    ) -> Result<Self> {
        let mut order: Vec<Element> = x.to_vec();
        let weight = |e: Element| oracle.instance().weight(e);
        order.sort_by_key(|&e| weight(e));
        if order.windows(2).any(|w| weight(w[0]) == weight(w[1])) {
            return Err(Error::DuplicateWeights);
        }
        let k = order.len();
        let target = block_target
            .unwrap_or((k as f64).sqrt().ceil().max(1.0) as usize)
            .max(1);
        let mut s = BlockStructure {
            target,
            blocks: Vec::new(),
            prefix: Vec::new(),
            prefix_rank: Vec::new(),
            block_of: HashMap::new(),
            basis: DenseSet::new(oracle.ground_size()),
            count: k,
        };
        let mut at = ROOT;
        let mut rank = 0usize;
        for chunk in order.chunks(target.max(1)) {
            let j = s.blocks.len();
            for &e in chunk {
                at = oracle.insert(at, e)?;
                let new_rank = oracle.query(at)?;
                if new_rank > rank {
                    s.basis.insert(e);
                    rank = new_rank;
                }
                s.block_of.insert(e, j);
            }
            s.blocks.push(chunk.to_vec());
            s.prefix.push(at);
            s.prefix_rank.push(rank);
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn contains(&self, e: Element) -> bool {
        self.block_of.contains_key(&e)
    }

    pub fn in_basis(&self, e: Element) -> bool {
        self.basis.contains(e)
    }

    /// The maintained min-weight basis, in weight order.
    pub fn basis_elements(&self, oracle: &DynOracle) -> Vec<Element> {
        let mut b: Vec<Element> = self.basis.iter().collect();
        b.sort_by_key(|&e| oracle.instance().weight(e));
        b
    }

    pub fn basis_size(&self) -> usize {
        self.basis.len()
    }

    /// Remove `x`; the new maintained basis is the greedy basis of `X - x`,
    /// which differs by at most one heavier replacement element.
    pub fn delete(&mut self, oracle: &mut DynOracle, x: Element) -> Result<BlockDelete> {
        self.delete_with_hint(oracle, x, None)
    }

    /// Like [`Self::delete`], with a candidate replacement to try before
    /// rescanning a whole block. The sparsifier passes the replacement that
    /// just arrived from a child, which usually is this node's replacement
    /// too; a two-operation probe confirms or refutes it.
    pub fn delete_with_hint(
        &mut self,
        oracle: &mut DynOracle,
        x: Element,
        hint: Option<Element>,
    ) -> Result<BlockDelete> {
        let Some(&i) = self.block_of.get(&x) else {
            return Err(Error::ElementAbsent(x));
        };
        self.block_of.remove(&x);
        self.blocks[i].retain(|&e| e != x);
        self.count -= 1;
        for j in i..self.prefix.len() {
            let old = self.prefix[j];
            self.prefix[j] = oracle.delete(old, x)?;
            oracle.release(old);
        }
        if !self.basis.contains(x) {
            self.rebalance(oracle, i)?;
            return Ok(BlockDelete::NotInBasis);
        }
        self.basis.remove(x);
        // the replacement lives in the first block whose prefix rank
        // survived the removal
        let mut found: Option<usize> = None;
        for j in i..self.prefix.len() {
            let new_rank = oracle.query(self.prefix[j])?;
            if new_rank == self.prefix_rank[j] {
                found = Some(j);
                break;
            }
            self.prefix_rank[j] = new_rank;
        }
        let Some(j) = found else {
            self.rebalance(oracle, i)?;
            return Ok(BlockDelete::Removed { replacement: None });
        };
        // a hinted element in the recovery block is the replacement exactly
        // when the prefix rank depends on it
        if let Some(y) = hint {
            if self.block_of.get(&y) == Some(&j)
                && !self.basis.contains(y)
                && oracle.probe_rank(self.prefix[j], &[], &[y])? < self.prefix_rank[j]
            {
                self.basis.insert(y);
                self.rebalance(oracle, i)?;
                return Ok(BlockDelete::Removed { replacement: Some(y) });
            }
        }
        // otherwise rescan block j greedily on top of the previous prefix;
        // surviving basis members keep their membership (the basis changes
        // by one element only), so their rank bumps need no query
        let mut at = if j == 0 { ROOT } else { self.prefix[j - 1] };
        let mut rank = if j == 0 { 0 } else { self.prefix_rank[j - 1] };
        let mut replacement = None;
        for &e in &self.blocks[j] {
            at = oracle.insert(at, e)?;
            if self.basis.contains(e) {
                rank += 1;
                continue;
            }
            if replacement.is_some() {
                continue;
            }
            let new_rank = oracle.query(at)?;
            let chosen = new_rank > rank;
            rank = new_rank;
            if chosen {
                debug_assert!(
                    oracle.instance().weight(e) > oracle.instance().weight(x),
                    "replacements are heavier than the deleted element"
                );
                self.basis.insert(e);
                replacement = Some(e);
            }
        }
        oracle.release(self.prefix[j]);
        self.prefix[j] = at;
        debug_assert!(replacement.is_some() || rank == self.prefix_rank[j]);
        self.rebalance(oracle, i)?;
        Ok(BlockDelete::Removed { replacement })
    }

    /// Add `x`, which the caller guarantees is *not* in the min-weight basis
    /// of the grown set (and that the set stays within twice its initial
    /// size).
    pub fn insert(&mut self, oracle: &mut DynOracle, x: Element) -> Result<()> {
        if self.block_of.contains_key(&x) {
            return Err(Error::ElementPresent(x));
        }
        let w = oracle.instance().weight(x);
        if self.blocks.is_empty() {
            self.blocks.push(Vec::new());
            self.prefix.push(ROOT);
            self.prefix_rank.push(0);
        }
        let j = self
            .blocks
            .iter()
            .position(|b| {
                b.last().is_some_and(|&last| oracle.instance().weight(last) > w)
            })
            .unwrap_or(self.blocks.len() - 1);
        let pos = self.blocks[j]
            .iter()
            .position(|&e| oracle.instance().weight(e) > w)
            .unwrap_or(self.blocks[j].len());
        self.blocks[j].insert(pos, x);
        self.block_of.insert(x, j);
        self.count += 1;
        for p in j..self.prefix.len() {
            let old = self.prefix[p];
            self.prefix[p] = oracle.insert(old, x)?;
            oracle.release(old);
        }
        debug_assert!(
            self.count > 64 || {
                let all: Vec<Element> =
                    self.blocks.iter().flatten().copied().collect();
                !crate::testkit::greedy_basis(oracle.instance(), &all).contains(&x)
            },
            "inserted element must not enter the min-weight basis"
        );
        self.rebalance(oracle, j)
    }

    /// Keep block sizes within [target / 2, 2 * target].
    fn rebalance(&mut self, oracle: &mut DynOracle, i: usize) -> Result<()> {
        let mut i = i;
        if self.blocks.len() > 1 && self.blocks[i].len() < self.target.div_ceil(2) {
            // merge with the right neighbor (or left, at the end)
            let left = if i + 1 < self.blocks.len() { i } else { i - 1 };
            let right_block = self.blocks.remove(left + 1);
            for &e in &right_block {
                self.block_of.insert(e, left);
            }
            self.blocks[left].extend(right_block);
            oracle.release(self.prefix[left]);
            self.prefix.remove(left);
            self.prefix_rank.remove(left);
            for b in left + 1..self.blocks.len() {
                for &e in &self.blocks[b] {
                    self.block_of.insert(e, b);
                }
            }
            i = left;
        }
        if self.blocks[i].len() > 2 * self.target {
            let mid = self.blocks[i].len() / 2;
            let tail = self.blocks[i].split_off(mid);
            // new boundary version: extend the previous prefix by the head half
            let mut at = if i == 0 { ROOT } else { self.prefix[i - 1] };
            let head = self.blocks[i].clone();
            for &e in &head {
                at = oracle.insert(at, e)?;
            }
            let rank = oracle.query(at)?;
            self.blocks.insert(i + 1, tail);
            self.prefix.insert(i, at);
            self.prefix_rank.insert(i, rank);
            for b in i + 1..self.blocks.len() {
                for &e in &self.blocks[b] {
                    self.block_of.insert(e, b);
                }
            }
        }
        Ok(())
    }

    /// Release every prefix version; consumes the structure.
    pub fn dispose(self, oracle: &mut DynOracle) {
        for v in self.prefix {
            oracle.release(v);
        }
    }
}

struct SparsNode {
    block: BlockStructure,
    children: Vec<usize>,
    parent: i32,
}

/// Min-weight basis of a decremental set. Bottom nodes cover weight ranges
/// of at most 2r elements; upper nodes hold a block structure over their
/// children's bases. The tree uses a bounded depth with the branching
/// factor derived per level, so the per-deletion cost stays close to
/// sqrt(r) instead of picking up the full binary-tree height.
pub struct DynamicBasis {
    nodes: Vec<SparsNode>,
    root: usize,
    bottom_of: HashMap<Element, usize>,
}

const SPARSIFIER_DEPTH: u32 = 3;

/// Initialize the structure and return the min-weight basis of `x`.
pub fn basis_init(oracle: &mut DynOracle, x: &[Element]) -> Result<(DynamicBasis, Vec<Element>)> {
    let mut order: Vec<Element> = x.to_vec();
    order.sort_by_key(|&e| oracle.instance().weight(e));
    // one linear scan pins the rank, which sets the sparsifier cutoff
    let probe = oracle.insert_all(ROOT, order.iter().copied())?;
    let r = oracle.query(probe)?;
    oracle.release(probe);
    let cutoff = (2 * r).max(4);
    let mut d = DynamicBasis { nodes: Vec::new(), root: 0, bottom_of: HashMap::new() };
    d.root = d.build(oracle, &order, cutoff, SPARSIFIER_DEPTH)?;
    let basis = d.basis(oracle);
    Ok((d, basis))
}

impl DynamicBasis {
    fn build(
        &mut self,
        oracle: &mut DynOracle,
        range: &[Element],
        cutoff: usize,
        depth_left: u32,
    ) -> Result<usize> {
        if range.len() <= cutoff || depth_left == 0 {
            let block = BlockStructure::init(oracle, range)?;
            let idx = self.nodes.len();
            for &e in range {
                self.bottom_of.insert(e, idx);
            }
            self.nodes.push(SparsNode { block, children: Vec::new(), parent: -1 });
            return Ok(idx);
        }
        // branch just widely enough to reach cutoff-sized bottoms in the
        // remaining depth
        let ratio = range.len() as f64 / cutoff as f64;
        let arity = (ratio.powf(1.0 / depth_left as f64).ceil() as usize).max(2);
        let chunk = range.len().div_ceil(arity).max(1);
        let mut children = Vec::new();
        let mut input = Vec::new();
        for part in range.chunks(chunk) {
            let child = self.build(oracle, part, cutoff, depth_left - 1)?;
            input.extend(self.nodes[child].block.basis_elements(oracle));
            children.push(child);
        }
        // upper nodes rarely rescan a block (the replacement hint almost
        // always verifies), so prefix-rewrite cost dominates: prefer a small
        // fixed block count, clamped to the usual size window
        let k = input.len();
        let sqrt = (k as f64).sqrt().ceil().max(1.0) as usize;
        let wide = k.div_ceil(12).clamp(sqrt.div_ceil(2).max(1), 2 * sqrt);
        let block = BlockStructure::init_with_block_target(oracle, &input, Some(wide))?;
        let idx = self.nodes.len();
        for &c in &children {
            self.nodes[c].parent = idx as i32;
        }
        self.nodes.push(SparsNode { block, children, parent: -1 });
        Ok(idx)
    }

    /// The maintained min-weight basis (of the root), in weight order.
    pub fn basis(&self, oracle: &DynOracle) -> Vec<Element> {
        self.nodes[self.root].block.basis_elements(oracle)
    }

    pub fn basis_size(&self) -> usize {
        self.nodes[self.root].block.basis_size()
    }

    pub fn contains(&self, e: Element) -> bool {
        self.bottom_of.contains_key(&e)
    }

    pub fn len(&self) -> usize {
        self.bottom_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bottom_of.is_empty()
    }

    /// Remove `x` from the set; returns the replacement element that entered
    /// the maintained basis, if any.
    pub fn delete(&mut self, oracle: &mut DynOracle, x: Element) -> Result<Option<Element>> {
        let Some(&bottom) = self.bottom_of.get(&x) else {
            return Err(Error::ElementAbsent(x));
        };
        self.bottom_of.remove(&x);
        let path = self.path_to_root(bottom);
        let mut carry: Option<Element> = None;
        for (step, &node) in path.iter().enumerate() {
            if step > 0 {
                // the child's basis changed: mirror it in this node's input
                if let Some(y) = carry {
                    self.nodes[node].block.insert(oracle, y)?;
                }
            }
            match self.nodes[node].block.delete_with_hint(oracle, x, carry)? {
                BlockDelete::NotInBasis => {
                    // bases above are untouched
                    return Ok(None);
                }
                BlockDelete::Removed { replacement } => carry = replacement,
            }
        }
        Ok(carry)
    }

    fn path_to_root(&self, bottom: usize) -> Vec<usize> {
        let mut path = vec![bottom];
        let mut at = bottom;
        while self.nodes[at].parent >= 0 {
            at = self.nodes[at].parent as usize;
            path.push(at);
        }
        path
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn depth(&self) -> usize {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.children.is_empty())
            .map(|(i, _)| self.path_to_root(i).len())
            .max()
            .unwrap_or(0)
    }

    pub fn dispose(self, oracle: &mut DynOracle) {
        for node in self.nodes {
            node.block.dispose(oracle);
        }
    }
}
