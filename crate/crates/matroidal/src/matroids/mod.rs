//! Concrete matroid kinds with their rank functions.
//!
//! Every kind answers `rank_of` by direct recomputation from the given set
//! (union-find component scans, greedy interval scheduling, Gaussian
//! elimination, unit-capacity max flow). The dynamic oracle layers caching
//! and incremental state on top of these; the functions here are the ground
//! truth the rest of the crate is tested against.

mod flow;
mod linear;

pub use flow::{vertex_disjoint_paths, FlowNetwork};
pub use linear::{is_prime, rank_exact, rank_mod_p, LinearField, DEFAULT_PRIME};

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::elem::{DenseSet, Element};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub enum Kind {
    /// Colored elements with a per-color capacity.
    Partition { color: Vec<u32>, caps: Vec<u32> },
    /// Edges of a graph; independent sets are forests.
    Graphic { vertices: usize, ends: Vec<(u32, u32)> },
    /// Edges of a graph; each component of an independent set has at most one cycle.
    Bicircular { vertices: usize, ends: Vec<(u32, u32)> },
    /// Jobs with slot intervals `[start, end]` over slots `1..=slots`.
    ConvexTransversal { slots: usize, intervals: Vec<(u32, u32)> },
    /// Convex transversal with all starts equal to 1.
    SimpleScheduling { slots: usize, deadlines: Vec<u32> },
    /// Rows of a matrix; independence is linear independence.
    Linear { field: LinearField, cols: usize, rows: Vec<Vec<i64>> },
    /// Vertices of a digraph reachable from `sources` by vertex-disjoint paths.
    Gammoid { vertices: usize, edges: Vec<(u32, u32)>, sources: Vec<u32> },
    /// Full rank table over a ground set of at most 16 elements.
    Explicit { rank_table: Vec<u8> },
    /// rank(S) = min(|S|, r).
    Uniform { r: usize },
}

#[derive(Debug, Clone)]
pub struct MatroidInstance {
    n: usize,
    kind: Kind,
    weights: Option<Vec<i64>>,
    labels: Option<Vec<String>>,
}

pub const EXPLICIT_MAX_GROUND: usize = 16;

impl MatroidInstance {
    pub fn partition(color: Vec<u32>, caps: Vec<u32>) -> Result<Self> {
        if let Some(&c) = color.iter().find(|&&c| c as usize >= caps.len()) {
            return Err(Error::MalformedInstance(format!(
                "color {c} has no capacity entry"
            )));
        }
        Ok(Self::from_kind(color.len(), Kind::Partition { color, caps }))
    }

    pub fn graphic(vertices: usize, ends: Vec<(u32, u32)>) -> Result<Self> {
        check_ends(vertices, &ends)?;
        Ok(Self::from_kind(ends.len(), Kind::Graphic { vertices, ends }))
    }

    pub fn bicircular(vertices: usize, ends: Vec<(u32, u32)>) -> Result<Self> {
        check_ends(vertices, &ends)?;
        Ok(Self::from_kind(ends.len(), Kind::Bicircular { vertices, ends }))
    }

    pub fn convex_transversal(slots: usize, intervals: Vec<(u32, u32)>) -> Result<Self> {
        for &(s, t) in &intervals {
            if s < 1 || s > t || t as usize > slots {
                return Err(Error::MalformedInstance(format!(
                    "interval [{s}, {t}] is not within 1..={slots}"
                )));
            }
        }
        Ok(Self::from_kind(intervals.len(), Kind::ConvexTransversal { slots, intervals }))
    }

    pub fn simple_scheduling(slots: usize, deadlines: Vec<u32>) -> Result<Self> {
        for &d in &deadlines {
            if d < 1 || d as usize > slots {
                return Err(Error::MalformedInstance(format!(
                    "deadline {d} is not within 1..={slots}"
                )));
            }
        }
        Ok(Self::from_kind(deadlines.len(), Kind::SimpleScheduling { slots, deadlines }))
    }

    pub fn linear(field: LinearField, rows: Vec<Vec<i64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::MalformedInstance("matrix row length mismatch".into()));
        }
        if let LinearField::Prime(p) = field {
            if !is_prime(p) {
                return Err(Error::MalformedInstance(format!("{p} is not prime")));
            }
        }
        Ok(Self::from_kind(rows.len(), Kind::Linear { field, cols, rows }))
    }

    /// Strict gammoid over the digraph's vertex set: `Y` is independent iff
    /// there are vertex-disjoint paths from `sources` ending exactly at `Y`.
    pub fn gammoid(vertices: usize, edges: Vec<(u32, u32)>, sources: Vec<u32>) -> Result<Self> {
        check_ends(vertices, &edges)?;
        if let Some(&s) = sources.iter().find(|&&s| s as usize >= vertices) {
            return Err(Error::MalformedInstance(format!("source {s} out of range")));
        }
        Ok(Self::from_kind(vertices, Kind::Gammoid { vertices, edges, sources }))
    }

    /// Explicit matroid from a list of independent sets given as bitmasks.
    /// The family is closed downward; the empty set is always independent.
    pub fn explicit_from_independent(n: usize, independent: &[u64]) -> Result<Self> {
        if n > EXPLICIT_MAX_GROUND {
            return Err(Error::GroundSetTooLarge(n, EXPLICIT_MAX_GROUND));
        }
        let size = 1usize << n;
        let mut indep = vec![false; size];
        indep[0] = true;
        for &m in independent {
            if m as usize >= size {
                return Err(Error::MalformedInstance(format!("set mask {m:#x} out of range")));
            }
            indep[m as usize] = true;
        }
        for mask in (0..size).rev() {
            if indep[mask] {
                let mut bits = mask;
                while bits != 0 {
                    let b = bits & bits.wrapping_neg();
                    indep[mask ^ b] = true;
                    bits ^= b;
                }
            }
        }
        let mut rank_table = vec![0u8; size];
        for mask in 1..size {
            rank_table[mask] = if indep[mask] {
                mask.count_ones() as u8
            } else {
                let mut best = 0;
                let mut bits = mask;
                while bits != 0 {
                    let b = bits & bits.wrapping_neg();
                    best = best.max(rank_table[mask ^ b]);
                    bits ^= b;
                }
                best
            };
        }
        Ok(Self::from_kind(n, Kind::Explicit { rank_table }))
    }

    pub fn uniform(n: usize, r: usize) -> Result<Self> {
        Ok(Self::from_kind(n, Kind::Uniform { r }))
    }

    fn from_kind(n: usize, kind: Kind) -> Self {
        MatroidInstance { n, kind, weights: None, labels: None }
    }

    /// Attach distinct tie-break weights (forces a unique min-weight basis).
    pub fn with_weights(mut self, weights: Vec<i64>) -> Result<Self> {
        if weights.len() != self.n {
            return Err(Error::MalformedInstance("weight vector length mismatch".into()));
        }
        let mut sorted = weights.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateWeights);
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            Kind::Partition { .. } => "partition",
            Kind::Graphic { .. } => "graphic",
            Kind::Bicircular { .. } => "bicircular",
            Kind::ConvexTransversal { .. } => "convex-transversal",
            Kind::SimpleScheduling { .. } => "simple-scheduling",
            Kind::Linear { .. } => "linear",
            Kind::Gammoid { .. } => "gammoid",
            Kind::Explicit { .. } => "explicit",
            Kind::Uniform { .. } => "uniform",
        }
    }

    /// Weight of an element; defaults to its index, which is always distinct.
    pub fn weight(&self, e: Element) -> i64 {
        match &self.weights {
            Some(w) => w[e.index()],
            None => e.index() as i64,
        }
    }

    pub fn label(&self, e: Element) -> String {
        match &self.labels {
            Some(l) => l[e.index()].clone(),
            None => e.to_string(),
        }
    }

    pub fn check_element(&self, e: Element) -> Result<()> {
        if e.index() >= self.n {
            return Err(Error::ElementOutOfGroundSet(e));
        }
        Ok(())
    }

    /// Mathematical rank of `set` per the kind's semantics.
    pub fn rank_of(&self, set: &[Element]) -> Result<usize> {
        for &e in set {
            self.check_element(e)?;
        }
        Ok(self.rank_unchecked(set.iter().copied(), set.len()))
    }

    pub fn rank_of_set(&self, set: &DenseSet) -> usize {
        self.rank_unchecked(set.iter(), set.len())
    }

    pub fn is_independent(&self, set: &[Element]) -> Result<bool> {
        Ok(self.rank_of(set)? == set.len())
    }

    pub(crate) fn rank_unchecked(
        &self,
        set: impl Iterator<Item = Element> + Clone,
        len: usize,
    ) -> usize {
        match &self.kind {
            Kind::Partition { color, caps } => {
                let mut counts = vec![0u32; caps.len()];
                for e in set {
                    counts[color[e.index()] as usize] += 1;
                }
                counts.iter().zip(caps).map(|(&c, &cap)| c.min(cap) as usize).sum()
            }
            Kind::Graphic { vertices, ends } => {
                let mut uf = UnionFind::new(*vertices);
                let mut rank = 0;
                for e in set {
                    let (u, v) = ends[e.index()];
                    rank += uf.union(u as usize, v as usize) as usize;
                }
                rank
            }
            Kind::Bicircular { vertices, ends } => {
                let mut uf = UnionFind::new(*vertices);
                for e in set.clone() {
                    let (u, v) = ends[e.index()];
                    uf.union(u as usize, v as usize);
                }
                let mut edge_count = vec![0usize; *vertices];
                let mut vert_count = vec![0usize; *vertices];
                let mut touched = Vec::new();
                for e in set {
                    let (u, _) = ends[e.index()];
                    let root = uf.find(u as usize);
                    if edge_count[root] == 0 {
                        touched.push(root);
                    }
                    edge_count[root] += 1;
                }
                for v in 0..*vertices {
                    let root = uf.find(v);
                    if edge_count[root] > 0 {
                        vert_count[root] += 1;
                    }
                }
                touched.iter().map(|&r| edge_count[r].min(vert_count[r])).sum()
            }
            Kind::ConvexTransversal { slots, intervals } => {
                convex_matching(*slots, set.map(|e| intervals[e.index()]))
            }
            Kind::SimpleScheduling { slots, deadlines } => {
                convex_matching(*slots, set.map(|e| (1, deadlines[e.index()])))
            }
            Kind::Linear { field, cols, rows } => {
                let selected: Vec<&[i64]> = set.map(|e| rows[e.index()].as_slice()).collect();
                match field {
                    LinearField::Prime(p) => rank_mod_p(&selected, *cols, *p),
                    LinearField::Exact => rank_exact(&selected, *cols),
                }
            }
            Kind::Gammoid { vertices, edges, sources } => {
                let targets: Vec<u32> = set.map(|e| e.0).collect();
                vertex_disjoint_paths(*vertices, edges, sources, &targets)
            }
            Kind::Explicit { rank_table } => {
                let mask: usize = set.map(|e| 1usize << e.index()).sum();
                rank_table[mask] as usize
            }
            Kind::Uniform { r } => len.min(*r),
        }
    }
}

fn check_ends(vertices: usize, ends: &[(u32, u32)]) -> Result<()> {
    for &(u, v) in ends {
        if u as usize >= vertices || v as usize >= vertices {
            return Err(Error::MalformedInstance(format!(
                "edge ({u}, {v}) has an endpoint outside 0..{vertices}"
            )));
        }
    }
    Ok(())
}

/// Greedy maximum matching of interval jobs to slots `1..=slots`: sweep the
/// slots left to right, keeping the available job with the smallest end.
fn convex_matching(slots: usize, jobs: impl Iterator<Item = (u32, u32)>) -> usize {
    let mut by_start: Vec<Vec<u32>> = vec![Vec::new(); slots + 1];
    let mut total = 0usize;
    for (s, t) in jobs {
        by_start[s as usize].push(t);
        total += 1;
    }
    let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::new();
    let mut matched = 0;
    for slot in 1..=slots as u32 {
        for &t in &by_start[slot as usize] {
            heap.push(Reverse(t));
        }
        while let Some(&Reverse(t)) = heap.peek() {
            if t < slot {
                heap.pop();
            } else {
                break;
            }
        }
        if heap.pop().is_some() {
            matched += 1;
        }
        if matched == total {
            break;
        }
    }
    matched
}

/// Assign matched jobs to concrete slots with the same greedy sweep; returns
/// `(element, slot)` pairs. Used to emit schedules from solver witnesses.
pub fn convex_assignment(slots: usize, jobs: &[(Element, u32, u32)]) -> Vec<(Element, u32)> {
    let mut by_start: Vec<Vec<(u32, Element)>> = vec![Vec::new(); slots + 1];
    for &(e, s, t) in jobs {
        by_start[s as usize].push((t, e));
    }
    let mut heap: BinaryHeap<Reverse<(u32, u32)>> = BinaryHeap::new();
    let mut out = Vec::new();
    for slot in 1..=slots as u32 {
        for &(t, e) in &by_start[slot as usize] {
            heap.push(Reverse((t, e.0)));
        }
        while let Some(&Reverse((t, _))) = heap.peek() {
            if t < slot {
                heap.pop();
            } else {
                break;
            }
        }
        if let Some(Reverse((_, e))) = heap.pop() {
            out.push((Element(e), slot));
        }
    }
    out
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let g = self.parent[self.parent[x] as usize];
            self.parent[x] = g;
            x = g as usize;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb as u32;
        true
    }
}

/// Build the matroid pair of the strict-gammoid construction: given a
/// directed bipartite graph over `left + right` vertices (`0..left` on the
/// left) and two right vertices `a` (in-degree zero) and `b` (out-degree
/// zero), produce gammoids `(M1, M2)` such that the candidate set
/// `L = {0..left}` is independent in both and the exchange graph of `L` is
/// the input digraph plus the edges `s -> a` and `b -> t`.
pub fn gammoid_from_bipartite(
    left: usize,
    right: usize,
    edges: &[(u32, u32)],
    a: u32,
    b: u32,
) -> Result<(MatroidInstance, MatroidInstance, Vec<Element>)> {
    let n = left + right;
    let is_left = |v: u32| (v as usize) < left;
    for &v in &[a, b] {
        if (v as usize) < left || (v as usize) >= n {
            return Err(Error::MalformedInstance(format!("{v} is not a right vertex")));
        }
    }
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    for &(u, v) in edges {
        if u as usize >= n || v as usize >= n || is_left(u) == is_left(v) {
            return Err(Error::MalformedInstance(format!(
                "edge ({u}, {v}) does not cross the bipartition"
            )));
        }
        if v == a {
            return Err(Error::DegreePreconditionViolated(format!(
                "vertex {a} must have in-degree zero"
            )));
        }
        if u == b {
            return Err(Error::DegreePreconditionViolated(format!(
                "vertex {b} must have out-degree zero"
            )));
        }
        if is_left(u) {
            forward.push((u, v));
        } else {
            // reverse right-to-left edges so both gammoids are over left-to-right arcs
            backward.push((v, u));
        }
    }
    let mut sources1: Vec<u32> = (0..left as u32).collect();
    sources1.push(a);
    let mut sources2: Vec<u32> = (0..left as u32).collect();
    sources2.push(b);
    let m1 = MatroidInstance::gammoid(n, forward, sources1)?;
    let m2 = MatroidInstance::gammoid(n, backward, sources2)?;
    let candidate = (0..left as u32).map(Element).collect();
    Ok((m1, m2, candidate))
}
