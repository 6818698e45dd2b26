//! Brute-force reference oracles and seeded instance generators.
//!
//! Everything here is deliberately independent of the solver path: sizes
//! come from subset enumeration or the matroid-union rank formula, exchange
//! graphs from direct independence probes, bases from the plain greedy scan.
//! The solvers are tested against these, never the other way around.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::elem::{mask_to_elements, Element};
use crate::error::{Error, Result};
use crate::matroids::{LinearField, MatroidInstance};

pub const BRUTE_MAX_GROUND: usize = 20;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Maximum common independent set by subset enumeration with downward
/// pruning. Returns the size and one witness.
pub fn brute_intersection(
    m1: &MatroidInstance,
    m2: &MatroidInstance,
) -> Result<(usize, Vec<Element>)> {
    let n = m1.ground_size();
    if n != m2.ground_size() {
        return Err(Error::GroundSetMismatch(n, m2.ground_size()));
    }
    if n > BRUTE_MAX_GROUND {
        return Err(Error::GroundSetTooLarge(n, BRUTE_MAX_GROUND));
    }
    let size = 1usize << n;
    // common[mask] = independent in both; downward closure prunes rank calls
    let mut common = vec![false; size];
    common[0] = true;
    let mut best = (0usize, 0u64);
    for mask in 1..size as u64 {
        let low = mask & mask.wrapping_neg();
        if !common[(mask ^ low) as usize] {
            continue;
        }
        let elems = mask_to_elements(mask);
        if m1.rank_of(&elems)? == elems.len() && m2.rank_of(&elems)? == elems.len() {
            common[mask as usize] = true;
            if elems.len() > best.0 {
                best = (elems.len(), mask);
            }
        }
    }
    Ok((best.0, mask_to_elements(best.1)))
}

/// Size of the largest set partitionable into independent sets, one per
/// matroid, via the matroid-union rank formula
/// `min_T (n - |T| + sum_i rank_i(T))`. An enumeration oracle, not a solver.
pub fn brute_union_general(matroids: &[&MatroidInstance]) -> Result<usize> {
    let n = matroids.first().map_or(0, |m| m.ground_size());
    for m in matroids {
        if m.ground_size() != n {
            return Err(Error::GroundSetMismatch(n, m.ground_size()));
        }
    }
    if n > BRUTE_MAX_GROUND {
        return Err(Error::GroundSetTooLarge(n, BRUTE_MAX_GROUND));
    }
    let mut best = usize::MAX;
    for mask in 0..1u64 << n {
        let elems = mask_to_elements(mask);
        let mut value = n - elems.len();
        for m in matroids {
            value += m.rank_of(&elems)?;
        }
        best = best.min(value);
    }
    Ok(best)
}

/// k-fold specialization of [`brute_union_general`].
pub fn brute_union(m: &MatroidInstance, k: usize) -> Result<usize> {
    let n = m.ground_size();
    if n > BRUTE_MAX_GROUND {
        return Err(Error::GroundSetTooLarge(n, BRUTE_MAX_GROUND));
    }
    let mut best = usize::MAX;
    for mask in 0..1u64 << n {
        let elems = mask_to_elements(mask);
        best = best.min(n - elems.len() + k * m.rank_of(&elems)?);
    }
    Ok(best)
}

/// Witness partition for the union size found by branch and bound; classes
/// are per input matroid. Only for small instances.
pub fn brute_union_witness(matroids: &[&MatroidInstance]) -> Result<Vec<Vec<Element>>> {
    let target = brute_union_general(matroids)?;
    let n = matroids.first().map_or(0, |m| m.ground_size());
    let mut classes: Vec<Vec<Element>> = vec![Vec::new(); matroids.len()];
    fn search(
        matroids: &[&MatroidInstance],
        classes: &mut Vec<Vec<Element>>,
        next: usize,
        n: usize,
        placed: usize,
        target: usize,
    ) -> bool {
        if placed + (n - next) < target {
            return false;
        }
        if next == n {
            return placed == target;
        }
        let e = Element(next as u32);
        for i in 0..matroids.len() {
            classes[i].push(e);
            let ok = matroids[i].rank_of(&classes[i]).unwrap() == classes[i].len();
            if ok && search(matroids, classes, next + 1, n, placed + 1, target) {
                return true;
            }
            classes[i].pop();
        }
        search(matroids, classes, next + 1, n, placed, target)
    }
    if !search(matroids, &mut classes, 0, n, 0, target) {
        unreachable!("the union rank formula guarantees a witness exists");
    }
    Ok(classes)
}

/// The full exchange graph of a common independent set, edge by edge from
/// direct independence probes.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct ExplicitExchangeGraph {
    /// (x, y) with x in S, y not in S, S - x + y independent in M1.
    pub e1: Vec<(Element, Element)>,
    /// (y, x) with x in S, y not in S, S - x + y independent in M2.
    pub e2: Vec<(Element, Element)>,
    /// x with S + x independent in M1 (edges s -> x).
    pub es: Vec<Element>,
    /// x with S + x independent in M2 (edges x -> t).
    pub et: Vec<Element>,
}

pub fn exchange_graph_explicit(
    m1: &MatroidInstance,
    m2: &MatroidInstance,
    s: &[Element],
) -> Result<ExplicitExchangeGraph> {
    let n = m1.ground_size();
    if n != m2.ground_size() {
        return Err(Error::GroundSetMismatch(n, m2.ground_size()));
    }
    if n > BRUTE_MAX_GROUND {
        return Err(Error::GroundSetTooLarge(n, BRUTE_MAX_GROUND));
    }
    let in_s = |e: Element| s.contains(&e);
    let mut g = ExplicitExchangeGraph::default();
    let indep = |m: &MatroidInstance, set: &[Element]| -> Result<bool> {
        Ok(m.rank_of(set)? == set.len())
    };
    for y in (0..n as u32).map(Element) {
        if in_s(y) {
            continue;
        }
        let mut plus: Vec<Element> = s.to_vec();
        plus.push(y);
        if indep(m1, &plus)? {
            g.es.push(y);
        }
        if indep(m2, &plus)? {
            g.et.push(y);
        }
        for &x in s {
            let swapped: Vec<Element> =
                plus.iter().copied().filter(|&e| e != x).collect();
            if indep(m1, &swapped)? {
                g.e1.push((x, y));
            }
            if indep(m2, &swapped)? {
                g.e2.push((y, x));
            }
        }
    }
    Ok(g)
}

impl ExplicitExchangeGraph {
    /// BFS distances from s over the explicit edge lists; `None` means
    /// unreachable. Distance of t is returned separately.
    pub fn distances(&self, n: usize) -> (Vec<Option<usize>>, Option<usize>) {
        let mut dist = vec![None; n];
        let mut dt = None;
        let mut queue: std::collections::VecDeque<Element> = Default::default();
        for &x in &self.es {
            dist[x.index()] = Some(1);
            queue.push_back(x);
        }
        let et: std::collections::BTreeSet<Element> = self.et.iter().copied().collect();
        while let Some(u) = queue.pop_front() {
            let du = dist[u.index()].unwrap();
            if et.contains(&u) {
                dt = Some(dt.map_or(du + 1, |d: usize| d.min(du + 1)));
            }
            for &(a, b) in self.e1.iter().chain(&self.e2) {
                if a == u && dist[b.index()].is_none() {
                    dist[b.index()] = Some(du + 1);
                    queue.push_back(b);
                }
            }
        }
        (dist, dt)
    }

    /// Does any (s, t)-path of length `len` pass through `x`?
    pub fn on_some_st_path_of_length(&self, n: usize, x: Element, len: usize) -> bool {
        let (dist, _) = self.distances(n);
        let Some(dx) = dist[x.index()] else { return false };
        // reversed BFS from t
        let mut back = vec![None; n];
        let mut queue: std::collections::VecDeque<Element> = Default::default();
        for &y in &self.et {
            back[y.index()] = Some(1);
            queue.push_back(y);
        }
        while let Some(u) = queue.pop_front() {
            let du = back[u.index()].unwrap();
            for &(a, b) in self.e1.iter().chain(&self.e2) {
                if b == u && back[a.index()].is_none() {
                    back[a.index()] = Some(du + 1);
                    queue.push_back(a);
                }
            }
        }
        matches!(back[x.index()], Some(bx) if dx + bx == len)
    }
}

/// Check the six augmenting-set conditions with direct rank probes.
pub fn is_augmenting_set(
    m1: &MatroidInstance,
    m2: &MatroidInstance,
    s: &[Element],
    layers: &[Vec<Element>],
    d: &[Vec<Element>],
) -> Result<bool> {
    let dt = d.len() + 1;
    let indep = |m: &MatroidInstance, set: &[Element]| -> Result<bool> {
        Ok(m.rank_of(set)? == set.len())
    };
    // (i) containment and (ii) equal sizes
    for (dl, ll) in d.iter().zip(layers) {
        if !dl.iter().all(|e| ll.contains(e)) {
            return Ok(false);
        }
    }
    if d.iter().any(|dl| dl.len() != d[0].len()) {
        return Ok(false);
    }
    let union_with = |base: &[Element], add: &[Element], remove: &[Element]| -> Vec<Element> {
        base.iter()
            .copied()
            .filter(|e| !remove.contains(e))
            .chain(add.iter().copied())
            .collect()
    };
    // (iii) S + D_1 independent in M1
    if !indep(m1, &union_with(s, &d[0], &[]))? {
        return Ok(false);
    }
    // (iv) S + D_{dt-1} independent in M2
    if !indep(m2, &union_with(s, &d[dt - 2], &[]))? {
        return Ok(false);
    }
    for l in 1..dt - 1 {
        if l % 2 == 0 {
            // (v) S - D_l + D_{l+1} independent in M1 for even l
            if !indep(m1, &union_with(s, &d[l], &d[l - 1]))? {
                return Ok(false);
            }
        } else {
            // (vi) S - D_{l+1} + D_l independent in M2 for odd l
            if !indep(m2, &union_with(s, &d[l - 1], &d[l]))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Min-weight basis by the plain greedy scan, recomputing rank from scratch
/// at every step.
pub fn greedy_basis(m: &MatroidInstance, x: &[Element]) -> Vec<Element> {
    let mut order: Vec<Element> = x.to_vec();
    order.sort_by_key(|&e| m.weight(e));
    let mut chosen: Vec<Element> = Vec::new();
    let mut prefix: Vec<Element> = Vec::new();
    let mut prev_rank = 0;
    for e in order {
        prefix.push(e);
        let r = m.rank_of(&prefix).unwrap();
        if r > prev_rank {
            chosen.push(e);
            prev_rank = r;
        }
    }
    chosen
}

/// Closed-form prediction for the exchange graph of the strict-gammoid
/// construction over a bipartite digraph (`0..left` on the left, `a` and `b`
/// distinguished right vertices): the input arcs, `s -> a`, `b -> t`, plus
/// the boundary edges forced by downward closure — `L + a` independent
/// forces every `(x, a)` exchange, and `L + b` independent every `(b, x)`.
pub fn predicted_gammoid_exchange_graph(
    left: usize,
    edges: &[(u32, u32)],
    a: u32,
    b: u32,
) -> ExplicitExchangeGraph {
    let mut g = ExplicitExchangeGraph {
        es: vec![Element(a)],
        et: vec![Element(b)],
        ..Default::default()
    };
    for x in 0..left as u32 {
        g.e1.push((Element(x), Element(a)));
        g.e2.push((Element(b), Element(x)));
    }
    for &(u, v) in edges {
        if (u as usize) < left {
            g.e1.push((Element(u), Element(v)));
        } else {
            g.e2.push((Element(u), Element(v)));
        }
    }
    g.e1.sort_unstable();
    g.e1.dedup();
    g.e2.sort_unstable();
    g.e2.dedup();
    g
}

/// Densest-subgraph bound on arboricity: max over vertex subsets W of
/// ceil(m_W / (|W| - 1)), by exhaustive subgraph scan.
pub fn nash_williams_arboricity(vertices: usize, ends: &[(u32, u32)]) -> usize {
    assert!(vertices <= 20, "exhaustive subgraph scan needs a small graph");
    let mut best = 0usize;
    for mask in 1u64 << 1..1u64 << vertices {
        let w = mask.count_ones() as usize;
        if w < 2 {
            continue;
        }
        let m_w = ends
            .iter()
            .filter(|&&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1)
            .count();
        best = best.max(m_w.div_ceil(w - 1));
    }
    best
}

// ---------------------------------------------------------------------------
// Seeded instance generators. Identical seed, identical instance.
// ---------------------------------------------------------------------------

pub fn gen_graph(rng: &mut ChaCha8Rng, vertices: usize, edges: usize) -> Vec<(u32, u32)> {
    (0..edges)
        .map(|_| {
            let u = rng.gen_range(0..vertices as u32);
            let mut v = rng.gen_range(0..vertices as u32 - 1);
            if v >= u {
                v += 1;
            }
            (u, v)
        })
        .collect()
}

pub fn gen_partition(rng: &mut ChaCha8Rng, n: usize) -> MatroidInstance {
    let colors = rng.gen_range(1..=n.max(1));
    let color = (0..n).map(|_| rng.gen_range(0..colors as u32)).collect();
    let caps = (0..colors).map(|_| rng.gen_range(0..3)).collect();
    MatroidInstance::partition(color, caps).unwrap()
}

pub fn gen_graphic(rng: &mut ChaCha8Rng, n: usize) -> MatroidInstance {
    let vertices = rng.gen_range(2..=n.max(2));
    MatroidInstance::graphic(vertices, gen_graph(rng, vertices, n)).unwrap()
}

pub fn gen_bicircular(rng: &mut ChaCha8Rng, n: usize) -> MatroidInstance {
    let vertices = rng.gen_range(2..=n.max(2));
    MatroidInstance::bicircular(vertices, gen_graph(rng, vertices, n)).unwrap()
}

pub fn gen_scheduling(rng: &mut ChaCha8Rng, n: usize) -> MatroidInstance {
    let slots = rng.gen_range(1..=n.max(1));
    let deadlines = (0..n).map(|_| rng.gen_range(1..=slots as u32)).collect();
    MatroidInstance::simple_scheduling(slots, deadlines).unwrap()
}

pub fn gen_convex(rng: &mut ChaCha8Rng, n: usize) -> MatroidInstance {
    let slots = rng.gen_range(1..=n.max(1)) as u32;
    let intervals = (0..n)
        .map(|_| {
            let s = rng.gen_range(1..=slots);
            (s, rng.gen_range(s..=slots))
        })
        .collect();
    MatroidInstance::convex_transversal(slots as usize, intervals).unwrap()
}

pub fn gen_linear(rng: &mut ChaCha8Rng, n: usize) -> MatroidInstance {
    let cols = rng.gen_range(1..=n.max(1)).min(6);
    let rows = (0..n).map(|_| (0..cols).map(|_| rng.gen_range(0..2)).collect()).collect();
    MatroidInstance::linear(LinearField::Prime(2), rows).unwrap()
}

/// Explicit matroid with the same independence family as a freshly generated
/// small instance of another kind.
pub fn gen_explicit(rng: &mut ChaCha8Rng, n: usize) -> MatroidInstance {
    let base = match rng.gen_range(0..3) {
        0 => gen_partition(rng, n),
        1 => gen_graphic(rng, n),
        _ => gen_scheduling(rng, n),
    };
    explicit_of(&base)
}

/// Materialize any instance with a small ground set as an Explicit matroid.
pub fn explicit_of(m: &MatroidInstance) -> MatroidInstance {
    let n = m.ground_size();
    assert!(n <= crate::matroids::EXPLICIT_MAX_GROUND);
    let mut indep = Vec::new();
    for mask in 0..1u64 << n {
        let elems = mask_to_elements(mask);
        if m.rank_of(&elems).unwrap() == elems.len() {
            indep.push(mask);
        }
    }
    MatroidInstance::explicit_from_independent(n, &indep).unwrap()
}

/// Random instance of a random kind, for differential suites.
pub fn gen_instance(rng: &mut ChaCha8Rng, n: usize) -> MatroidInstance {
    match rng.gen_range(0..5) {
        0 => gen_partition(rng, n),
        1 => gen_graphic(rng, n),
        2 => gen_scheduling(rng, n),
        3 => gen_explicit(rng, n),
        _ => MatroidInstance::uniform(n, rng.gen_range(0..=n)).unwrap(),
    }
}

/// Like [`gen_instance`] but drawing from every kind, including the
/// recompute-backed ones (bicircular, convex transversal, linear, gammoid).
pub fn gen_instance_any_kind(rng: &mut ChaCha8Rng, n: usize) -> MatroidInstance {
    match rng.gen_range(0..9) {
        0 => gen_partition(rng, n),
        1 => gen_graphic(rng, n),
        2 => gen_scheduling(rng, n),
        3 => gen_explicit(rng, n),
        4 => gen_bicircular(rng, n),
        5 => gen_convex(rng, n),
        6 => gen_linear(rng, n),
        7 => {
            let arcs = rng.gen_range(0..=2 * n);
            let edges = if n >= 2 { gen_graph(rng, n, arcs) } else { Vec::new() };
            let sources: Vec<u32> = (0..n as u32).filter(|_| rng.gen_bool(0.4)).collect();
            MatroidInstance::gammoid(n, edges, sources).unwrap()
        }
        _ => MatroidInstance::uniform(n, rng.gen_range(0..=n)).unwrap(),
    }
}

/// Random directed bipartite graph with distinguished right vertices `a`
/// (in-degree zero) and `b` (out-degree zero), for the strict-gammoid
/// construction. Vertices `0..left` are the left side. Returns
/// `(left, right, edges, a, b)`.
pub fn gen_bipartite_digraph(
    rng: &mut ChaCha8Rng,
    left: usize,
    right: usize,
    arcs: usize,
) -> (usize, usize, Vec<(u32, u32)>, u32, u32) {
    assert!(right >= 2);
    let a = left as u32;
    let b = left as u32 + 1;
    let mut edges = Vec::new();
    for _ in 0..arcs {
        let l = rng.gen_range(0..left as u32);
        let r = left as u32 + rng.gen_range(0..right as u32);
        if rng.gen_bool(0.5) {
            if r != a {
                edges.push((l, r));
            }
        } else if r != b {
            edges.push((r, l));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    (left, right, edges, a, b)
}

/// Bipartite matching instance as two partition matroids over the edges;
/// includes a planted perfect matching so the intersection rank is exactly
/// `size`. Returns `(m_left, m_right, edges)`.
pub fn gen_bipartite_matching(
    rng: &mut ChaCha8Rng,
    size: usize,
    extra_edges: usize,
) -> (MatroidInstance, MatroidInstance, Vec<(u32, u32)>) {
    let mut edges: Vec<(u32, u32)> = (0..size as u32).map(|i| (i, i)).collect();
    for _ in 0..extra_edges {
        edges.push((rng.gen_range(0..size as u32), rng.gen_range(0..size as u32)));
    }
    edges.shuffle(rng);
    let left = edges.iter().map(|&(u, _)| u).collect();
    let right = edges.iter().map(|&(_, v)| v).collect();
    let m1 = MatroidInstance::partition(left, vec![1; size]).unwrap();
    let m2 = MatroidInstance::partition(right, vec![1; size]).unwrap();
    (m1, m2, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_intersection_of_identical_matroids_is_the_rank() {
        let m = MatroidInstance::graphic(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let (size, witness) = brute_intersection(&m, &m).unwrap();
        assert_eq!(size, 3);
        assert_eq!(m.rank_of(&witness).unwrap(), 3);
    }

    #[test]
    fn brute_intersection_empty_ground() {
        let m = MatroidInstance::uniform(0, 0).unwrap();
        assert_eq!(brute_intersection(&m, &m).unwrap().0, 0);
    }

    #[test]
    fn brute_intersection_rejects_large_ground_sets() {
        let m = MatroidInstance::uniform(21, 3).unwrap();
        assert!(matches!(brute_intersection(&m, &m), Err(Error::GroundSetTooLarge(21, _))));
    }

    #[test]
    fn union_formula_matches_known_decompositions() {
        // K4 has 2 edge-disjoint spanning trees: 2-fold union covers all 6 edges
        let k4 = MatroidInstance::graphic(
            4,
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        assert_eq!(brute_union(&k4, 2).unwrap(), 6);
        assert_eq!(brute_union(&k4, 1).unwrap(), 3);
        // the empty graph
        let empty = MatroidInstance::graphic(1, vec![]).unwrap();
        assert_eq!(brute_union(&empty, 3).unwrap(), 0);
    }

    #[test]
    fn union_witness_is_a_valid_partition() {
        let k4 = MatroidInstance::graphic(
            4,
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        let classes = brute_union_witness(&[&k4, &k4]).unwrap();
        let total: usize = classes.iter().map(|c| c.len()).sum();
        assert_eq!(total, 6);
        for c in &classes {
            assert_eq!(k4.rank_of(c).unwrap(), c.len());
        }
    }

    #[test]
    fn exchange_graph_of_empty_s_has_only_terminal_edges() {
        let m1 = gen_partition(&mut rng(3), 5);
        let m2 = gen_graphic(&mut rng(4), 5);
        let g = exchange_graph_explicit(&m1, &m2, &[]).unwrap();
        assert!(g.e1.is_empty() && g.e2.is_empty());
    }

    #[test]
    fn nash_williams_on_small_cliques() {
        let k4: Vec<(u32, u32)> =
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        assert_eq!(nash_williams_arboricity(4, &k4), 2);
        let mut k5 = Vec::new();
        for u in 0..5u32 {
            for v in u + 1..5 {
                k5.push((u, v));
            }
        }
        assert_eq!(nash_williams_arboricity(5, &k5), 3);
        // star graph: one forest suffices
        assert_eq!(nash_williams_arboricity(4, &[(0, 1), (0, 2), (0, 3)]), 1);
    }

    #[test]
    fn generators_are_seed_deterministic() {
        let a = gen_instance(&mut rng(11), 8);
        let b = gen_instance(&mut rng(11), 8);
        for mask in 0..1u64 << 8 {
            let e = mask_to_elements(mask);
            assert_eq!(a.rank_of(&e).unwrap(), b.rank_of(&e).unwrap());
        }
    }

    #[test]
    fn explicit_of_agrees_with_the_base_instance() {
        let mut r = rng(5);
        for _ in 0..20 {
            let base = gen_graphic(&mut r, 7);
            let exp = explicit_of(&base);
            for mask in 0..1u64 << 7 {
                let e = mask_to_elements(mask);
                assert_eq!(base.rank_of(&e).unwrap(), exp.rank_of(&e).unwrap());
            }
        }
    }

    #[test]
    fn greedy_basis_on_k4_with_index_weights() {
        let k4 = MatroidInstance::graphic(
            4,
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        let x: Vec<Element> = (0..6).map(Element).collect();
        // first spanning tree in greedy order: edges 0, 1, 2 (the star at vertex 0)
        assert_eq!(greedy_basis(&k4, &x), vec![Element(0), Element(1), Element(2)]);
    }
}
