//! Manufacture an intersection instance whose augmenting-path structure is
//! exactly a chosen digraph, using the strict-gammoid construction:
//! the exchange graph of the candidate set L is the digraph plus s -> a and
//! b -> t (plus the boundary edges every matroid pair is forced to have).

use std::sync::Arc;

use matroidal::intersection::intersect;
use matroidal::matroids::{gammoid_from_bipartite, vertex_disjoint_paths};
use matroidal::testkit;

fn main() -> matroidal::Result<()> {
    // left = {0, 1}, right = {2 = a, 3 = b, 4}: two arc-disjoint routes from
    // a to b, sharing no interior vertex
    let (left, right) = (2, 3);
    let edges = vec![(2u32, 0u32), (0, 3), (2, 1), (1, 3), (0, 4), (4, 1)];
    let (a, b) = (2, 3);
    let (m1, m2, candidate) = gammoid_from_bipartite(left, right, &edges, a, b)?;

    let g = testkit::exchange_graph_explicit(&m1, &m2, &candidate)?;
    let mut got = g.clone();
    got.e1.sort_unstable();
    got.e2.sort_unstable();
    let want = testkit::predicted_gammoid_exchange_graph(left, &edges, a, b);
    assert_eq!(got, want);
    println!("exchange graph of L reproduces the digraph, plus s->{a} and {b}->t");

    let paths = vertex_disjoint_paths(left + right, &edges, &[a], &[b]);
    let solution = intersect(Arc::new(m1), Arc::new(m2))?;
    println!(
        "vertex-disjoint ({a}, {b})-paths in the digraph: {paths}; \
         intersection grows |L| = {} by {} augmentations",
        candidate.len(),
        solution.len() - candidate.len()
    );
    assert_eq!(solution.len() - candidate.len(), paths);
    Ok(())
}
