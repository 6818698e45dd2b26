//! The dynamic rank oracle: every query-set is a single-element edit of an
//! earlier one, versions branch freely, and every operation is counted.

use std::sync::Arc;

use matroidal::{DynOracle, Element, MatroidInstance, ROOT};

fn main() -> matroidal::Result<()> {
    // graphic matroid of the triangle: edges 0 = ab, 1 = bc, 2 = ca
    let m = MatroidInstance::graphic(3, vec![(0, 1), (1, 2), (2, 0)])?;
    let mut oracle = DynOracle::new(Arc::new(m));

    let ab = oracle.insert(ROOT, Element(0))?;
    let ab_bc = oracle.insert(ab, Element(1))?;
    println!("rank {{ab}} = {}", oracle.query(ab)?);
    println!("rank {{ab, bc}} = {}", oracle.query(ab_bc)?);

    // branching: two different children of the same version
    let triangle = oracle.insert(ab_bc, Element(2))?;
    let ab_ca = oracle.insert(ab, Element(2))?;
    println!("rank {{ab, bc, ca}} = {} (one cycle)", oracle.query(triangle)?);
    println!("rank {{ab, ca}} = {}", oracle.query(ab_ca)?);

    // deleting from the historical version leaves the branch intact
    let back = oracle.delete(triangle, Element(2))?;
    assert_eq!(oracle.materialize(back)?, oracle.materialize(ab_bc)?);

    let stats = oracle.stats();
    println!(
        "operations: {} inserts, {} deletes, {} rank queries ({} total)",
        stats.inserts,
        stats.deletes,
        stats.rank_queries,
        stats.total_ops()
    );
    println!("live versions: {}, largest set: {}", stats.live_versions, stats.max_set_size);

    // versions the algorithm is done with can be released to bound memory
    oracle.release(ab_ca);
    println!("after release: {} live versions", oracle.stats().live_versions);
    Ok(())
}
