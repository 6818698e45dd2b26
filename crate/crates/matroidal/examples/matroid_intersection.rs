//! Matroid intersection end to end: blocking-flow phases, the phase trace,
//! and a brute-force cross-check on a small instance.

use std::sync::Arc;

use matroidal::intersection::Intersection;
use matroidal::testkit;

fn main() -> matroidal::Result<()> {
    // a graphic matroid meets a scheduling matroid on 9 shared elements
    let mut rng = testkit::rng(42);
    let m1 = testkit::gen_graphic(&mut rng, 9);
    let m2 = testkit::gen_scheduling(&mut rng, 9);

    let mut solver = Intersection::new(Arc::new(m1.clone()), Arc::new(m2.clone()))?;
    solver.run()?;
    let solution = solver.solution();

    println!("ground set: 9 elements ({} meets {})", m1.kind_name(), m2.kind_name());
    println!("maximum common independent set: {:?}", solution);
    for phase in &solver.trace {
        println!("  phase at distance {}: {} augmentations", phase.d_t, phase.augmentations);
    }
    let stats = solver.stats();
    println!("dynamic-oracle operations: {}", stats.total_ops());

    let (brute, _) = testkit::brute_intersection(&m1, &m2)?;
    assert_eq!(solution.len(), brute);
    println!("subset enumeration agrees: size {brute}");
    Ok(())
}
