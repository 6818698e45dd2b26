//! Maintain the min-weight basis of a shrinking edge set: each deletion
//! costs O(sqrt(r) log n) oracle operations and returns the replacement
//! element, if any.

use std::sync::Arc;

use matroidal::basis::basis_init;
use matroidal::{DynOracle, Element, MatroidInstance};

fn main() -> matroidal::Result<()> {
    // C4 plus both chords; weights are the element indices
    let m = MatroidInstance::graphic(
        4,
        vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)],
    )?;
    let mut oracle = DynOracle::new(Arc::new(m));
    let x: Vec<Element> = (0..6).map(Element).collect();
    let (mut basis, initial) = basis_init(&mut oracle, &x)?;
    println!("initial min-weight basis: {initial:?}");

    for victim in [Element(4), Element(1), Element(0)] {
        let before = oracle.stats().total_ops();
        let replacement = basis.delete(&mut oracle, victim)?;
        let cost = oracle.stats().total_ops() - before;
        match replacement {
            Some(y) => println!("delete {victim}: replacement {y} ({cost} ops)"),
            None => println!("delete {victim}: basis keeps its other elements ({cost} ops)"),
        }
        println!("  basis now {:?}", basis.basis(&oracle));
    }
    Ok(())
}
