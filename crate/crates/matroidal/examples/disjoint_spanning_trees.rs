//! k edge-disjoint spanning trees via k-fold union of the graphic matroid.

use matroidal::apps::solve_kdst;
use matroidal::io::parse_graph;

fn main() -> matroidal::Result<()> {
    // K6 has 15 edges and decomposes into exactly three spanning trees of 5
    let mut text = String::from("n 6 m 15\n");
    for u in 0..6 {
        for v in u + 1..6 {
            text.push_str(&format!("{u} {v}\n"));
        }
    }
    let g = parse_graph(&text)?;

    for k in [2usize, 3] {
        let report = solve_kdst(&g, k)?;
        println!(
            "k = {k}: {}",
            if report.feasible { "found edge-disjoint spanning trees" } else { "infeasible" }
        );
        if let Some(trees) = &report.partition {
            for (i, tree) in trees.iter().enumerate() {
                println!("  tree {}: {}", i + 1, tree.join(" "));
            }
        }
        println!("  oracle ops: {}", report.oracle.total_ops());
    }
    Ok(())
}
