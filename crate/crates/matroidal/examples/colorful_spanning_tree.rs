//! Spanning tree with pairwise distinct edge colors: graphic matroid meets
//! a partition matroid over the colors.

use matroidal::apps::solve_colorful_st;
use matroidal::io::parse_graph;

fn main() -> matroidal::Result<()> {
    // a wheel with repeated rim colors: the tree must mix rim and spokes
    let g = parse_graph(
        "n 5 m 8\n\
         0 1 c=0\n1 2 c=0\n2 3 c=0\n3 0 c=1\n\
         4 0 c=2\n4 1 c=2\n4 2 c=3\n4 3 c=4\n",
    )?;
    let report = solve_colorful_st(&g)?;
    println!(
        "colorful spanning tree: {}",
        if report.feasible { "found" } else { "does not exist" }
    );
    if let Some(tree) = &report.elements {
        println!("  edges: {}", tree.join(" "));
    }

    // all edges of a triangle share one color: only one can be used
    let mono = parse_graph("n 3 m 3\n0 1 c=0\n1 2 c=0\n2 0 c=0\n")?;
    let report = solve_colorful_st(&mono)?;
    println!(
        "monochrome triangle: {} (largest colorful forest has {} edges)",
        if report.feasible { "found" } else { "infeasible" },
        report.solution_size
    );
    Ok(())
}
