//! Arboricity by the covering driver, checked against the densest-subgraph
//! bound computed by exhaustive subgraph scan.

use matroidal::apps::solve_arboricity;
use matroidal::io::parse_graph;
use matroidal::testkit;

fn main() -> matroidal::Result<()> {
    let mut rng = testkit::rng(3);
    let vertices = 7;
    let ends = testkit::gen_graph(&mut rng, vertices, 14);
    let mut text = format!("n {vertices} m {}\n", ends.len());
    for (u, v) in &ends {
        text.push_str(&format!("{u} {v}\n"));
    }
    let g = parse_graph(&text)?;

    let report = solve_arboricity(&g)?;
    let alpha = report.value.unwrap();
    println!("random graph on {vertices} vertices, {} edges", ends.len());
    println!("arboricity = {alpha}");
    for (i, forest) in report.partition.as_ref().unwrap().iter().enumerate() {
        println!("  forest {}: {}", i + 1, forest.join(" "));
    }
    for note in &report.notes {
        println!("{note}");
    }

    let bound = testkit::nash_williams_arboricity(vertices, &ends);
    assert_eq!(alpha, bound);
    println!("densest-subgraph bound agrees: max ceil(m_H / (n_H - 1)) = {bound}");
    Ok(())
}
