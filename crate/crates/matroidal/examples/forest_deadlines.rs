//! Build a maximum forest one edge per day when every edge has a deadline
//! (and optionally an arrival day). Greedy-by-deadline fails here; the
//! matroid intersection of the graphic and convex-transversal matroids does
//! not.

use matroidal::apps::solve_forest_deadlines;
use matroidal::io::parse_graph;

fn main() -> matroidal::Result<()> {
    // four vertices a..d: two parallel (a, b) edges with deadlines 1 and 3,
    // and (b, c), (c, d) both expiring after day 2. Picking the deadline-1
    // edge first wastes a day; the optimum builds three edges.
    let g = parse_graph(
        "n 4 m 4\n\
         0 1 dl=1\n\
         0 1 dl=3\n\
         1 2 dl=2\n\
         2 3 dl=2\n",
    )?;
    let report = solve_forest_deadlines(&g)?;
    println!("maximum forest size: {}", report.solution_size);
    for entry in report.schedule.as_ref().unwrap() {
        println!("  day {}: build {}", entry.day, entry.item);
    }

    // arrival times: an edge that only becomes available on day 2
    let g = parse_graph("n 3 m 2\n0 1 rel=2 dl=2\n1 2 dl=2\n")?;
    let report = solve_forest_deadlines(&g)?;
    println!("with arrivals: forest size {}", report.solution_size);
    for entry in report.schedule.as_ref().unwrap() {
        println!("  day {}: build {}", entry.day, entry.item);
    }
    Ok(())
}
