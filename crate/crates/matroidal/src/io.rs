//! Text formats for instances: graphs, job lists, matrices, and generic
//! matroid descriptions. Lines starting with `#` and blank lines are
//! ignored everywhere.

use crate::elem::Element;
use crate::error::{Error, Result};
use crate::matroids::{LinearField, MatroidInstance};

#[derive(Debug, Clone)]
pub struct GraphEdge {
    pub u: u32,
    pub v: u32,
    pub color: Option<u32>,
    pub weight: Option<i64>,
    pub release: Option<u32>,
    pub deadline: Option<u32>,
}

/// A (multi)graph: header `n <vertices> m <edges>`, then one edge per line
/// `u v [c=<color>] [w=<weight>] [rel=<int>] [dl=<int>]`.
#[derive(Debug, Clone)]
pub struct GraphInstance {
    pub vertices: usize,
    pub edges: Vec<GraphEdge>,
}

impl GraphInstance {
    pub fn edge_ends(&self) -> Vec<(u32, u32)> {
        self.edges.iter().map(|e| (e.u, e.v)).collect()
    }

    pub fn edge_label(&self, e: Element) -> String {
        let edge = &self.edges[e.index()];
        format!("e{}:{}-{}", e.0, edge.u, edge.v)
    }

    pub fn graphic_matroid(&self) -> Result<MatroidInstance> {
        MatroidInstance::graphic(self.vertices, self.edge_ends())
    }

    pub fn bicircular_matroid(&self) -> Result<MatroidInstance> {
        MatroidInstance::bicircular(self.vertices, self.edge_ends())
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn parse_num<T: std::str::FromStr>(tok: &str, what: &str) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse(format!("bad {what}: {tok:?}")))
}

pub fn parse_graph(text: &str) -> Result<GraphInstance> {
    let mut lines = content_lines(text);
    let header = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "n" || toks[2] != "m" {
        return Err(Error::Parse(format!("expected header 'n <vertices> m <edges>', got {header:?}")));
    }
    let vertices: usize = parse_num(toks[1], "vertex count")?;
    let m: usize = parse_num(toks[3], "edge count")?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let mut it = line.split_whitespace();
        let (u, v) = match (it.next(), it.next()) {
            (Some(u), Some(v)) => {
                (parse_num::<u32>(u, "endpoint")?, parse_num::<u32>(v, "endpoint")?)
            }
            _ => return Err(Error::Parse(format!("bad edge line: {line:?}"))),
        };
        if u as usize >= vertices || v as usize >= vertices {
            return Err(Error::Parse(format!("edge {u}-{v} outside 0..{vertices}")));
        }
        let mut edge =
            GraphEdge { u, v, color: None, weight: None, release: None, deadline: None };
        for tok in it {
            match tok.split_once('=') {
                Some(("c", x)) => edge.color = Some(parse_num(x, "color")?),
                Some(("w", x)) => edge.weight = Some(parse_num(x, "weight")?),
                Some(("rel", x)) => edge.release = Some(parse_num(x, "release")?),
                Some(("dl", x)) => edge.deadline = Some(parse_num(x, "deadline")?),
                _ => return Err(Error::Parse(format!("unknown edge attribute {tok:?}"))),
            }
        }
        edges.push(edge);
    }
    if edges.len() != m {
        return Err(Error::Parse(format!("header said m {m} but found {} edges", edges.len())));
    }
    Ok(GraphInstance { vertices, edges })
}

/// A scheduling job: one or two slot windows.
#[derive(Debug, Clone)]
pub struct Job {
    pub id: String,
    pub first: (u32, u32),
    pub second: Option<(u32, u32)>,
}

/// Jobs file: one job per line, `id s1 t1 [s2 t2]`.
pub fn parse_jobs(text: &str) -> Result<Vec<Job>> {
    let mut jobs = Vec::new();
    for line in content_lines(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let job = match toks.len() {
            3 => Job {
                id: toks[0].to_string(),
                first: (parse_num(toks[1], "start")?, parse_num(toks[2], "end")?),
                second: None,
            },
            5 => Job {
                id: toks[0].to_string(),
                first: (parse_num(toks[1], "start")?, parse_num(toks[2], "end")?),
                second: Some((parse_num(toks[3], "start")?, parse_num(toks[4], "end")?)),
            },
            _ => return Err(Error::Parse(format!("bad job line: {line:?}"))),
        };
        jobs.push(job);
    }
    Ok(jobs)
}

#[derive(Debug, Clone)]
pub struct MatrixInstance {
    pub field: LinearField,
    pub rows: Vec<Vec<i64>>,
}

/// Matrix file: header `field <p>` (a prime) or `field exact`, then one
/// whitespace-separated row per line.
pub fn parse_matrix(text: &str) -> Result<MatrixInstance> {
    let mut lines = content_lines(text);
    let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let field = match toks.as_slice() {
        ["field", "exact"] => LinearField::Exact,
        ["field", p] => LinearField::Prime(parse_num(p, "field characteristic")?),
        _ => return Err(Error::Parse(format!("expected 'field <p|exact>', got {header:?}"))),
    };
    let mut rows = Vec::new();
    for line in lines {
        let row: Result<Vec<i64>> =
            line.split_whitespace().map(|t| parse_num(t, "matrix entry")).collect();
        rows.push(row?);
    }
    Ok(MatrixInstance { field, rows })
}

/// Generic matroid description, dispatched on the `matroid <kind>` header.
pub fn parse_matroid(text: &str) -> Result<MatroidInstance> {
    let mut lines = content_lines(text).peekable();
    let header = lines.next().ok_or_else(|| Error::Parse("empty matroid file".into()))?;
    let kind = header
        .strip_prefix("matroid")
        .map(str::trim)
        .ok_or_else(|| Error::Parse(format!("expected 'matroid <kind>', got {header:?}")))?;
    let rest: Vec<&str> = lines.collect();
    let body = rest.join("\n");
    let field_of = |name: &str| -> Result<Vec<u32>> {
        rest.iter()
            .find_map(|l| l.strip_prefix(name))
            .ok_or_else(|| Error::Parse(format!("missing '{name}' line")))?
            .split_whitespace()
            .map(|t| parse_num(t, name))
            .collect()
    };
    let scalar_of = |name: &str| -> Result<usize> {
        let line = rest
            .iter()
            .find_map(|l| l.strip_prefix(name).map(str::trim))
            .ok_or_else(|| Error::Parse(format!("missing '{name}' line")))?;
        parse_num(line.split_whitespace().next().unwrap_or(""), name)
    };
    match kind {
        "partition" => {
            let colors = field_of("colors")?;
            let caps = field_of("caps")?;
            MatroidInstance::partition(colors, caps)
        }
        "graphic" => parse_graph(&body)?.graphic_matroid(),
        "bicircular" => parse_graph(&body)?.bicircular_matroid(),
        "uniform" => {
            MatroidInstance::uniform(scalar_of("n")?, scalar_of("r")?)
        }
        "scheduling" => {
            let slots = scalar_of("slots")?;
            let deadlines = field_of("deadlines")?;
            MatroidInstance::simple_scheduling(slots, deadlines)
        }
        "convex" => {
            let slots = scalar_of("slots")?;
            let mut intervals = Vec::new();
            for l in rest.iter().filter(|l| !l.starts_with("slots")) {
                let toks: Vec<&str> = l.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(Error::Parse(format!("bad interval line: {l:?}")));
                }
                intervals.push((parse_num(toks[0], "start")?, parse_num(toks[1], "end")?));
            }
            MatroidInstance::convex_transversal(slots, intervals)
        }
        "linear" => {
            let m = parse_matrix(&body)?;
            MatroidInstance::linear(m.field, m.rows)
        }
        "explicit" => {
            let n = scalar_of("n")?;
            let mut masks = Vec::new();
            for l in rest.iter().filter(|l| !l.starts_with('n')) {
                let mut mask = 0u64;
                if l.trim() == "-" {
                    masks.push(0);
                    continue;
                }
                for tok in l.split_whitespace() {
                    let e: u32 = parse_num(tok, "element")?;
                    mask |= 1 << e;
                }
                masks.push(mask);
            }
            MatroidInstance::explicit_from_independent(n, &masks)
        }
        "gammoid" => {
            let vertices = scalar_of("vertices")?;
            let sources = field_of("sources")?;
            let mut arcs = Vec::new();
            for l in rest
                .iter()
                .filter(|l| !l.starts_with("vertices") && !l.starts_with("sources"))
            {
                let toks: Vec<&str> = l.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(Error::Parse(format!("bad arc line: {l:?}")));
                }
                arcs.push((parse_num(toks[0], "arc tail")?, parse_num(toks[1], "arc head")?));
            }
            MatroidInstance::gammoid(vertices, arcs, sources)
        }
        other => Err(Error::Parse(format!("unknown matroid kind {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip_with_attributes() {
        let text = "# a comment\nn 4 m 4\n0 1\n0 1 dl=3\n1 2 c=2 dl=2\n2 3 w=-5 rel=2 dl=2\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.vertices, 4);
        assert_eq!(g.edges.len(), 4);
        assert_eq!(g.edges[1].deadline, Some(3));
        assert_eq!(g.edges[2].color, Some(2));
        assert_eq!(g.edges[3].weight, Some(-5));
        assert_eq!(g.edges[3].release, Some(2));
    }

    #[test]
    fn graph_errors_are_reported() {
        assert!(parse_graph("").is_err());
        assert!(parse_graph("n 2 m 1\n0 5\n").is_err());
        assert!(parse_graph("n 2 m 2\n0 1\n").is_err());
        assert!(parse_graph("n 2 m 1\n0 1 q=3\n").is_err());
    }

    #[test]
    fn jobs_with_one_or_two_machines() {
        let jobs = parse_jobs("j1 1 3\nj2 2 4 1 2\n").unwrap();
        assert_eq!(jobs.len(), 2);
        assert_eq!(jobs[0].first, (1, 3));
        assert_eq!(jobs[1].second, Some((1, 2)));
    }

    #[test]
    fn matrix_header_selects_the_field() {
        let m = parse_matrix("field 7\n1 0\n0 1\n").unwrap();
        assert_eq!(m.field, LinearField::Prime(7));
        assert_eq!(m.rows.len(), 2);
        let m = parse_matrix("field exact\n2 4\n").unwrap();
        assert_eq!(m.field, LinearField::Exact);
        assert!(parse_matrix("rows 2\n1 0\n").is_err());
    }

    #[test]
    fn matroid_files_for_every_kind() {
        let p = parse_matroid("matroid partition\ncolors 0 0 1\ncaps 1 2\n").unwrap();
        assert_eq!(p.kind_name(), "partition");
        let g = parse_matroid("matroid graphic\nn 3 m 3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(g.kind_name(), "graphic");
        assert_eq!(g.rank_of(&[Element(0), Element(1), Element(2)]).unwrap(), 2);
        let u = parse_matroid("matroid uniform\nn 5\nr 2\n").unwrap();
        assert_eq!(u.kind_name(), "uniform");
        let s = parse_matroid("matroid scheduling\nslots 2\ndeadlines 1 1 2\n").unwrap();
        assert_eq!(s.rank_of(&[Element(0), Element(1), Element(2)]).unwrap(), 2);
        let c = parse_matroid("matroid convex\nslots 3\n1 2\n2 3\n").unwrap();
        assert_eq!(c.kind_name(), "convex-transversal");
        let l = parse_matroid("matroid linear\nfield 2\n1 0\n0 1\n1 1\n").unwrap();
        assert_eq!(l.rank_of(&[Element(0), Element(1), Element(2)]).unwrap(), 2);
        let e = parse_matroid("matroid explicit\nn 3\n0 1\n2\n").unwrap();
        assert_eq!(e.rank_of(&[Element(0), Element(2)]).unwrap(), 1);
        let gm = parse_matroid("matroid gammoid\nvertices 3\nsources 0\n0 1\n1 2\n").unwrap();
        assert_eq!(gm.rank_of(&[Element(1), Element(2)]).unwrap(), 1);
        assert!(parse_matroid("matroid widget\n").is_err());
    }
}
