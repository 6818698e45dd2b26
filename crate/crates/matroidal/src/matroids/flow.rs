//! Unit-capacity max flow (Dinic) used by the gammoid rank function and by
//! test oracles that count vertex-disjoint paths.

#[derive(Clone, Copy)]
struct Arc {
    to: u32,
    cap: u32,
    rev: u32,
}

pub struct FlowNetwork {
    adj: Vec<Vec<Arc>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork { adj: vec![Vec::new(); nodes] }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        let rev_from = self.adj[to].len() as u32;
        let rev_to = self.adj[from].len() as u32;
        self.adj[from].push(Arc { to: to as u32, cap, rev: rev_from });
        self.adj[to].push(Arc { to: from as u32, cap: 0, rev: rev_to });
    }

    pub fn max_flow(&mut self, source: usize, sink: usize) -> usize {
        let n = self.adj.len();
        let mut total = 0;
        loop {
            let mut level = vec![u32::MAX; n];
            level[source] = 0;
            let mut queue = std::collections::VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                for a in &self.adj[u] {
                    if a.cap > 0 && level[a.to as usize] == u32::MAX {
                        level[a.to as usize] = level[u] + 1;
                        queue.push_back(a.to as usize);
                    }
                }
            }
            if level[sink] == u32::MAX {
                return total;
            }
            let mut next = vec![0usize; n];
            while self.dfs(source, sink, &level, &mut next) {
                total += 1;
            }
        }
    }

    fn dfs(&mut self, u: usize, sink: usize, level: &[u32], next: &mut [usize]) -> bool {
        if u == sink {
            return true;
        }
        while next[u] < self.adj[u].len() {
            let Arc { to, cap, rev } = self.adj[u][next[u]];
            if cap > 0 && level[to as usize] == level[u] + 1 && self.dfs(to as usize, sink, level, next) {
                self.adj[u][next[u]].cap -= 1;
                self.adj[to as usize][rev as usize].cap += 1;
                return true;
            }
            next[u] += 1;
        }
        false
    }
}

/// Maximum number of vertex-disjoint directed paths that start in `sources`
/// and end in `targets` (single-vertex paths allowed). `edges` are directed
/// arcs over vertices `0..n`.
pub fn vertex_disjoint_paths(
    n: usize,
    edges: &[(u32, u32)],
    sources: &[u32],
    targets: &[u32],
) -> usize {
    // vertex v splits into in-node 2v and out-node 2v+1
    let s = 2 * n;
    let t = 2 * n + 1;
    let mut net = FlowNetwork::new(2 * n + 2);
    for v in 0..n {
        net.add_arc(2 * v, 2 * v + 1, 1);
    }
    for &(u, v) in edges {
        net.add_arc(2 * u as usize + 1, 2 * v as usize, 1);
    }
    for &x in sources {
        net.add_arc(s, 2 * x as usize, 1);
    }
    for &y in targets {
        net.add_arc(2 * y as usize + 1, t, 1);
    }
    net.max_flow(s, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disjoint_paths_on_a_diamond() {
        // 0 -> 1 -> 3 and 0 -> 2 -> 3 share vertex 0: only one disjoint path from {0}.
        let edges = [(0, 1), (0, 2), (1, 3), (2, 3)];
        assert_eq!(vertex_disjoint_paths(4, &edges, &[0], &[3]), 1);
        // from {1, 2} to {3}: vertex 3 is shared, still one
        assert_eq!(vertex_disjoint_paths(4, &edges, &[1, 2], &[3]), 1);
        // single-vertex path: source is also a target
        assert_eq!(vertex_disjoint_paths(4, &edges, &[0, 1], &[1, 3]), 2);
    }
}
