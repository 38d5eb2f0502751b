//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Immutable simple graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices. Self-loops, duplicate edges and ids
    /// `>= n` are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidEdge { u, v, reason: "self-loop" });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let v = w[0];
                return Err(Error::InvalidEdge {
                    u: u.min(v),
                    v: u.max(v),
                    reason: "duplicate edge",
                });
            }
        }
        Ok(Graph { adjacency, edge_count })
    }

    /// Parses the line-oriented edge-list format: one `u v` pair per line,
    /// blank lines and `#` comments ignored. The vertex set is `0..=max id`.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut max_id = 0;
        for (index, raw) in text.lines().enumerate() {
            let line_no = index + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse { line: line_no, message };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(err(format!("expected two vertex ids, found {:?}", line)));
            }
            let mut ids = [0usize; 2];
            for (slot, tok) in ids.iter_mut().zip(&tokens) {
                *slot = tok
                    .parse()
                    .map_err(|_| err(format!("{tok:?} is not a non-negative integer")))?;
            }
            let [u, v] = ids;
            if u == v {
                return Err(err(format!("self-loop on vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(err(format!("duplicate edge {u} {v}")));
            }
            max_id = max_id.max(u).max(v);
            edges.push((u, v));
        }
        if edges.is_empty() {
            return Err(Error::EmptyInput);
        }
        Graph::from_edges(max_id + 1, edges)
    }

    /// Renders the graph in the edge-list format, one `u v` line per edge
    /// with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    pub fn bfs(&self, source: Vertex) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let next = dist[u].map(|d| d + 1);
            for &w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.bfs(0).iter().all(Option::is_some)
    }

    /// True iff the graph is a path `P_n` (including `P_1`).
    pub fn is_path(&self) -> bool {
        self.is_connected()
            && self.edge_count + 1 == self.vertex_count()
            && self.adjacency.iter().all(|l| l.len() <= 2)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count + 1 == self.vertex_count()
    }

    /// All unordered pairs `{x, y}` with `N(x) - {y} = N(y) - {x}`, as `(x, y)`
    /// with `x < y` in lexicographic order.
    pub fn twin_pairs(&self) -> Vec<(Vertex, Vertex)> {
        let n = self.vertex_count();
        let mut pairs = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                let nx = self.neighbors(x).iter().filter(|&&w| w != y);
                let ny = self.neighbors(y).iter().filter(|&&w| w != x);
                if nx.eq(ny) {
                    pairs.push((x, y));
                }
            }
        }
        pairs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::parse_edge_list("0 1\n1 2").unwrap()
    }

    #[test]
    fn parses_smallest_path() {
        let g = path3();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert!(g.is_path());
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let g = Graph::parse_edge_list("# triangle\n\n0 1\n  1 2 \n# more\n2 0\n").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.to_edge_list(), "0 1\n0 2\n1 2\n");
    }

    #[test]
    fn parse_errors_name_the_line() {
        match Graph::parse_edge_list("0 0") {
            Err(Error::Parse { line: 1, message }) => assert!(message.contains("self-loop")),
            other => panic!("unexpected {other:?}"),
        }
        match Graph::parse_edge_list("0 1\n# c\n1 0") {
            Err(Error::Parse { line: 3, message }) => assert!(message.contains("duplicate")),
            other => panic!("unexpected {other:?}"),
        }
        match Graph::parse_edge_list("0 1\n1 x") {
            Err(Error::Parse { line: 2, message }) => assert!(message.contains("\"x\"")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(Graph::parse_edge_list("0 1 2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Graph::parse_edge_list("-1 2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Graph::parse_edge_list("# only\n\n"), Err(Error::EmptyInput)));
        assert!(matches!(Graph::parse_edge_list(""), Err(Error::EmptyInput)));
    }

    #[test]
    fn gaps_become_isolated_vertices() {
        let g = Graph::parse_edge_list("0 1\n3 1").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.degree(2), 0);
        assert!(!g.is_connected());
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        assert!(matches!(Graph::from_edges(2, [(0, 1), (1, 0)]), Err(Error::InvalidEdge { .. })));
        assert!(matches!(Graph::from_edges(0, []), Err(Error::EmptyInput)));
    }

    #[test]
    fn connectivity() {
        assert!(path3().is_connected());
        assert!(!Graph::from_edges(2, []).unwrap().is_connected());
        assert!(Graph::from_edges(1, []).unwrap().is_connected());
    }

    #[test]
    fn twins() {
        let k3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.twin_pairs(), vec![(0, 1), (0, 2), (1, 2)]);
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(p4.twin_pairs().is_empty());
        // K_{2,3}: parts {0,1} and {2,3,4}
        let k23 = Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(k23.twin_pairs(), vec![(0, 1), (2, 3), (2, 4), (3, 4)]);
    }
}
