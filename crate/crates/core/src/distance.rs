//! All-pairs hop distances by repeated BFS.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Symmetric `n x n` matrix of shortest-path lengths in a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: Vertex) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }
}

/// BFS from every vertex. Fails on a disconnected graph.
pub fn all_pairs_distances(g: &Graph) -> Result<DistanceMatrix> {
    let n = g.vertex_count();
    let mut d = Vec::with_capacity(n * n);
    for source in 0..n {
        for entry in g.bfs(source) {
            d.push(entry.ok_or(Error::Disconnected)?);
        }
    }
    Ok(DistanceMatrix { n, d })
}
