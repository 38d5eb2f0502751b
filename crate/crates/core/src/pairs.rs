//! The pair-resolving system: for every unordered vertex pair `{x, y}` the set
//! `R{x,y}` of vertices at different distances from `x` and `y`, and the
//! minimum size `kappa` of those sets.

use fixedbitset::FixedBitSet;

use crate::distance::{all_pairs_distances, DistanceMatrix};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub type VertexSet = FixedBitSet;

/// `{ z : d(x,z) != d(y,z) }`. Always contains `x` and `y`.
pub fn resolving_set_of_pair(dm: &DistanceMatrix, x: Vertex, y: Vertex) -> Result<VertexSet> {
    let n = dm.vertex_count();
    for v in [x, y] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if x == y {
        return Err(Error::SameVertex(x));
    }
    let mut set = FixedBitSet::with_capacity(n);
    for (z, (dx, dy)) in dm.row(x).iter().zip(dm.row(y)).enumerate() {
        if dx != dy {
            set.insert(z);
        }
    }
    Ok(set)
}

#[derive(Debug, Clone)]
pub struct PairSystem {
    n: usize,
    pairs: Vec<(Vertex, Vertex)>,
    rsets: Vec<VertexSet>,
    kappa: usize,
}

impl PairSystem {
    /// Builds all `n(n-1)/2` resolving sets in lexicographic pair order.
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.vertex_count();
        if n < 2 {
            return Err(Error::TooFewVertices { n });
        }
        let dm = all_pairs_distances(g)?;
        Self::from_distances(&dm)
    }

    pub fn from_distances(dm: &DistanceMatrix) -> Result<Self> {
        let n = dm.vertex_count();
        if n < 2 {
            return Err(Error::TooFewVertices { n });
        }
        let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
        let mut rsets = Vec::with_capacity(n * (n - 1) / 2);
        for x in 0..n {
            for y in x + 1..n {
                pairs.push((x, y));
                rsets.push(resolving_set_of_pair(dm, x, y)?);
            }
        }
        let kappa = rsets.iter().map(|s| s.count_ones(..)).min().unwrap_or(0);
        Ok(PairSystem { n, pairs, rsets, kappa })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn rsets(&self) -> &[VertexSet] {
        &self.rsets
    }

    /// `(pair, R{pair})` in lexicographic pair order.
    pub fn iter(&self) -> impl Iterator<Item = ((Vertex, Vertex), &VertexSet)> {
        self.pairs.iter().copied().zip(&self.rsets)
    }

    /// Looks up `R{x,y}` for a pair in either order.
    pub fn rset(&self, x: Vertex, y: Vertex) -> Option<&VertexSet> {
        let (a, b) = (x.min(y), x.max(y));
        if a == b || b >= self.n {
            return None;
        }
        // pairs (a, *) start after sum_{i<a} (n-1-i) entries
        let offset = a * (2 * self.n - a - 1) / 2;
        self.rsets.get(offset + (b - a - 1))
    }

    /// Union of the resolving sets of exactly those pairs with `|R| = kappa`.
    pub fn r_kappa_union(&self) -> VertexSet {
        let mut union = FixedBitSet::with_capacity(self.n);
        for set in &self.rsets {
            if set.count_ones(..) == self.kappa {
                union.union_with(set);
            }
        }
        union
    }

    /// Number of minimum-cardinality resolving sets each vertex belongs to.
    pub fn kappa_membership(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n];
        for set in self.rsets.iter().filter(|s| s.count_ones(..) == self.kappa) {
            for v in set.ones() {
                counts[v] += 1;
            }
        }
        counts
    }
}
