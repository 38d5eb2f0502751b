//! Closed forms for trees via their exterior major vertices and legs.

use fixedbitset::FixedBitSet;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::frac::check_k_range;
use crate::graph::{Graph, Vertex};
use crate::pairs::VertexSet;
use crate::rational::Rational;

/// A leaf together with the path joining it to its exterior major vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leg {
    pub leaf: Vertex,
    /// Distance from the major vertex to the leaf.
    pub length: usize,
    /// Vertices from next-to-major out to the leaf.
    pub path: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorMajor {
    pub vertex: Vertex,
    /// Terminal vertices, shortest leg first (ties by leaf id).
    pub legs: Vec<Leg>,
}

impl ExteriorMajor {
    pub fn terminal_degree(&self) -> usize {
        self.legs.len()
    }

    pub fn leg_lengths(&self) -> Vec<usize> {
        self.legs.iter().map(|l| l.length).collect()
    }
}

#[derive(Debug, Clone)]
pub struct TreeAnalysis {
    pub n: usize,
    pub leaves: VertexSet,
    pub exterior_majors: Vec<ExteriorMajor>,
    /// Exterior majors with terminal degree 2.
    pub m2: Vec<Vertex>,
    /// Exterior majors with terminal degree at least 3.
    pub m3: Vec<Vertex>,
    /// Number of exterior majors with terminal degree 1.
    pub ex1_count: usize,
    /// `T_v` for each entry of `exterior_majors`, same order.
    pub subtrees: Vec<VertexSet>,
}

impl TreeAnalysis {
    pub fn sigma(&self) -> usize {
        self.leaves.count_ones(..)
    }

    pub fn major(&self, v: Vertex) -> Option<&ExteriorMajor> {
        self.exterior_majors.iter().find(|m| m.vertex == v)
    }

    /// `M(T)`: exterior majors with terminal degree above 1.
    pub fn multi_leg_majors(&self) -> impl Iterator<Item = &ExteriorMajor> {
        self.exterior_majors.iter().filter(|m| m.terminal_degree() > 1)
    }
}

/// Walks from every leaf through degree-2 vertices to the nearest major
/// vertex, which owns that leaf as a terminal vertex.
pub fn analyze_tree(g: &Graph) -> Result<TreeAnalysis> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    if g.is_path() {
        return Err(Error::PathNotTree);
    }
    let n = g.vertex_count();
    let mut leaves = FixedBitSet::with_capacity(n);
    let mut owned: Vec<Vec<Leg>> = vec![Vec::new(); n];
    for leaf in (0..n).filter(|&v| g.degree(v) == 1) {
        leaves.insert(leaf);
        let mut path = vec![leaf];
        let mut prev = leaf;
        let mut cur = g.neighbors(leaf)[0];
        while g.degree(cur) == 2 {
            let next = g.neighbors(cur).iter().copied().find(|&w| w != prev).expect("degree 2");
            path.push(cur);
            prev = cur;
            cur = next;
        }
        debug_assert!(g.degree(cur) >= 3);
        path.reverse();
        owned[cur].push(Leg { leaf, length: path.len(), path });
    }

    let mut exterior_majors = Vec::new();
    let mut subtrees = Vec::new();
    let mut covered = FixedBitSet::with_capacity(n);
    for (vertex, mut legs) in owned.into_iter().enumerate() {
        if legs.is_empty() {
            continue;
        }
        legs.sort_by_key(|l| (l.length, l.leaf));
        let mut sub = FixedBitSet::with_capacity(n);
        sub.insert(vertex);
        for leg in &legs {
            sub.extend(leg.path.iter().copied());
        }
        assert!(covered.is_disjoint(&sub), "subtrees of exterior majors overlap");
        covered.union_with(&sub);
        subtrees.push(sub);
        exterior_majors.push(ExteriorMajor { vertex, legs });
    }
    let by_degree = |pred: fn(usize) -> bool| -> Vec<Vertex> {
        exterior_majors
            .iter()
            .filter(|m| pred(m.terminal_degree()))
            .map(|m| m.vertex)
            .collect()
    };
    let m2 = by_degree(|t| t == 2);
    let m3 = by_degree(|t| t >= 3);
    let ex1_count = by_degree(|t| t == 1).len();
    Ok(TreeAnalysis { n, leaves, exterior_majors, m2, m3, ex1_count, subtrees })
}

/// Minimum over `M(T)` of the distance between two terminal vertices of the
/// same major, i.e. the sum of its two shortest legs.
pub fn kappa_tree(ta: &TreeAnalysis) -> usize {
    ta.multi_leg_majors()
        .map(|m| m.legs[0].length + m.legs[1].length)
        .min()
        .expect("a tree that is not a path has a major vertex with two terminal vertices")
}

/// `dim_f^k` of a spider with the given leg lengths. Lengths need not be
/// sorted. At `k = 2 * shortest` both branches agree and this is asserted.
pub fn spider_fkdim(legs: &[usize], k: &Rational) -> Rational {
    let mut sorted = legs.to_vec();
    sorted.sort_unstable();
    let a = Rational::from_integer(sorted.len().into());
    let d1 = Rational::from_integer(sorted[0].into());
    let two = Rational::from_integer(2.into());
    let even = k * &a / &two;
    let skewed = (&a - Rational::one()) * k - (&a - &two) * &d1;
    if *k == &two * &d1 {
        assert_eq!(even, skewed, "spider branches disagree at k = 2 d1");
    }
    if sorted[0] == sorted[1] || *k <= &two * &d1 {
        even
    } else {
        skewed
    }
}

/// `k |M_2| + sum over M_3 of dim_f^k(T_v)`.
pub fn fkdim_tree(ta: &TreeAnalysis, k: &Rational) -> Result<Rational> {
    check_k_range(k, kappa_tree(ta))?;
    let m2 = k * Rational::from_integer(ta.m2.len().into());
    let m3 = ta
        .m3
        .iter()
        .map(|&v| spider_fkdim(&ta.major(v).expect("listed major").leg_lengths(), k))
        .fold(Rational::zero(), |acc, x| acc + x);
    Ok(m2 + m3)
}

/// `(sigma - ex_1) / 2`.
pub fn fdim_tree(ta: &TreeAnalysis) -> Rational {
    Rational::new((ta.sigma() - ta.ex1_count).into(), 2.into())
}
