//! Integer k-metric dimension by branch-and-bound, bounded below by the
//! fractional relaxation, plus an exhaustive oracle for small graphs.

use fixedbitset::FixedBitSet;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::lp::{solve_min, Constraint, LinearProgram, LpSolution};
use crate::pairs::{PairSystem, VertexSet};
use crate::rational::{ceil, Rational};

/// Default vertex limit for [`brute_force_k_metric_dimension`].
pub const DEFAULT_GUARD: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerDimResult {
    pub k: usize,
    pub value: usize,
    /// A minimum k-resolving set, ascending.
    pub witness: Vec<Vertex>,
}

fn check_integer_k(k: usize, kappa: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::KBelowOne { k: k.to_string() });
    }
    if k > kappa {
        return Err(Error::KAboveKappa { k: k.to_string(), kappa });
    }
    Ok(())
}

/// True iff `set` meets every `R{x,y}` in at least `k` vertices.
pub fn is_k_resolving_set(ps: &PairSystem, set: &[Vertex], k: usize) -> bool {
    let mut members = FixedBitSet::with_capacity(ps.vertex_count());
    for &v in set {
        if v >= ps.vertex_count() {
            return false;
        }
        members.insert(v);
    }
    ps.rsets().iter().all(|r| r.intersection(&members).count() >= k)
}

pub fn k_metric_dimension(g: &Graph, k: usize) -> Result<IntegerDimResult> {
    k_metric_dimension_with(&PairSystem::new(g)?, k)
}

pub fn metric_dimension(g: &Graph) -> Result<IntegerDimResult> {
    k_metric_dimension(g, 1)
}

pub fn k_metric_dimension_with(ps: &PairSystem, k: usize) -> Result<IntegerDimResult> {
    check_integer_k(k, ps.kappa())?;
    let mut search = Search::new(ps, k);
    search.run(0)?;
    let witness: Vec<Vertex> = search.best.ones().collect();
    assert!(
        is_k_resolving_set(ps, &witness, k),
        "branch-and-bound produced a set that is not {k}-resolving"
    );
    Ok(IntegerDimResult { k, value: witness.len(), witness })
}

/// Enumerates subsets by increasing size; the first k-resolving one wins.
pub fn brute_force_k_metric_dimension(
    g: &Graph,
    k: usize,
    size_cap: usize,
) -> Result<IntegerDimResult> {
    let n = g.vertex_count();
    let guard = size_cap.min(63);
    if n > guard {
        return Err(Error::GuardExceeded { n, guard });
    }
    let ps = PairSystem::new(g)?;
    check_integer_k(k, ps.kappa())?;
    let masks: Vec<u64> = ps
        .rsets()
        .iter()
        .map(|r| r.ones().fold(0u64, |m, v| m | (1 << v)))
        .collect();
    let limit = 1u64 << n;
    for size in 0..=n {
        let mut subset = (1u64 << size) - 1;
        while subset < limit {
            if masks.iter().all(|m| (m & subset).count_ones() as usize >= k) {
                let witness: Vec<Vertex> = (0..n).filter(|v| subset >> v & 1 == 1).collect();
                return Ok(IntegerDimResult { k, value: size, witness });
            }
            if subset == 0 {
                break;
            }
            // next subset of the same size in increasing numeric order
            let low = subset & subset.wrapping_neg();
            let ripple = subset + low;
            subset = ripple | (((subset ^ ripple) >> 2) / low);
        }
    }
    unreachable!("the full vertex set is k-resolving for k <= kappa")
}

struct Search<'a> {
    rsets: &'a [VertexSet],
    rows_of: Vec<Vec<usize>>,
    order: Vec<Vertex>,
    k: usize,
    n: usize,
    included: FixedBitSet,
    decided: FixedBitSet,
    /// `|included ∩ R_i|` per row.
    hits: Vec<usize>,
    /// `|undecided ∩ R_i|` per row.
    open: Vec<usize>,
    best: FixedBitSet,
}

impl<'a> Search<'a> {
    fn new(ps: &'a PairSystem, k: usize) -> Self {
        let n = ps.vertex_count();
        let rsets = ps.rsets();
        let mut rows_of = vec![Vec::new(); n];
        for (i, r) in rsets.iter().enumerate() {
            for v in r.ones() {
                rows_of[v].push(i);
            }
        }
        let membership = ps.kappa_membership();
        let mut order: Vec<Vertex> = (0..n).collect();
        order.sort_by(|&a, &b| membership[b].cmp(&membership[a]).then(a.cmp(&b)));
        let mut search = Search {
            rsets,
            rows_of,
            order,
            k,
            n,
            included: FixedBitSet::with_capacity(n),
            decided: FixedBitSet::with_capacity(n),
            hits: vec![0; rsets.len()],
            open: rsets.iter().map(|r| r.count_ones(..)).collect(),
            best: FixedBitSet::with_capacity(n),
        };
        search.best = search.greedy();
        search
    }

    /// Repeatedly adds the vertex lying in the most unsatisfied rows.
    fn greedy(&self) -> FixedBitSet {
        let mut chosen = FixedBitSet::with_capacity(self.n);
        let mut hits = vec![0usize; self.rsets.len()];
        loop {
            let gain = |v: usize| self.rows_of[v].iter().filter(|&&i| hits[i] < self.k).count();
            let pick = (0..self.n)
                .filter(|&v| !chosen.contains(v))
                .map(|v| (gain(v), v))
                .filter(|&(g, _)| g > 0)
                .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
            let Some((_, v)) = pick else { break };
            chosen.insert(v);
            for &i in &self.rows_of[v] {
                hits[i] += 1;
            }
        }
        chosen
    }

    fn set(&mut self, v: Vertex, include: bool) {
        self.decided.insert(v);
        if include {
            self.included.insert(v);
        }
        for &i in &self.rows_of[v] {
            self.open[i] -= 1;
            if include {
                self.hits[i] += 1;
            }
        }
    }

    fn unset(&mut self, v: Vertex) {
        let include = self.included.contains(v);
        self.decided.set(v, false);
        self.included.set(v, false);
        for &i in &self.rows_of[v] {
            self.open[i] += 1;
            if include {
                self.hits[i] -= 1;
            }
        }
    }

    /// Lower bound on how many more vertices are needed, or `None` if the
    /// current decisions admit no completion.
    fn residual_bound(&self) -> Result<Option<usize>> {
        let mut constraints = Vec::new();
        let mut deepest = 0;
        for (i, r) in self.rsets.iter().enumerate() {
            let deficit = self.k.saturating_sub(self.hits[i]);
            if deficit == 0 {
                continue;
            }
            if deficit > self.open[i] {
                return Ok(None);
            }
            deepest = deepest.max(deficit);
            constraints.push(Constraint {
                vars: r.ones().filter(|&v| !self.decided.contains(v)).collect(),
                rhs: Rational::from_integer(deficit.into()),
            });
        }
        if constraints.is_empty() {
            return Ok(Some(0));
        }
        let lp = LinearProgram {
            num_vars: self.n,
            objective: vec![Rational::one(); self.n],
            constraints,
            upper_bounds: (0..self.n)
                .map(|v| Rational::from_integer(u8::from(!self.decided.contains(v)).into()))
                .collect(),
        };
        Ok(match solve_min(&lp)? {
            LpSolution::Infeasible => None,
            LpSolution::Optimal { value, .. } => {
                let bound = ceil(&value).to_usize().expect("bound fits in usize");
                Some(bound.max(deepest))
            }
        })
    }

    fn run(&mut self, pos: usize) -> Result<()> {
        let chosen = self.included.count_ones(..);
        let Some(more) = self.residual_bound()? else { return Ok(()) };
        if chosen + more >= self.best.count_ones(..) {
            return Ok(());
        }
        if more == 0 {
            self.best = self.included.clone();
            return Ok(());
        }
        // first undecided vertex, in branch order, that still helps some row
        let mut skipped = Vec::new();
        let mut next = None;
        for p in pos..self.order.len() {
            let v = self.order[p];
            let useful = self.rows_of[v].iter().any(|&i| self.hits[i] < self.k);
            if useful {
                next = Some((p, v));
                break;
            }
            self.set(v, false);
            skipped.push(v);
        }
        if let Some((p, v)) = next {
            self.set(v, true);
            let outcome = self.run(p + 1);
            self.unset(v);
            outcome?;
            self.set(v, false);
            let outcome = self.run(p + 1);
            self.unset(v);
            outcome?;
        }
        for v in skipped {
            self.unset(v);
        }
        Ok(())
    }
}
