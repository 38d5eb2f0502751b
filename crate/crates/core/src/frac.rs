//! Fractional k-metric dimension: the k-resolving LP, its certificates, the
//! extremal-value classifier and sampled sweeps of `k -> dim_f^k(G)`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lp::{solve_min, Constraint, LinearProgram, LpSolution};
use crate::pairs::PairSystem;
use crate::rational::{equally_spaced, serde_str, Rational};

/// A vertex weighting `g: V -> [0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ResolvingFunction {
    #[serde(with = "serde_str::vec")]
    pub values: Vec<Rational>,
}

impl ResolvingFunction {
    pub fn total(&self) -> Rational {
        self.values.iter().fold(Rational::zero(), |acc, v| acc + v)
    }

    pub fn max_value(&self) -> Rational {
        self.values.iter().max().cloned().unwrap_or_else(Rational::zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionResult {
    #[serde(with = "serde_str")]
    pub k: Rational,
    #[serde(with = "serde_str")]
    pub value: Rational,
    pub kappa: usize,
    pub certificate: ResolvingFunction,
}

/// Rejects `k` outside `[1, kappa]`.
pub fn check_k_range(k: &Rational, kappa: usize) -> Result<()> {
    if *k < Rational::one() {
        return Err(Error::KBelowOne { k: k.to_string() });
    }
    if *k > Rational::from_integer(kappa.into()) {
        return Err(Error::KAboveKappa { k: k.to_string(), kappa });
    }
    Ok(())
}

/// One `[0, 1]` variable per vertex with unit cost, one row `g(R{x,y}) >= k`
/// per pair.
pub fn build_kresolving_lp(ps: &PairSystem, k: &Rational) -> Result<LinearProgram> {
    check_k_range(k, ps.kappa())?;
    let n = ps.vertex_count();
    Ok(LinearProgram {
        num_vars: n,
        objective: vec![Rational::one(); n],
        constraints: ps
            .rsets()
            .iter()
            .map(|set| Constraint { vars: set.ones().collect(), rhs: k.clone() })
            .collect(),
        upper_bounds: vec![Rational::one(); n],
    })
}

pub fn fractional_k_dimension(g: &Graph, k: &Rational) -> Result<DimensionResult> {
    fractional_k_dimension_with(&PairSystem::new(g)?, k)
}

pub fn fractional_k_dimension_with(ps: &PairSystem, k: &Rational) -> Result<DimensionResult> {
    let lp = build_kresolving_lp(ps, k)?;
    match solve_min(&lp)? {
        LpSolution::Optimal { value, assignment } => Ok(DimensionResult {
            k: k.clone(),
            value,
            kappa: ps.kappa(),
            certificate: ResolvingFunction { values: assignment },
        }),
        LpSolution::Infeasible => {
            unreachable!("the constant k/kappa weighting is always feasible for k <= kappa")
        }
    }
}

pub fn fractional_dimension(g: &Graph) -> Result<DimensionResult> {
    fractional_k_dimension(g, &Rational::one())
}

/// Exact check of `0 <= f <= 1` and `f(R{x,y}) >= k` for every pair.
pub fn verify_k_resolving(ps: &PairSystem, f: &ResolvingFunction, k: &Rational) -> Result<bool> {
    let n = ps.vertex_count();
    if f.values.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: f.values.len() });
    }
    if f.values.iter().any(|v| v.is_negative() || *v > Rational::one()) {
        return Ok(false);
    }
    Ok(ps.rsets().iter().all(|set| {
        let weight = set.ones().fold(Rational::zero(), |acc, v| acc + &f.values[v]);
        weight >= *k
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Extreme {
    EqualsK,
    EqualsN,
    Interior,
}

/// LP-derived class together with the two structural predictions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub class: Extreme,
    pub value: Rational,
    pub value_equals_k: bool,
    pub value_equals_n: bool,
    /// The graph is a path and `k <= 2`.
    pub predicts_k: bool,
    /// `k = kappa` and the minimum-size resolving sets cover `V`.
    pub predicts_n: bool,
}

impl Classification {
    /// Both predictions match what the LP value says.
    pub fn consistent(&self) -> bool {
        self.predicts_k == self.value_equals_k && self.predicts_n == self.value_equals_n
    }
}

/// When both extremes hold at once (only `P_2` at `k = 2`) the class is
/// `EqualsK`; the flags report both.
pub fn classify_extremes(g: &Graph, k: &Rational) -> Result<Classification> {
    let ps = PairSystem::new(g)?;
    let result = fractional_k_dimension_with(&ps, k)?;
    let n = Rational::from_integer(g.vertex_count().into());
    let value_equals_k = result.value == *k;
    let value_equals_n = result.value == n;
    let class = if value_equals_k {
        Extreme::EqualsK
    } else if value_equals_n {
        Extreme::EqualsN
    } else {
        Extreme::Interior
    };
    let predicts_k = g.is_path() && *k <= Rational::from_integer(2.into());
    let predicts_n = *k == Rational::from_integer(ps.kappa().into())
        && ps.r_kappa_union().count_ones(..) == g.vertex_count();
    Ok(Classification {
        class,
        value: result.value,
        value_equals_k,
        value_equals_n,
        predicts_k,
        predicts_n,
    })
}

/// `kappa * c` equally spaced samples from 1 to `kappa`.
pub fn default_samples(kappa: usize, c: usize) -> Vec<Rational> {
    equally_spaced(kappa as u64, kappa * c)
}

/// `(k, dim_f^k)` at each sample, in input order. Every sample is range
/// checked before any LP is solved.
pub fn sweep_phi(g: &Graph, samples: &[Rational]) -> Result<Vec<(Rational, Rational)>> {
    sweep_phi_with(&PairSystem::new(g)?, samples)
}

pub fn sweep_phi_with(ps: &PairSystem, samples: &[Rational]) -> Result<Vec<(Rational, Rational)>> {
    for k in samples {
        check_k_range(k, ps.kappa())?;
    }
    samples
        .iter()
        .map(|k| Ok((k.clone(), fractional_k_dimension_with(ps, k)?.value)))
        .collect()
}
