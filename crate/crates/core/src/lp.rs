//! Exact bounded-variable simplex for covering-type linear programs.
//!
//! Programs have the form
//!
//! ```text
//! minimize    c . x
//! subject to  sum_{j in S_i} x_j >= b_i     for every constraint i
//!             0 <= x_j <= u_j
//! ```
//!
//! Every constraint row has unit coefficients on a variable subset, which is
//! exactly the shape of the resolving-function programs. Bounds are handled
//! implicitly: a nonbasic variable rests at either of its bounds, so the
//! tableau only carries one surplus column per constraint.
//!
//! Because all coefficients are non-negative, the point `x = u` maximizes
//! every row at once. The solver therefore starts from `x = u` with the
//! surplus variables basic; if some surplus is negative there, the program is
//! infeasible, and otherwise that start is a basic feasible solution and no
//! phase one is needed. Pivoting follows Bland's rule, which rules out
//! cycling on degenerate programs.

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;

/// One covering row: `sum_{j in vars} x_j >= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub vars: Vec<usize>,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub upper_bounds: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("objective has {got} coefficients for {expected} variables")]
    ObjectiveLength { expected: usize, got: usize },
    #[error("{got} upper bounds given for {expected} variables")]
    BoundsLength { expected: usize, got: usize },
    #[error("constraint {constraint} references variable {index}, but there are {num_vars}")]
    IndexOutOfRange { constraint: usize, index: usize, num_vars: usize },
    #[error("constraint {constraint} lists variable {index} twice")]
    DuplicateIndex { constraint: usize, index: usize },
    #[error("variable {var} has negative upper bound {bound}")]
    NegativeUpperBound { var: usize, bound: String },
    #[error("constraint {constraint} has negative right-hand side {rhs}")]
    NegativeRhs { constraint: usize, rhs: String },
    #[error("assignment has {got} entries for {expected} variables")]
    AssignmentLength { expected: usize, got: usize },
    #[error("no optimum after {0} pivots")]
    PivotLimit(usize),
    #[error("objective is unbounded below")]
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpSolution {
    Optimal { value: Rational, assignment: Vec<Rational> },
    Infeasible,
}

impl LpSolution {
    pub fn status(&self) -> LpStatus {
        match self {
            LpSolution::Optimal { .. } => LpStatus::Optimal,
            LpSolution::Infeasible => LpStatus::Infeasible,
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpSolution::Optimal { value, .. } => Some(value),
            LpSolution::Infeasible => None,
        }
    }

    pub fn assignment(&self) -> Option<&[Rational]> {
        match self {
            LpSolution::Optimal { assignment, .. } => Some(assignment),
            LpSolution::Infeasible => None,
        }
    }
}

impl LinearProgram {
    /// Structural validation; infeasibility is not an error.
    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars;
        if self.objective.len() != n {
            return Err(LpError::ObjectiveLength { expected: n, got: self.objective.len() });
        }
        if self.upper_bounds.len() != n {
            return Err(LpError::BoundsLength { expected: n, got: self.upper_bounds.len() });
        }
        if let Some((var, bound)) = self.upper_bounds.iter().enumerate().find(|(_, u)| u.is_negative()) {
            return Err(LpError::NegativeUpperBound { var, bound: bound.to_string() });
        }
        let mut seen = FixedBitSet::with_capacity(n);
        for (ci, row) in self.constraints.iter().enumerate() {
            if row.rhs.is_negative() {
                return Err(LpError::NegativeRhs { constraint: ci, rhs: row.rhs.to_string() });
            }
            seen.clear();
            for &index in &row.vars {
                if index >= n {
                    return Err(LpError::IndexOutOfRange { constraint: ci, index, num_vars: n });
                }
                if seen.put(index) {
                    return Err(LpError::DuplicateIndex { constraint: ci, index });
                }
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, assignment: &[Rational]) -> Rational {
        self.objective
            .iter()
            .zip(assignment)
            .map(|(c, x)| c * x)
            .fold(Rational::zero(), |acc, t| acc + t)
    }
}

/// True iff `assignment` satisfies every bound and every row, compared exactly.
pub fn check_feasible(lp: &LinearProgram, assignment: &[Rational]) -> Result<bool, LpError> {
    lp.validate()?;
    if assignment.len() != lp.num_vars {
        return Err(LpError::AssignmentLength { expected: lp.num_vars, got: assignment.len() });
    }
    let within_bounds = assignment
        .iter()
        .zip(&lp.upper_bounds)
        .all(|(x, u)| !x.is_negative() && x <= u);
    if !within_bounds {
        return Ok(false);
    }
    Ok(lp.constraints.iter().all(|row| {
        let lhs = row
            .vars
            .iter()
            .fold(Rational::zero(), |acc, &j| acc + &assignment[j]);
        lhs >= row.rhs
    }))
}

/// Drops rows implied by another row: any row with `rhs <= 0`, and any row
/// whose variable set contains another row's set while asking for no more.
/// The feasible region is unchanged.
pub fn prune_dominated_rows(lp: &LinearProgram) -> LinearProgram {
    let n = lp.num_vars;
    let mut rows: Vec<(FixedBitSet, &Constraint)> = lp
        .constraints
        .iter()
        .filter(|row| row.rhs.is_positive())
        .map(|row| {
            let mut set = FixedBitSet::with_capacity(n);
            set.extend(row.vars.iter().copied());
            (set, row)
        })
        .collect();
    // smaller sets first; among equal sets the largest rhs is kept
    rows.sort_by(|(sa, ra), (sb, rb)| {
        sa.count_ones(..)
            .cmp(&sb.count_ones(..))
            .then_with(|| rb.rhs.cmp(&ra.rhs))
    });
    let mut kept: Vec<(FixedBitSet, &Constraint)> = Vec::new();
    for (set, row) in rows {
        let dominated = kept
            .iter()
            .any(|(ks, kr)| kr.rhs >= row.rhs && ks.is_subset(&set));
        if !dominated {
            kept.push((set, row));
        }
    }
    LinearProgram {
        num_vars: n,
        objective: lp.objective.clone(),
        constraints: kept
            .into_iter()
            .map(|(set, row)| Constraint { vars: set.ones().collect(), rhs: row.rhs.clone() })
            .collect(),
        upper_bounds: lp.upper_bounds.clone(),
    }
}

/// Simplex driver settings.
#[derive(Debug, Clone)]
pub struct Simplex {
    /// Apply [`prune_dominated_rows`] before pivoting.
    pub prune_dominated: bool,
    pub pivot_limit: usize,
}

impl Default for Simplex {
    fn default() -> Self {
        Simplex { prune_dominated: true, pivot_limit: 1_000_000 }
    }
}

/// Minimizes with the default [`Simplex`] settings.
pub fn solve_min(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    Simplex::default().solve(lp)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VarState {
    Basic,
    AtLower,
    AtUpper,
}

impl Simplex {
    pub fn solve(&self, lp: &LinearProgram) -> Result<LpSolution, LpError> {
        lp.validate()?;
        if self.prune_dominated {
            Tableau::solve(&prune_dominated_rows(lp), self.pivot_limit)
        } else {
            Tableau::solve(lp, self.pivot_limit)
        }
    }
}

/// Dense tableau over structural columns `0..nv` followed by one surplus
/// column per row. Row `r` reads `x_{basis[r]} + sum_k rows[r][k] x_k = const`
/// over the nonbasic `k`; values are tracked directly in `x`.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    reduced: Vec<Rational>,
    basis: Vec<usize>,
    state: Vec<VarState>,
    upper: Vec<Option<Rational>>,
    x: Vec<Rational>,
}

impl Tableau {
    fn solve(lp: &LinearProgram, pivot_limit: usize) -> Result<LpSolution, LpError> {
        let nv = lp.num_vars;
        let m = lp.constraints.len();
        let total = nv + m;

        let mut x = vec![Rational::zero(); total];
        x[..nv].clone_from_slice(&lp.upper_bounds);
        for (i, row) in lp.constraints.iter().enumerate() {
            let top = row
                .vars
                .iter()
                .fold(Rational::zero(), |acc, &j| acc + &lp.upper_bounds[j]);
            let surplus = top - &row.rhs;
            if surplus.is_negative() {
                return Ok(LpSolution::Infeasible);
            }
            x[nv + i] = surplus;
        }

        let mut rows = vec![vec![Rational::zero(); total]; m];
        for (i, row) in lp.constraints.iter().enumerate() {
            for &j in &row.vars {
                rows[i][j] = -Rational::from_integer(1.into());
            }
            rows[i][nv + i] = Rational::from_integer(1.into());
        }
        let mut state = Vec::with_capacity(total);
        let mut upper = Vec::with_capacity(total);
        for u in &lp.upper_bounds {
            state.push(if u.is_zero() { VarState::AtLower } else { VarState::AtUpper });
            upper.push(Some(u.clone()));
        }
        state.extend(std::iter::repeat_n(VarState::Basic, m));
        upper.extend(std::iter::repeat_n(None, m));

        let mut reduced = lp.objective.clone();
        reduced.resize(total, Rational::zero());

        let mut tableau = Tableau {
            rows,
            reduced,
            basis: (nv..total).collect(),
            state,
            upper,
            x,
        };
        tableau.run(pivot_limit)?;

        let assignment = tableau.x[..nv].to_vec();
        let value = lp.objective_value(&assignment);
        Ok(LpSolution::Optimal { value, assignment })
    }

    /// Bland's rule: the lowest-index improving column enters.
    fn entering(&self) -> Option<usize> {
        (0..self.state.len()).find(|&j| match self.state[j] {
            VarState::Basic => false,
            VarState::AtLower => {
                self.reduced[j].is_negative()
                    && self.upper[j].as_ref().is_none_or(|u| u.is_positive())
            }
            VarState::AtUpper => self.reduced[j].is_positive(),
        })
    }

    fn run(&mut self, pivot_limit: usize) -> Result<(), LpError> {
        let mut steps = 0usize;
        while let Some(j) = self.entering() {
            steps += 1;
            if steps > pivot_limit {
                return Err(LpError::PivotLimit(pivot_limit));
            }
            let increasing = self.state[j] == VarState::AtLower;

            // (step length, variable index, row, basic variable ends at upper)
            let mut best: Option<(Rational, usize, Option<usize>, bool)> =
                self.upper[j].clone().map(|u| (u, j, None, false));
            for (r, row) in self.rows.iter().enumerate() {
                let a = &row[j];
                if a.is_zero() {
                    continue;
                }
                let rate = if increasing { -a } else { a.clone() };
                let b = self.basis[r];
                let (limit, to_upper) = if rate.is_negative() {
                    (&self.x[b] / -&rate, false)
                } else {
                    match &self.upper[b] {
                        Some(u) => ((u - &self.x[b]) / &rate, true),
                        None => continue,
                    }
                };
                let better = match &best {
                    None => true,
                    Some((t, var, _, _)) => limit < *t || (limit == *t && b < *var),
                };
                if better {
                    best = Some((limit, b, Some(r), to_upper));
                }
            }
            let (step, _, row, to_upper) = best.ok_or(LpError::Unbounded)?;

            if !step.is_zero() {
                let delta = if increasing { step } else { -step };
                self.x[j] += &delta;
                for (r, tab_row) in self.rows.iter().enumerate() {
                    if !tab_row[j].is_zero() {
                        let b = self.basis[r];
                        self.x[b] -= &tab_row[j] * &delta;
                    }
                }
            }

            match row {
                None => {
                    self.state[j] = if increasing { VarState::AtUpper } else { VarState::AtLower };
                }
                Some(r) => {
                    let leaving = self.basis[r];
                    if to_upper {
                        self.state[leaving] = VarState::AtUpper;
                        self.x[leaving] = self.upper[leaving].clone().expect("bounded");
                    } else {
                        self.state[leaving] = VarState::AtLower;
                        self.x[leaving] = Rational::zero();
                    }
                    self.pivot(r, j);
                    self.basis[r] = j;
                    self.state[j] = VarState::Basic;
                }
            }
        }
        Ok(())
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let pivot = self.rows[r][j].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v /= &pivot;
            }
        }
        let support: Vec<usize> = (0..self.rows[r].len())
            .filter(|&k| !self.rows[r][k].is_zero())
            .collect();
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for row in self.rows.iter_mut() {
            if row.is_empty() || row[j].is_zero() {
                continue;
            }
            let factor = row[j].clone();
            for &k in &support {
                row[k] -= &factor * &pivot_row[k];
            }
        }
        if !self.reduced[j].is_zero() {
            let factor = self.reduced[j].clone();
            for &k in &support {
                self.reduced[k] -= &factor * &pivot_row[k];
            }
        }
        self.rows[r] = pivot_row;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn lp(num_vars: usize, rows: &[(&[usize], Rational)], upper: Rational) -> LinearProgram {
        LinearProgram {
            num_vars,
            objective: vec![int(1); num_vars],
            constraints: rows
                .iter()
                .map(|(vars, rhs)| Constraint { vars: vars.to_vec(), rhs: rhs.clone() })
                .collect(),
            upper_bounds: vec![upper; num_vars],
        }
    }

    #[test]
    fn two_variable_cover() {
        let p = lp(2, &[(&[0, 1], int(1))], int(1));
        let sol = solve_min(&p).unwrap();
        assert_eq!(sol.value(), Some(&int(1)));
        assert!(check_feasible(&p, sol.assignment().unwrap()).unwrap());
    }

    #[test]
    fn bound_makes_it_infeasible() {
        let p = lp(1, &[(&[0], int(2))], int(1));
        assert_eq!(solve_min(&p).unwrap(), LpSolution::Infeasible);
        let empty_row = lp(2, &[(&[], int(1))], int(1));
        assert_eq!(solve_min(&empty_row).unwrap(), LpSolution::Infeasible);
    }

    #[test]
    fn structural_errors_are_distinct_from_infeasible() {
        let mut p = lp(2, &[(&[0, 2], int(1))], int(1));
        assert!(matches!(solve_min(&p), Err(LpError::IndexOutOfRange { index: 2, .. })));
        p.constraints[0].vars = vec![1, 1];
        assert!(matches!(solve_min(&p), Err(LpError::DuplicateIndex { index: 1, .. })));
        p.constraints[0].vars = vec![0, 1];
        p.upper_bounds[1] = int(-1);
        assert!(matches!(solve_min(&p), Err(LpError::NegativeUpperBound { var: 1, .. })));
        p.upper_bounds[1] = int(1);
        p.objective.pop();
        assert!(matches!(solve_min(&p), Err(LpError::ObjectiveLength { .. })));
    }

    #[test]
    fn negative_costs_push_to_upper_bounds() {
        let mut p = lp(3, &[(&[0, 1], int(1))], ratio(3, 2));
        p.objective = vec![int(-1), int(2), int(0)];
        let sol = solve_min(&p).unwrap();
        assert_eq!(sol.value(), Some(&ratio(-3, 2)));
        assert!(check_feasible(&p, sol.assignment().unwrap()).unwrap());
    }

    #[test]
    fn fractional_optimum_on_odd_cycle_cover() {
        // edges of C_5 as covering rows; optimum 5/2 with all halves
        let rows: Vec<(Vec<usize>, Rational)> =
            (0..5).map(|i| (vec![i, (i + 1) % 5], int(1))).collect();
        let p = LinearProgram {
            num_vars: 5,
            objective: vec![int(1); 5],
            constraints: rows.into_iter().map(|(vars, rhs)| Constraint { vars, rhs }).collect(),
            upper_bounds: vec![int(1); 5],
        };
        assert_eq!(solve_min(&p).unwrap().value(), Some(&ratio(5, 2)));
    }

    #[test]
    fn check_feasible_rejects_violations() {
        let p = lp(2, &[(&[0, 1], int(1))], int(1));
        assert!(check_feasible(&p, &[int(1), int(0)]).unwrap());
        assert!(!check_feasible(&p, &[int(0), int(0)]).unwrap());
        assert!(!check_feasible(&p, &[int(2), int(0)]).unwrap());
        assert!(!check_feasible(&p, &[int(-1), int(2)]).unwrap());
        assert!(matches!(
            check_feasible(&p, &[int(1)]),
            Err(LpError::AssignmentLength { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn pruning_keeps_only_minimal_rows() {
        let p = lp(
            4,
            &[
                (&[0, 1, 2], int(1)),
                (&[0, 1], int(1)),
                (&[0, 1], int(2)),
                (&[2, 3], int(0)),
                (&[1, 2, 3], int(3)),
            ],
            int(1),
        );
        let pruned = prune_dominated_rows(&p);
        let rows: Vec<(Vec<usize>, Rational)> =
            pruned.constraints.iter().map(|c| (c.vars.clone(), c.rhs.clone())).collect();
        assert_eq!(rows, vec![(vec![0, 1], int(2)), (vec![1, 2, 3], int(3))]);
    }

    #[test]
    fn identical_programs_give_identical_certificates() {
        let rows: Vec<(Vec<usize>, Rational)> = (0..6)
            .flat_map(|i| (i + 1..6).map(move |j| (vec![i, j, (j + 1) % 6], int(1))))
            .collect();
        let p = LinearProgram {
            num_vars: 6,
            objective: vec![int(1); 6],
            constraints: rows.into_iter().map(|(mut vars, rhs)| {
                vars.sort_unstable();
                vars.dedup();
                Constraint { vars, rhs }
            }).collect(),
            upper_bounds: vec![int(1); 6],
        };
        assert_eq!(solve_min(&p).unwrap(), solve_min(&p).unwrap());
    }

    /// Minimum over all basic solutions: choose `n` tight hyperplanes among
    /// rows and bounds, solve the square system, keep feasible points.
    fn vertex_enumeration(p: &LinearProgram) -> Option<Rational> {
        let n = p.num_vars;
        let mut planes: Vec<(Vec<Rational>, Rational)> = Vec::new();
        for row in &p.constraints {
            let mut a = vec![int(0); n];
            for &j in &row.vars {
                a[j] = int(1);
            }
            planes.push((a, row.rhs.clone()));
        }
        for j in 0..n {
            let mut a = vec![int(0); n];
            a[j] = int(1);
            planes.push((a.clone(), int(0)));
            planes.push((a, p.upper_bounds[j].clone()));
        }
        let mut best: Option<Rational> = None;
        let mut chosen = Vec::new();
        choose(&planes, 0, n, &mut chosen, &mut |sel| {
            if let Some(x) = gauss(sel.iter().map(|&i| &planes[i]).collect(), n) {
                if check_feasible(p, &x).unwrap() {
                    let v = p.objective_value(&x);
                    if best.as_ref().is_none_or(|b| v < *b) {
                        best = Some(v);
                    }
                }
            }
        });
        best
    }

    fn choose(
        planes: &[(Vec<Rational>, Rational)],
        start: usize,
        left: usize,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if left == 0 {
            visit(chosen);
            return;
        }
        for i in start..planes.len() {
            chosen.push(i);
            choose(planes, i + 1, left - 1, chosen, visit);
            chosen.pop();
        }
    }

    fn gauss(rows: Vec<&(Vec<Rational>, Rational)>, n: usize) -> Option<Vec<Rational>> {
        let mut m: Vec<Vec<Rational>> = rows
            .iter()
            .map(|(a, b)| a.iter().cloned().chain(std::iter::once(b.clone())).collect())
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, piv);
            let p = m[col][col].clone();
            for v in m[col].iter_mut() {
                *v /= &p;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let pivot_row = m[col].clone();
                    for (v, pv) in m[r].iter_mut().zip(&pivot_row) {
                        *v -= &f * pv;
                    }
                }
            }
        }
        Some(m.into_iter().map(|row| row[n].clone()).collect())
    }

    fn random_lp(seed: u64) -> LinearProgram {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let n = rng.gen_range(1..=6);
        let m = rng.gen_range(1..=4);
        let halves = |rng: &mut rand::rngs::StdRng, hi: i64| ratio(rng.gen_range(0..=hi), 2);
        let constraints = (0..m)
            .map(|_| {
                let vars: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
                Constraint { vars, rhs: halves(&mut rng, 6) }
            })
            .collect();
        LinearProgram {
            num_vars: n,
            objective: (0..n).map(|_| int(rng.gen_range(-2..=4))).collect(),
            constraints,
            upper_bounds: (0..n).map(|_| halves(&mut rng, 4)).collect(),
        }
    }

    #[test]
    fn agrees_with_vertex_enumeration() {
        let mut infeasible = 0;
        for seed in 0..100 {
            let p = random_lp(seed);
            let expected = vertex_enumeration(&p);
            for prune in [true, false] {
                let solver = Simplex { prune_dominated: prune, ..Simplex::default() };
                let sol = solver.solve(&p).unwrap();
                assert_eq!(sol.value(), expected.as_ref(), "seed {seed}, prune {prune}");
                if let Some(x) = sol.assignment() {
                    assert!(check_feasible(&p, x).unwrap());
                    assert_eq!(&p.objective_value(x), sol.value().unwrap());
                } else {
                    infeasible += 1;
                }
            }
        }
        assert!(infeasible > 0 && infeasible < 200);
    }

    #[test]
    fn terminates_on_highly_degenerate_program() {
        // all 3-subsets of 6 variables must sum to at least 1
        let mut constraints = Vec::new();
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    constraints.push(Constraint { vars: vec![a, b, c], rhs: int(1) });
                }
            }
        }
        let p = LinearProgram {
            num_vars: 6,
            objective: vec![int(1); 6],
            constraints,
            upper_bounds: vec![int(1); 6],
        };
        let solver = Simplex { prune_dominated: false, pivot_limit: 10_000 };
        assert_eq!(solver.solve(&p).unwrap().value(), Some(&int(2)));
    }

    #[test]
    fn scaling_rhs_up_never_lowers_the_optimum() {
        for seed in 100..140 {
            let p = random_lp(seed);
            let mut q = p.clone();
            for row in &mut q.constraints {
                row.rhs = &row.rhs * ratio(3, 2);
            }
            if p.objective.iter().any(|c| c.is_negative()) {
                continue;
            }
            match (solve_min(&p).unwrap().value(), solve_min(&q).unwrap().value()) {
                (Some(a), Some(b)) => assert!(b >= a),
                (None, Some(_)) => panic!("tightening made seed {seed} feasible"),
                _ => {}
            }
        }
    }
}
