//! Dense two-phase tableau simplex over exact rationals.
//!
//! Pivoting follows Bland's rule throughout (lowest-index entering column,
//! lowest-index leaving basic variable among ratio ties), so the method
//! terminates on degenerate problems.

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `optimize objective · x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    /// An optimal basic feasible solution.
    pub x: Vec<Rational>,
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        LinearProgram {
            sense,
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn minimize(objective: Vec<Rational>) -> Self {
        Self::new(Sense::Minimize, objective)
    }

    pub fn maximize(objective: Vec<Rational>) -> Self {
        Self::new(Sense::Maximize, objective)
    }

    pub fn constrain(mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    fn check_dimensions(&self) -> Result<()> {
        let n = self.num_vars();
        match self.constraints.iter().position(|c| c.coeffs.len() != n) {
            Some(i) => Err(Error::invalid(format!(
                "constraint {i} has {} coefficients, expected {n}",
                self.constraints[i].coeffs.len()
            ))),
            None => Ok(()),
        }
    }

    /// True iff `x >= 0` satisfies every constraint exactly.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|v| !v.is_negative())
            && self.constraints.iter().all(|c| {
                let lhs: Rational = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                }
            })
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

struct Tableau {
    /// Each row: coefficients for every column, then the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs per column, then minus the current objective value.
    cost: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn cols(&self) -> usize {
        self.cost.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<Rational>| {
            let factor = row[c].clone();
            if !factor.is_zero() {
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v = &*v - &(&factor * p);
                    }
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.basis[r] = c;
    }

    /// Sets the cost row from raw column costs, pricing out the current basis.
    fn set_costs(&mut self, raw: &[Rational]) {
        let mut cost: Vec<Rational> = raw.to_vec();
        cost.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = raw[b].clone();
            if !cb.is_zero() {
                for (v, a) in cost.iter_mut().zip(row) {
                    *v = &*v - &(&cb * a);
                }
            }
        }
        self.cost = cost;
    }

    /// Runs Bland's-rule pivots until optimal, over columns with `allowed(col)`.
    fn optimize(&mut self, allowed: impl Fn(usize) -> bool) -> Result<()> {
        loop {
            let entering = (0..self.cols()).find(|&j| allowed(j) && self.cost[j].is_negative());
            let Some(c) = entering else { return Ok(()) };
            let rhs = self.cols();
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[rhs] / &row[c];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return Err(Error::Unbounded),
            }
        }
    }
}

/// Solves `lp` exactly. Infeasible and unbounded problems are reported as
/// [`Error::Infeasible`] and [`Error::Unbounded`].
pub fn rational_simplex(lp: &LinearProgram) -> Result<LpSolution> {
    lp.check_dimensions()?;
    let n = lp.num_vars();
    let m = lp.constraints.len();

    // normalize to non-negative right-hand sides
    let normalized: Vec<(Vec<Rational>, Relation, Rational)> = lp
        .constraints
        .iter()
        .map(|c| {
            if c.rhs.is_negative() {
                let flipped = match c.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                (c.coeffs.iter().map(|a| -a).collect(), flipped, -&c.rhs)
            } else {
                (c.coeffs.clone(), c.relation, c.rhs.clone())
            }
        })
        .collect();

    // column layout: originals, one slack/surplus per inequality, one artificial per >=/= row
    let n_slack = normalized.iter().filter(|c| c.1 != Relation::Eq).count();
    let n_art = normalized.iter().filter(|c| c.1 != Relation::Le).count();
    let art_start = n + n_slack;
    let cols = art_start + n_art;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let (mut next_slack, mut next_art) = (n, art_start);
    for (coeffs, rel, rhs) in &normalized {
        let mut row = vec![Rational::zero(); cols + 1];
        row[..n].clone_from_slice(coeffs);
        row[cols] = rhs.clone();
        match rel {
            Relation::Le => {
                row[next_slack] = Rational::one();
                basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -Rational::one();
                next_slack += 1;
                row[next_art] = Rational::one();
                basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = Rational::one();
                basis.push(next_art);
                next_art += 1;
            }
        }
        rows.push(row);
    }

    let mut t = Tableau {
        rows,
        cost: vec![Rational::zero(); cols + 1],
        basis,
    };

    if n_art > 0 {
        let phase1: Vec<Rational> = (0..cols)
            .map(|j| if j >= art_start { Rational::one() } else { Rational::zero() })
            .collect();
        t.set_costs(&phase1);
        t.optimize(|_| true)?;
        if !t.cost[cols].is_zero() {
            return Err(Error::Infeasible);
        }
        // drive remaining (zero-valued) artificials out of the basis
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= art_start {
                match (0..art_start).find(|&j| !t.rows[r][j].is_zero()) {
                    Some(c) => {
                        t.pivot(r, c);
                        r += 1;
                    }
                    None => {
                        // redundant row
                        t.rows.remove(r);
                        t.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
    }

    let mut phase2 = vec![Rational::zero(); cols];
    for (j, c) in lp.objective.iter().enumerate() {
        phase2[j] = match lp.sense {
            Sense::Minimize => c.clone(),
            Sense::Maximize => -c,
        };
    }
    t.set_costs(&phase2);
    t.optimize(|j| j < art_start)?;

    let mut x = vec![Rational::zero(); n];
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        if b < n {
            x[b] = row[cols].clone();
        }
    }
    let value = lp.objective_value(&x);
    if !lp.is_feasible(&x) {
        return Err(Error::Invariant("simplex returned an infeasible point".into()));
    }
    Ok(LpSolution { value, x })
}
