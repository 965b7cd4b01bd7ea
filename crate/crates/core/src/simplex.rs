//! Dense two-phase primal simplex with Bland's rule.
//!
//! Problems are stated as `maximize c·x` subject to linear rows (`≤`, `=`, `≥`)
//! and `x ≥ 0`. Dual values are read off the final tableau.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

/// `maximize objective·x` subject to `constraints` and `x ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(objective: Vec<f64>) -> Self {
        Self { objective, constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) {
        assert_eq!(coeffs.len(), self.num_vars(), "row width");
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn count(&self, relation: Relation) -> usize {
        self.constraints.iter().filter(|c| c.relation == relation).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    pub pivot_tol: f64,
    /// Phase-one objective below `-feas_tol·(1 + max|b|)` means infeasible.
    pub feas_tol: f64,
    /// Per-phase pivot budget; `None` picks one from the problem size.
    pub max_iterations: Option<usize>,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self { pivot_tol: 1e-9, feas_tol: 1e-9, max_iterations: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    /// One multiplier per constraint, in the orientation of the input rows:
    /// `≥ 0` for `≤` rows, `≤ 0` for `≥` rows, free for `=` rows.
    pub duals: Vec<f64>,
    /// Basic column per row of the final tableau (structural columns first,
    /// then slack/surplus, then artificial).
    pub basis: Vec<usize>,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: usize,
    width: usize,
    t: Vec<f64>,
    /// reduced costs `c_B B^{-1} a_j - c_j`, last entry is the objective value
    obj: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.t[i * self.width + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.width - 1)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width;
        let p = self.at(r, c);
        for j in 0..w {
            self.t[r * w + j] /= p;
        }
        self.t[r * w + c] = 1.0;
        let pivot_row: Vec<f64> = self.t[r * w..(r + 1) * w].to_vec();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let k = self.t[i * w + c];
            if k != 0.0 {
                for j in 0..w {
                    let v = self.t[i * w + j] - k * pivot_row[j];
                    self.t[i * w + j] = if v.abs() < 1e-14 { 0.0 } else { v };
                }
                self.t[i * w + c] = 0.0;
            }
        }
        let k = self.obj[c];
        if k != 0.0 {
            for j in 0..w {
                let v = self.obj[j] - k * pivot_row[j];
                self.obj[j] = if v.abs() < 1e-14 { 0.0 } else { v };
            }
            self.obj[c] = 0.0;
        }
        self.basis[r] = c;
    }

    fn set_objective(&mut self, cost: &[f64]) {
        let w = self.width;
        for j in 0..w {
            let mut v = if j < w - 1 { -cost[j] } else { 0.0 };
            for i in 0..self.rows {
                v += cost[self.basis[i]] * self.at(i, j);
            }
            self.obj[j] = v;
        }
    }

    /// Bland's rule: lowest eligible entering column, lowest basic index on ratio ties.
    fn run(&mut self, barred: &[bool], opts: &SimplexOptions, budget: usize) -> Result<PhaseEnd> {
        let tol = opts.pivot_tol;
        for iteration in 0..budget {
            let Some(c) = (0..self.width - 1).find(|&j| !barred[j] && self.obj[j] < -tol) else {
                return Ok(PhaseEnd::Optimal(iteration));
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let a = self.at(i, c);
                if a <= tol {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        let tie = (ratio - br).abs() <= 1e-12 * (1.0 + br.abs());
                        if (tie && self.basis[i] < self.basis[bi]) || (!tie && ratio < br) {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            let Some((r, _)) = leave else {
                return Ok(PhaseEnd::Unbounded);
            };
            self.pivot(r, c);
            if !self.obj[self.width - 1].is_finite() {
                return Err(Error::NumericalFailure("non-finite tableau entry".into()));
            }
        }
        Err(Error::NumericalFailure(format!("no convergence within {budget} pivots")))
    }
}

enum PhaseEnd {
    Optimal(usize),
    Unbounded,
}

/// Solves `lp` with the two-phase simplex method.
pub fn simplex_solve(lp: &LinearProgram, opts: &SimplexOptions) -> Result<LpOutcome> {
    let n = lp.num_vars();
    let m = lp.constraints.len();
    if lp
        .objective
        .iter()
        .chain(lp.constraints.iter().flat_map(|c| c.coeffs.iter().chain([&c.rhs])))
        .any(|v| !v.is_finite())
    {
        return Err(Error::NumericalFailure("non-finite LP data".into()));
    }

    // normalize to b >= 0
    let mut sign = vec![1.0; m];
    let mut rel = Vec::with_capacity(m);
    for (i, c) in lp.constraints.iter().enumerate() {
        let r = if c.rhs < 0.0 {
            sign[i] = -1.0;
            match c.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            }
        } else {
            c.relation
        };
        rel.push(r);
    }
    let n_slack = rel.iter().filter(|r| **r != Relation::Eq).count();
    let n_art = rel.iter().filter(|r| **r != Relation::Le).count();
    let width = n + n_slack + n_art + 1;
    let mut tab = Tableau { rows: m, width, t: vec![0.0; m * width], obj: vec![0.0; width], basis: vec![0; m] };
    let mut identity_col = vec![0usize; m];
    let (mut s, mut a) = (n, n + n_slack);
    for (i, c) in lp.constraints.iter().enumerate() {
        for j in 0..n {
            tab.t[i * width + j] = sign[i] * c.coeffs[j];
        }
        tab.t[i * width + width - 1] = sign[i] * c.rhs;
        match rel[i] {
            Relation::Le => {
                tab.t[i * width + s] = 1.0;
                identity_col[i] = s;
                s += 1;
            }
            Relation::Ge => {
                tab.t[i * width + s] = -1.0;
                s += 1;
                tab.t[i * width + a] = 1.0;
                identity_col[i] = a;
                a += 1;
            }
            Relation::Eq => {
                tab.t[i * width + a] = 1.0;
                identity_col[i] = a;
                a += 1;
            }
        }
        tab.basis[i] = identity_col[i];
    }
    let is_art = |j: usize| j >= n + n_slack && j < width - 1;
    let budget = opts.max_iterations.unwrap_or(200 * (m + width) + 1000);

    // phase one: maximize -Σ artificials
    let mut iterations = 0;
    if n_art > 0 {
        let cost: Vec<f64> = (0..width - 1).map(|j| if is_art(j) { -1.0 } else { 0.0 }).collect();
        tab.set_objective(&cost);
        let none = vec![false; width - 1];
        match tab.run(&none, opts, budget)? {
            PhaseEnd::Optimal(k) => iterations += k,
            PhaseEnd::Unbounded => return Err(Error::NumericalFailure("phase one unbounded".into())),
        }
        let bmax = (0..m).map(|i| tab.rhs(i).abs()).fold(0.0, f64::max);
        if tab.obj[width - 1] < -opts.feas_tol * (1.0 + bmax) {
            return Ok(LpOutcome::Infeasible);
        }
        // drive remaining artificials out of the basis
        for i in 0..m {
            if is_art(tab.basis[i]) {
                if let Some(j) = (0..n + n_slack).find(|&j| tab.at(i, j).abs() > opts.pivot_tol) {
                    tab.pivot(i, j);
                    iterations += 1;
                }
            }
        }
    }

    // phase two
    let mut cost = vec![0.0; width - 1];
    cost[..n].copy_from_slice(&lp.objective);
    tab.set_objective(&cost);
    let barred: Vec<bool> = (0..width - 1).map(is_art).collect();
    match tab.run(&barred, opts, budget)? {
        PhaseEnd::Optimal(k) => iterations += k,
        PhaseEnd::Unbounded => return Ok(LpOutcome::Unbounded),
    }

    let mut x = vec![0.0; n];
    for i in 0..m {
        if tab.basis[i] < n {
            x[tab.basis[i]] = tab.rhs(i).max(0.0);
        }
    }
    let duals = (0..m).map(|i| sign[i] * tab.obj[identity_col[i]]).collect();
    let objective = x.iter().zip(&lp.objective).map(|(a, b)| a * b).sum();
    Ok(LpOutcome::Optimal(LpSolution { x, objective, duals, basis: tab.basis, iterations }))
}
