//! Dense bounded-variable primal simplex.
//!
//! Every variable is mapped to one or two nonnegative columns with an
//! optional finite upper bound, rows get slack columns and (where no slack can
//! start the basis) artificial columns. Phase one minimizes the sum of
//! artificials, phase two the real objective. Nonbasic columns sit at either
//! bound, so box constraints never become rows.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;
const FEAS_TOL: f64 = 1e-8;
const ROW_TOL: f64 = 1e-8;
/// Dantzig pricing is replaced by Bland's rule after this many pivots.
const BLAND_AFTER: usize = 1000;
const REINVERT_EVERY: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

/// `optimize c.x subject to rows and lo <= x <= hi`. Bounds default to
/// `[0, inf)`; infinite bounds are allowed on either side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearProgram {
    sense: Sense,
    objective: Vec<f64>,
    constraints: Vec<Constraint>,
    bounds: Vec<(f64, f64)>,
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: Vec<f64>) -> Self {
        let bounds = vec![(0.0, f64::INFINITY); objective.len()];
        Self {
            sense,
            objective,
            constraints: Vec::new(),
            bounds,
        }
    }

    pub fn add_constraint(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) -> Result<()> {
        if coeffs.len() != self.objective.len() {
            return Err(Error::InvalidLp(format!(
                "row has {} coefficients, objective has {}",
                coeffs.len(),
                self.objective.len()
            )));
        }
        if !rhs.is_finite() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidLp("non-finite row entry".into()));
        }
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        Ok(())
    }

    pub fn set_bounds(&mut self, var: usize, lo: f64, hi: f64) -> Result<()> {
        if var >= self.bounds.len() {
            return Err(Error::InvalidLp(format!("no variable {var}")));
        }
        if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(Error::InvalidLp(format!("bad bounds [{lo}, {hi}] on x{var}")));
        }
        self.bounds[var] = (lo, hi);
        Ok(())
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    fn validate(&self) -> Result<()> {
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidLp("non-finite objective coefficient".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Variable assignment; meaningful only when optimal.
    pub values: Vec<f64>,
    pub objective_value: f64,
    /// Pivots plus bound flips over both phases.
    pub iterations: usize,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

#[derive(Debug, Clone, Copy)]
enum VarMap {
    /// `x = lo + y`
    Shift { col: usize, lo: f64 },
    /// `x = hi - y`
    Negate { col: usize, hi: f64 },
    /// `x = y+ - y-`
    Split { pos: usize, neg: usize },
}

enum Outcome {
    Optimal,
    Unbounded,
}

struct Tableau {
    m: usize,
    ncols: usize,
    /// Standard-form matrix, row-major `m x ncols`.
    a: Vec<f64>,
    b: Vec<f64>,
    ub: Vec<f64>,
    cost: Vec<f64>,
    /// Current `B^-1 A`.
    t: Vec<f64>,
    beta: Vec<f64>,
    d: Vec<f64>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    at_upper: Vec<bool>,
    eligible: Vec<bool>,
    iterations: usize,
    cap: usize,
}

impl Tableau {
    fn value_of_nonbasic(&self, j: usize) -> f64 {
        if self.at_upper[j] {
            self.ub[j]
        } else {
            0.0
        }
    }

    /// Recomputes `B^-1 A`, basic values and reduced costs from scratch.
    fn reinvert(&mut self) -> Result<()> {
        let m = self.m;
        let n = self.ncols;
        // Gauss-Jordan on [B | A | rhs].
        let w = n + 1;
        let mut aug = vec![0.0; m * w];
        for i in 0..m {
            let mut rhs = self.b[i];
            for j in 0..n {
                let v = self.a[i * n + j];
                aug[i * w + j] = v;
                if !self.is_basic[j] && self.at_upper[j] {
                    rhs -= v * self.ub[j];
                }
            }
            aug[i * w + n] = rhs;
        }
        for (r, &col) in self.basis.iter().enumerate() {
            // The row holding column `col` is chosen by partial pivoting among
            // rows not yet used; we then swap it into position r.
            let mut best = r;
            let mut best_val = aug[r * w + col].abs();
            for i in r + 1..m {
                let v = aug[i * w + col].abs();
                if v > best_val {
                    best = i;
                    best_val = v;
                }
            }
            if best_val < 1e-12 {
                return Err(Error::NumericalStall {
                    iterations: self.iterations,
                });
            }
            if best != r {
                for k in 0..w {
                    aug.swap(r * w + k, best * w + k);
                }
            }
            let piv = aug[r * w + col];
            for k in 0..w {
                aug[r * w + k] /= piv;
            }
            for i in 0..m {
                if i == r {
                    continue;
                }
                let f = aug[i * w + col];
                if f != 0.0 {
                    for k in 0..w {
                        aug[i * w + k] -= f * aug[r * w + k];
                    }
                }
            }
        }
        for i in 0..m {
            self.t[i * n..(i + 1) * n].copy_from_slice(&aug[i * w..i * w + n]);
            self.beta[i] = aug[i * w + n];
        }
        self.recompute_reduced_costs();
        Ok(())
    }

    fn recompute_reduced_costs(&mut self) {
        let n = self.ncols;
        for j in 0..n {
            let mut dj = self.cost[j];
            for i in 0..self.m {
                dj -= self.cost[self.basis[i]] * self.t[i * n + j];
            }
            self.d[j] = dj;
        }
        for &bj in &self.basis {
            self.d[bj] = 0.0;
        }
    }

    fn objective(&self) -> f64 {
        let mut z = 0.0;
        for (i, &bj) in self.basis.iter().enumerate() {
            z += self.cost[bj] * self.beta[i];
        }
        for j in 0..self.ncols {
            if !self.is_basic[j] {
                z += self.cost[j] * self.value_of_nonbasic(j);
            }
        }
        z
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let n = self.ncols;
        let piv = self.t[r * n + j];
        for k in 0..n {
            self.t[r * n + k] /= piv;
        }
        for i in 0..self.m {
            if i == r {
                continue;
            }
            let f = self.t[i * n + j];
            if f != 0.0 {
                for k in 0..n {
                    self.t[i * n + k] -= f * self.t[r * n + k];
                }
            }
        }
        let dj = self.d[j];
        if dj != 0.0 {
            for k in 0..n {
                self.d[k] -= dj * self.t[r * n + k];
            }
        }
        let leaving = self.basis[r];
        self.is_basic[leaving] = false;
        self.is_basic[j] = true;
        self.basis[r] = j;
        self.d[j] = 0.0;
    }

    fn choose_entering(&self) -> Option<(usize, f64)> {
        let bland = self.iterations >= BLAND_AFTER;
        let mut best: Option<(usize, f64, f64)> = None;
        for j in 0..self.ncols {
            if self.is_basic[j] || !self.eligible[j] || self.ub[j] <= 0.0 {
                continue;
            }
            let dj = self.d[j];
            let dir = if !self.at_upper[j] && dj < -COST_TOL {
                1.0
            } else if self.at_upper[j] && dj > COST_TOL {
                -1.0
            } else {
                continue;
            };
            if bland {
                return Some((j, dir));
            }
            let score = dj.abs();
            if best.is_none_or(|(_, _, s)| score > s) {
                best = Some((j, dir, score));
            }
        }
        best.map(|(j, dir, _)| (j, dir))
    }

    fn run(&mut self) -> Result<Outcome> {
        let n = self.ncols;
        let mut since_reinvert = 0;
        loop {
            if self.iterations >= self.cap {
                return Err(Error::NumericalStall {
                    iterations: self.iterations,
                });
            }
            if since_reinvert >= REINVERT_EVERY {
                self.reinvert()?;
                since_reinvert = 0;
            }
            let Some((j, dir)) = self.choose_entering() else {
                return Ok(Outcome::Optimal);
            };
            let bland = self.iterations >= BLAND_AFTER;

            let mut step = self.ub[j];
            let mut leave: Option<(usize, bool, f64)> = None;
            for i in 0..self.m {
                let alpha = dir * self.t[i * n + j];
                let (lim, to_upper) = if alpha > PIVOT_TOL {
                    (self.beta[i].max(0.0) / alpha, false)
                } else if alpha < -PIVOT_TOL && self.ub[self.basis[i]].is_finite() {
                    let u = self.ub[self.basis[i]];
                    ((u - self.beta[i]).max(0.0) / -alpha, true)
                } else {
                    continue;
                };
                let better = match leave {
                    _ if lim < step - 1e-12 => true,
                    Some((r, _, a)) if lim <= step + 1e-12 => {
                        if bland {
                            self.basis[i] < self.basis[r]
                        } else {
                            alpha.abs() > a
                        }
                    }
                    _ => false,
                };
                if better {
                    step = step.min(lim);
                    leave = Some((i, to_upper, alpha.abs()));
                }
            }
            if step.is_infinite() {
                return Ok(Outcome::Unbounded);
            }
            self.iterations += 1;
            since_reinvert += 1;
            for i in 0..self.m {
                self.beta[i] -= dir * step * self.t[i * n + j];
            }
            match leave {
                None => {
                    self.at_upper[j] = !self.at_upper[j];
                }
                Some((r, to_upper, _)) => {
                    let entering_value = if self.at_upper[j] {
                        self.ub[j] - step
                    } else {
                        step
                    };
                    let leaving = self.basis[r];
                    self.pivot(r, j);
                    self.beta[r] = entering_value;
                    self.at_upper[leaving] = to_upper;
                    self.at_upper[j] = false;
                }
            }
        }
    }
}

/// Solves `lp` to optimality or reports infeasibility/unboundedness.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution> {
    lp.validate()?;
    let nv = lp.num_vars();
    // Structural columns.
    let mut maps = Vec::with_capacity(nv);
    let mut ub = Vec::new();
    for &(lo, hi) in &lp.bounds {
        if lo.is_finite() {
            maps.push(VarMap::Shift { col: ub.len(), lo });
            ub.push(hi - lo);
        } else if hi.is_finite() {
            maps.push(VarMap::Negate { col: ub.len(), hi });
            ub.push(f64::INFINITY);
        } else {
            maps.push(VarMap::Split {
                pos: ub.len(),
                neg: ub.len() + 1,
            });
            ub.push(f64::INFINITY);
            ub.push(f64::INFINITY);
        }
    }
    let ns = ub.len();
    let m = lp.num_constraints();

    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for c in &lp.constraints {
        let mut row = vec![0.0; ns];
        let mut r = c.rhs;
        for (v, &a) in c.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            match maps[v] {
                VarMap::Shift { col, lo } => {
                    row[col] += a;
                    r -= a * lo;
                }
                VarMap::Negate { col, hi } => {
                    row[col] -= a;
                    r -= a * hi;
                }
                VarMap::Split { pos, neg } => {
                    row[pos] += a;
                    row[neg] -= a;
                }
            }
        }
        rows.push(row);
        rhs.push(r);
    }

    let mut cost_struct = vec![0.0; ns];
    let sign = match lp.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    for (v, &c) in lp.objective.iter().enumerate() {
        let c = sign * c;
        match maps[v] {
            VarMap::Shift { col, .. } => cost_struct[col] += c,
            VarMap::Negate { col, .. } => cost_struct[col] -= c,
            VarMap::Split { pos, neg } => {
                cost_struct[pos] += c;
                cost_struct[neg] -= c;
            }
        }
    }

    // Slack coefficients per row, then sign-normalize rows to rhs >= 0.
    let slack: Vec<f64> = lp
        .constraints
        .iter()
        .map(|c| match c.relation {
            Relation::Le => 1.0,
            Relation::Ge => -1.0,
            Relation::Eq => 0.0,
        })
        .collect();
    let n_slack = slack.iter().filter(|&&s| s != 0.0).count();
    let mut row_sign = vec![1.0; m];
    for i in 0..m {
        if rhs[i] < 0.0 {
            row_sign[i] = -1.0;
        }
    }
    let needs_art: Vec<bool> = (0..m).map(|i| slack[i] * row_sign[i] <= 0.0).collect();
    let n_art = needs_art.iter().filter(|&&x| x).count();
    let ncols = ns + n_slack + n_art;

    let mut a = vec![0.0; m * ncols];
    let mut b = vec![0.0; m];
    let mut basis = vec![0; m];
    let mut art_cols = Vec::new();
    let mut next_slack = ns;
    let mut next_art = ns + n_slack;
    for i in 0..m {
        let s = row_sign[i];
        for j in 0..ns {
            a[i * ncols + j] = s * rows[i][j];
        }
        b[i] = s * rhs[i];
        if slack[i] != 0.0 {
            a[i * ncols + next_slack] = s * slack[i];
            if !needs_art[i] {
                basis[i] = next_slack;
            }
            next_slack += 1;
        }
        if needs_art[i] {
            a[i * ncols + next_art] = 1.0;
            basis[i] = next_art;
            art_cols.push(next_art);
            next_art += 1;
        }
    }
    ub.resize(ncols, f64::INFINITY);

    let mut is_basic = vec![false; ncols];
    for &bj in &basis {
        is_basic[bj] = true;
    }
    let mut phase1_cost = vec![0.0; ncols];
    for &c in &art_cols {
        phase1_cost[c] = 1.0;
    }
    let mut tab = Tableau {
        m,
        ncols,
        a,
        b,
        ub,
        cost: phase1_cost,
        t: vec![0.0; m * ncols],
        beta: vec![0.0; m],
        d: vec![0.0; ncols],
        basis,
        is_basic,
        at_upper: vec![false; ncols],
        eligible: vec![true; ncols],
        iterations: 0,
        cap: 50 * (m + ncols),
    };
    tab.reinvert()?;

    if !art_cols.is_empty() {
        tab.run()?;
        let infeas: f64 = tab.objective();
        let scale = 1.0 + tab.b.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if infeas > FEAS_TOL * scale {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                values: vec![0.0; nv],
                objective_value: f64::NAN,
                iterations: tab.iterations,
            });
        }
        let mut is_art = vec![false; ncols];
        for &c in &art_cols {
            is_art[c] = true;
        }
        // Drive zero-valued artificials out of the basis where possible;
        // rows where this fails are redundant and keep their artificial at 0.
        for r in 0..m {
            if !is_art[tab.basis[r]] {
                continue;
            }
            let mut best: Option<(usize, f64)> = None;
            for j in 0..ncols {
                if tab.is_basic[j] || is_art[j] {
                    continue;
                }
                let v = tab.t[r * ncols + j].abs();
                if v > 1e-7 && best.is_none_or(|(_, bv)| v > bv) {
                    best = Some((j, v));
                }
            }
            if let Some((j, _)) = best {
                let val = tab.value_of_nonbasic(j);
                let leaving = tab.basis[r];
                tab.pivot(r, j);
                tab.beta[r] = val;
                tab.at_upper[leaving] = false;
                tab.at_upper[j] = false;
            }
        }
        for &c in &art_cols {
            tab.ub[c] = 0.0;
            tab.eligible[c] = false;
            tab.at_upper[c] = false;
        }
    }

    let mut cost = cost_struct;
    cost.resize(ncols, 0.0);
    tab.cost = cost;
    tab.reinvert()?;
    let outcome = tab.run()?;
    if let Outcome::Unbounded = outcome {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            values: vec![0.0; nv],
            objective_value: match lp.sense {
                Sense::Minimize => f64::NEG_INFINITY,
                Sense::Maximize => f64::INFINITY,
            },
            iterations: tab.iterations,
        });
    }
    tab.reinvert()?;

    let mut col_val = vec![0.0; ncols];
    for j in 0..ncols {
        if !tab.is_basic[j] {
            col_val[j] = tab.value_of_nonbasic(j);
        }
    }
    for (i, &bj) in tab.basis.iter().enumerate() {
        col_val[bj] = tab.beta[i].clamp(0.0, tab.ub[bj]);
    }
    let values: Vec<f64> = maps
        .iter()
        .zip(&lp.bounds)
        .map(|(map, &(lo, hi))| {
            let x = match *map {
                VarMap::Shift { col, lo } => lo + col_val[col],
                VarMap::Negate { col, hi } => hi - col_val[col],
                VarMap::Split { pos, neg } => col_val[pos] - col_val[neg],
            };
            x.clamp(lo, hi)
        })
        .collect();

    let mut worst: f64 = 0.0;
    for c in &lp.constraints {
        let lhs: f64 = c.coeffs.iter().zip(&values).map(|(a, x)| a * x).sum();
        let viol = match c.relation {
            Relation::Le => lhs - c.rhs,
            Relation::Ge => c.rhs - lhs,
            Relation::Eq => (lhs - c.rhs).abs(),
        };
        worst = worst.max(viol);
    }
    if worst > ROW_TOL {
        return Err(Error::NumericalInaccuracy { residual: worst });
    }
    let objective_value = lp.objective.iter().zip(&values).map(|(c, x)| c * x).sum();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        values,
        objective_value,
        iterations: tab.iterations,
    })
}
