//! Dense two-phase primal simplex for the small linear programs of the
//! model search (tens of variables and rows).
//!
//! Pivoting uses Dantzig's rule and falls back to Bland's rule after a run of
//! degenerate pivots, so the method terminates on every input.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpError {
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Var(usize);

impl Var {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<(usize, f64)>,
    rel: Relation,
    rhs: f64,
}

/// `minimize c·x` subject to linear rows; variables are `≥ 0` unless free.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    objective: Vec<f64>,
    free: Vec<bool>,
    rows: Vec<Row>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub values: Vec<f64>,
    pub objective: f64,
    pub pivots: usize,
}

impl LpSolution {
    pub fn value(&self, v: Var) -> f64 {
        self.values[v.0]
    }
}

const PIVOT_EPS: f64 = 1e-11;
const COST_EPS: f64 = 1e-12;
const FEAS_EPS: f64 = 1e-9;
const MAX_PIVOTS: usize = 20_000;
const DEGENERATE_RUN: usize = 30;

impl LinearProgram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a variable with bound `x ≥ 0`.
    pub fn add_var(&mut self, cost: f64) -> Var {
        self.objective.push(cost);
        self.free.push(false);
        Var(self.objective.len() - 1)
    }

    /// Adds an unbounded variable.
    pub fn add_free_var(&mut self, cost: f64) -> Var {
        let v = self.add_var(cost);
        self.free[v.0] = true;
        v
    }

    pub fn add_constraint(&mut self, coeffs: &[(Var, f64)], rel: Relation, rhs: f64) {
        let coeffs = coeffs
            .iter()
            .filter(|(_, c)| *c != 0.0)
            .map(|(v, c)| (v.0, *c))
            .collect();
        self.rows.push(Row { coeffs, rel, rhs });
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.rows.len()
    }

    pub fn solve(&self) -> Result<LpSolution, LpError> {
        Tableau::build(self).solve(self)
    }
}

struct Tableau {
    m: usize,
    /// structural columns (free variables split in two) + slacks + artificials
    ncols: usize,
    width: usize,
    data: Vec<f64>,
    basis: Vec<usize>,
    /// column index of the positive part of each original variable
    var_col: Vec<usize>,
    /// column of the negative part for free variables
    neg_col: Vec<Option<usize>>,
    first_artificial: usize,
    cost: Vec<f64>,
    active: Vec<bool>,
    pivots: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let mut var_col = Vec::with_capacity(lp.num_vars());
        let mut neg_col = Vec::with_capacity(lp.num_vars());
        let mut n = 0;
        for &free in &lp.free {
            var_col.push(n);
            n += 1;
            if free {
                neg_col.push(Some(n));
                n += 1;
            } else {
                neg_col.push(None);
            }
        }
        let n_struct = n;
        let n_slack = lp.rows.iter().filter(|r| r.rel != Relation::Eq).count();
        // Every row gets an artificial unless its slack can start in the basis.
        let needs_art: Vec<bool> = lp
            .rows
            .iter()
            .map(|r| {
                let flip = r.rhs < 0.0;
                let rel = match (r.rel, flip) {
                    (Relation::Le, true) => Relation::Ge,
                    (Relation::Ge, true) => Relation::Le,
                    (rel, _) => rel,
                };
                rel != Relation::Le
            })
            .collect();
        let n_art = needs_art.iter().filter(|&&b| b).count();
        let first_artificial = n_struct + n_slack;
        let ncols = first_artificial + n_art;
        let m = lp.rows.len();
        let width = ncols + 1;
        let mut data = vec![0.0; m * width];
        let mut basis = vec![0; m];
        let mut slack = n_struct;
        let mut art = first_artificial;
        for (i, row) in lp.rows.iter().enumerate() {
            let sign = if row.rhs < 0.0 { -1.0 } else { 1.0 };
            let r = &mut data[i * width..(i + 1) * width];
            for &(v, c) in &row.coeffs {
                r[var_col[v]] += sign * c;
                if let Some(nc) = neg_col[v] {
                    r[nc] -= sign * c;
                }
            }
            r[ncols] = sign * row.rhs;
            match row.rel {
                Relation::Eq => {}
                Relation::Le => {
                    r[slack] = sign;
                    if !needs_art[i] {
                        basis[i] = slack;
                    }
                    slack += 1;
                }
                Relation::Ge => {
                    r[slack] = -sign;
                    if !needs_art[i] {
                        basis[i] = slack;
                    }
                    slack += 1;
                }
            }
            if needs_art[i] {
                r[art] = 1.0;
                basis[i] = art;
                art += 1;
            }
        }
        let mut cost = vec![0.0; ncols];
        for (v, &c) in lp.objective.iter().enumerate() {
            cost[var_col[v]] = c;
            if let Some(nc) = neg_col[v] {
                cost[nc] = -c;
            }
        }
        Tableau {
            m,
            ncols,
            width,
            data,
            basis,
            var_col,
            neg_col,
            first_artificial,
            cost,
            active: vec![true; ncols],
            pivots: 0,
        }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.width + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.ncols)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let w = self.width;
        let p = self.data[row * w + col];
        for v in &mut self.data[row * w..(row + 1) * w] {
            *v /= p;
        }
        let (before, rest) = self.data.split_at_mut(row * w);
        let (prow, after) = rest.split_at_mut(w);
        for other in before.chunks_exact_mut(w).chain(after.chunks_exact_mut(w)) {
            let f = other[col];
            if f != 0.0 {
                for (o, &pv) in other.iter_mut().zip(prow.iter()) {
                    *o -= f * pv;
                }
                other[col] = 0.0;
            }
        }
        self.basis[row] = col;
        self.pivots += 1;
    }

    /// Runs the simplex loop for cost vector `c` over active columns.
    fn optimize(&mut self, c: &[f64]) -> Result<(), LpError> {
        let mut degenerate = 0usize;
        loop {
            if self.pivots > MAX_PIVOTS {
                return Err(LpError::IterationLimit);
            }
            let bland = degenerate >= DEGENERATE_RUN;
            // reduced costs r_j = c_j − c_B · column_j
            let mut entering = None;
            let mut best = -COST_EPS;
            for j in 0..self.ncols {
                if !self.active[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut rc = c[j];
                for i in 0..self.m {
                    let a = self.at(i, j);
                    if a != 0.0 {
                        rc -= c[self.basis[i]] * a;
                    }
                }
                if rc < best {
                    entering = Some(j);
                    if bland {
                        break;
                    }
                    best = rc;
                }
            }
            let Some(col) = entering else { return Ok(()) };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.m {
                let a = self.at(i, col);
                if a > PIVOT_EPS {
                    let ratio = self.rhs(i).max(0.0) / a;
                    match leave {
                        None => leave = Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr - 1e-14
                                || (ratio <= lr + 1e-14 && self.basis[i] < self.basis[li])
                            {
                                leave = Some((i, ratio));
                            }
                        }
                    }
                }
            }
            let Some((row, ratio)) = leave else { return Err(LpError::Unbounded) };
            if ratio <= 1e-14 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(row, col);
        }
    }

    fn solve(mut self, lp: &LinearProgram) -> Result<LpSolution, LpError> {
        if self.first_artificial < self.ncols {
            let mut phase1 = vec![0.0; self.ncols];
            for c in phase1.iter_mut().skip(self.first_artificial) {
                *c = 1.0;
            }
            self.optimize(&phase1)?;
            let infeas: f64 = (0..self.m)
                .filter(|&i| self.basis[i] >= self.first_artificial)
                .map(|i| self.rhs(i))
                .sum();
            if infeas > FEAS_EPS {
                return Err(LpError::Infeasible);
            }
            // Drive remaining artificials out of the basis; zero rows are redundant.
            for i in 0..self.m {
                if self.basis[i] < self.first_artificial {
                    continue;
                }
                let col = (0..self.first_artificial)
                    .filter(|j| !self.basis.contains(j))
                    .max_by(|&a, &b| self.at(i, a).abs().total_cmp(&self.at(i, b).abs()));
                if let Some(j) = col.filter(|&j| self.at(i, j).abs() > 1e-9) {
                    self.pivot(i, j);
                }
            }
            for j in self.first_artificial..self.ncols {
                self.active[j] = false;
            }
            // Rows still held by an artificial are linear combinations of others.
            let keep: Vec<usize> =
                (0..self.m).filter(|&i| self.basis[i] < self.first_artificial).collect();
            if keep.len() < self.m {
                let w = self.width;
                let mut data = Vec::with_capacity(keep.len() * w);
                for &i in &keep {
                    data.extend_from_slice(&self.data[i * w..(i + 1) * w]);
                }
                self.basis = keep.iter().map(|&i| self.basis[i]).collect();
                self.data = data;
                self.m = keep.len();
            }
        }
        let cost = self.cost.clone();
        self.optimize(&cost)?;

        let mut col_val = vec![0.0; self.ncols];
        for i in 0..self.m {
            col_val[self.basis[i]] = self.rhs(i);
        }
        let values: Vec<f64> = (0..lp.num_vars())
            .map(|v| {
                let pos = col_val[self.var_col[v]];
                match self.neg_col[v] {
                    Some(nc) => pos - col_val[nc],
                    None => pos,
                }
            })
            .collect();
        let objective = values.iter().zip(&lp.objective).map(|(x, c)| x * c).sum();
        Ok(LpSolution { values, objective, pivots: self.pivots })
    }
}
