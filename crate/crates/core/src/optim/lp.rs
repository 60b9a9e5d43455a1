//! Dense two-phase simplex with Bland's anti-cycling rule.
//!
//! Problems here are small (tens of variables and rows), so the tableau is a
//! plain `Vec<Vec<f64>>` and every pivot touches every entry.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-11;
const COST_EPS: f64 = 1e-11;
const FEAS_EPS: f64 = 1e-9;

/// maximize `objective · x` subject to `row · x <= rhs` for every constraint
/// and `lo <= x_j <= hi` for every variable (infinite bounds allowed).
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub constraints: Vec<(Vec<f64>, f64)>,
    pub bounds: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal point; meaningful only when `status == Optimal`.
    pub x: Vec<f64>,
    pub objective: f64,
    /// One multiplier per user constraint (≥ 0). Multipliers of finite
    /// variable bounds are not reported.
    pub duals: Vec<f64>,
}

impl LinearProgram {
    /// All variables free, no constraints yet.
    pub fn new(objective: Vec<f64>) -> Self {
        let n = objective.len();
        Self {
            objective,
            constraints: Vec::new(),
            bounds: vec![(f64::NEG_INFINITY, f64::INFINITY); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn constraint(&mut self, row: Vec<f64>, rhs: f64) -> &mut Self {
        assert_eq!(row.len(), self.num_vars(), "constraint row length");
        self.constraints.push((row, rhs));
        self
    }

    pub fn bound(&mut self, var: usize, lo: f64, hi: f64) -> &mut Self {
        self.bounds[var] = (lo, hi);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.constraints.is_empty() {
            return Err(Error::BadParameter("linear program has no constraints".into()));
        }
        let finite = self.objective.iter().all(|c| c.is_finite())
            && self
                .constraints
                .iter()
                .all(|(r, b)| b.is_finite() && r.iter().all(|a| a.is_finite()));
        if !finite {
            return Err(Error::BadParameter("non-finite LP coefficient".into()));
        }
        if self.bounds.iter().any(|(lo, hi)| lo > hi || lo.is_nan() || hi.is_nan()) {
            return Err(Error::BadParameter("empty or NaN variable bound".into()));
        }
        Ok(())
    }
}

/// How an original variable is expressed through nonnegative columns:
/// `x = offset + sign * y[col]` (bounded below/above) or `x = y[col] - y[col+1]`.
#[derive(Debug, Clone, Copy)]
enum VarMap {
    Shifted { offset: f64, sign: f64, col: usize },
    Split { col: usize },
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    obj: Vec<f64>,
    basis: Vec<usize>,
    ncols: usize,
    first_artificial: usize,
    pivots: usize,
    max_pivots: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let p = self.rows[r][e];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[e];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
                row[e] = 0.0;
            }
        }
        let f = self.obj[e];
        if f != 0.0 {
            for (v, pv) in self.obj.iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
            self.obj[e] = 0.0;
        }
        self.basis[r] = e;
        self.pivots += 1;
    }

    /// Runs simplex iterations on the current objective row. Columns at or
    /// beyond `col_limit` never enter. Returns false on unboundedness.
    fn optimize(&mut self, col_limit: usize) -> Result<bool> {
        loop {
            if self.pivots > self.max_pivots {
                return Err(Error::NumericalFailure("simplex iteration cap reached".into()));
            }
            // Bland: lowest-index improving column.
            let Some(e) = (0..col_limit).find(|&j| self.obj[j] < -COST_EPS) else {
                return Ok(true);
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][e];
                if a > PIVOT_EPS {
                    let ratio = self.rhs(i) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br - 1e-12
                                || (ratio <= br + 1e-12 && self.basis[i] < self.basis[bi])
                            {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, e),
                None => return Ok(false),
            }
        }
    }
}

/// Solves `lp`. Infeasible and unbounded problems are reported through
/// [`LpStatus`]; only the iteration cap produces an error.
pub fn lp_solve(lp: &LinearProgram) -> Result<LpSolution> {
    lp.validate()?;
    let n = lp.num_vars();

    // Standard form: nonnegative columns y, rows A'y <= b'.
    let mut maps = Vec::with_capacity(n);
    let mut ny = 0;
    let mut bound_rows: Vec<(usize, f64)> = Vec::new();
    for &(lo, hi) in &lp.bounds {
        if lo.is_finite() {
            maps.push(VarMap::Shifted { offset: lo, sign: 1.0, col: ny });
            if hi.is_finite() {
                bound_rows.push((ny, hi - lo));
            }
            ny += 1;
        } else if hi.is_finite() {
            maps.push(VarMap::Shifted { offset: hi, sign: -1.0, col: ny });
            ny += 1;
        } else {
            maps.push(VarMap::Split { col: ny });
            ny += 2;
        }
    }

    let transform_row = |row: &[f64]| -> (Vec<f64>, f64) {
        let mut out = vec![0.0; ny];
        let mut shift = 0.0;
        for (j, &a) in row.iter().enumerate() {
            match maps[j] {
                VarMap::Shifted { offset, sign, col } => {
                    out[col] += sign * a;
                    shift += a * offset;
                }
                VarMap::Split { col } => {
                    out[col] += a;
                    out[col + 1] -= a;
                }
            }
        }
        (out, shift)
    };

    let mut std_rows: Vec<(Vec<f64>, f64)> = lp
        .constraints
        .iter()
        .map(|(row, rhs)| {
            let (r, shift) = transform_row(row);
            (r, rhs - shift)
        })
        .collect();
    for &(col, width) in &bound_rows {
        let mut r = vec![0.0; ny];
        r[col] = 1.0;
        std_rows.push((r, width));
    }
    let (cost, _) = transform_row(&lp.objective);

    let m = std_rows.len();
    let negated: Vec<bool> = std_rows.iter().map(|(_, b)| *b < 0.0).collect();
    let na = negated.iter().filter(|&&x| x).count();
    let slack0 = ny;
    let art0 = ny + m;
    let ncols = ny + m + na;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_art = art0;
    for (i, (r, b)) in std_rows.iter().enumerate() {
        let mut t = vec![0.0; ncols + 1];
        let s = if negated[i] { -1.0 } else { 1.0 };
        for (j, a) in r.iter().enumerate() {
            t[j] = s * a;
        }
        t[slack0 + i] = s;
        t[ncols] = s * b;
        if negated[i] {
            t[next_art] = 1.0;
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(slack0 + i);
        }
        rows.push(t);
    }

    let mut tab = Tableau {
        rows,
        obj: vec![0.0; ncols + 1],
        basis,
        ncols,
        first_artificial: art0,
        pivots: 0,
        max_pivots: 10_000 * (n + lp.constraints.len()),
    };

    // Phase 1: maximize -(sum of artificials).
    if na > 0 {
        for j in art0..ncols {
            tab.obj[j] = 1.0;
        }
        for i in 0..m {
            if tab.basis[i] >= art0 {
                for j in 0..=ncols {
                    tab.obj[j] -= tab.rows[i][j];
                }
            }
        }
        tab.optimize(ncols)?;
        let infeasibility = -tab.obj[ncols];
        let scale = 1.0 + std_rows.iter().map(|(_, b)| b.abs()).fold(0.0, f64::max);
        if infeasibility > FEAS_EPS * scale {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                x: vec![f64::NAN; n],
                objective: f64::NAN,
                duals: vec![f64::NAN; lp.constraints.len()],
            });
        }
        // Drive zero-level artificials out of the basis where possible.
        for r in 0..m {
            if tab.basis[r] >= tab.first_artificial {
                if let Some(e) = (0..art0).find(|&j| tab.rows[r][j].abs() > 1e-9) {
                    tab.pivot(r, e);
                }
            }
        }
    }

    // Phase 2 objective row: z_j - c_j.
    let full_cost = |j: usize| if j < ny { cost[j] } else { 0.0 };
    tab.obj = vec![0.0; ncols + 1];
    for j in 0..ncols {
        tab.obj[j] = -full_cost(j);
    }
    for i in 0..m {
        let cb = full_cost(tab.basis[i]);
        if cb != 0.0 {
            for j in 0..=ncols {
                tab.obj[j] += cb * tab.rows[i][j];
            }
        }
    }
    let bounded = tab.optimize(art0)?;
    if !bounded {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            x: vec![f64::NAN; n],
            objective: f64::INFINITY,
            duals: vec![f64::NAN; lp.constraints.len()],
        });
    }

    let mut y = vec![0.0; ny];
    for i in 0..m {
        if tab.basis[i] < ny {
            y[tab.basis[i]] = tab.rhs(i).max(0.0);
        }
    }
    let x: Vec<f64> = maps
        .iter()
        .map(|&mp| match mp {
            VarMap::Shifted { offset, sign, col } => offset + sign * y[col],
            VarMap::Split { col } => y[col] - y[col + 1],
        })
        .collect();
    let objective = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    let duals = (0..lp.constraints.len())
        .map(|i| tab.obj[slack0 + i].max(0.0))
        .collect();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        x,
        objective,
        duals,
    })
}

/// Finds convex weights λ over `points` minimizing the max-norm residual
/// ‖Σ λ_i p_i − target‖_∞. Returns `(λ, residual)`. A vertex solution is
/// returned, so at most `dim + 1` weights are nonzero (Carathéodory).
pub fn convex_combination(points: &[Vec<f64>], target: &[f64]) -> Result<(Vec<f64>, f64)> {
    let k = points.len();
    if k == 0 {
        return Err(Error::BadParameter("empty point set".into()));
    }
    let d = target.len();
    // variables: λ_0..λ_{k-1}, s
    let mut lp = LinearProgram::new({
        let mut c = vec![0.0; k + 1];
        c[k] = -1.0;
        c
    });
    for i in 0..k {
        lp.bound(i, 0.0, f64::INFINITY);
    }
    lp.bound(k, 0.0, f64::INFINITY);
    for axis in 0..d {
        let mut up = vec![0.0; k + 1];
        let mut down = vec![0.0; k + 1];
        for (i, p) in points.iter().enumerate() {
            up[i] = p[axis];
            down[i] = -p[axis];
        }
        up[k] = -1.0;
        down[k] = -1.0;
        lp.constraint(up, target[axis]);
        lp.constraint(down, -target[axis]);
    }
    let mut sum = vec![1.0; k + 1];
    sum[k] = 0.0;
    lp.constraint(sum.clone(), 1.0);
    lp.constraint(sum.iter().map(|v| -v).collect(), -1.0);
    let sol = lp_solve(&lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::NumericalFailure("convex combination LP not optimal".into()));
    }
    let lambda: Vec<f64> = sol.x[..k].iter().map(|v| v.max(0.0)).collect();
    // Recompute the residual directly rather than trusting the LP value.
    let residual = (0..d)
        .map(|axis| {
            let s: f64 = points.iter().zip(&lambda).map(|(p, l)| p[axis] * l).sum();
            (s - target[axis]).abs()
        })
        .fold(0.0, f64::max);
    Ok((lambda, residual))
}
