//! Dense two-phase simplex method; Dantzig pricing with a Bland fallback.
//!
//! Problems are stated as
//!
//! ```text
//! minimize    cᵀx
//! subject to  A x = b
//!             x_j ≥ l_j   (or x_j free when no bound is given)
//! ```
//!
//! Bounded variables are shifted to `x_j − l_j ≥ 0`, free variables are split
//! into a difference of two nonnegative parts. The solver keeps the full
//! tableau including the phase-one artificial columns, so the inverse basis
//! (and hence the dual solution) can be read off at the end.

use super::Matrix;
use crate::config::{PIVOT_EPS, TOL};
use crate::error::{Error, Result};

/// Consecutive degenerate pivots tolerated before falling back to Bland.
const DEGENERATE_RUN_LIMIT: usize = 50;

#[derive(Debug, Clone)]
pub struct LpProblem {
    /// Minimized objective `c`.
    pub objective: Vec<f64>,
    pub a_eq: Matrix,
    pub b_eq: Vec<f64>,
    /// `Some(l)` for `x_j ≥ l`, `None` for a free variable.
    pub lower: Vec<Option<f64>>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub value: f64,
    pub x: Vec<f64>,
    /// Multipliers `y` of the equality constraints: `c − Aᵀy` is
    /// nonnegative on bounded variables and zero on free ones.
    pub duals: Vec<f64>,
}

impl LpProblem {
    /// `min cᵀx, Ax = b, x ≥ 0`.
    pub fn nonnegative(objective: Vec<f64>, a_eq: Matrix, b_eq: Vec<f64>) -> Self {
        let n = objective.len();
        LpProblem {
            objective,
            a_eq,
            b_eq,
            lower: vec![Some(0.0); n],
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.objective.len();
        if self.a_eq.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.a_eq.cols(),
            });
        }
        if self.lower.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.lower.len(),
            });
        }
        if self.b_eq.len() != self.a_eq.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.a_eq.rows(),
                got: self.b_eq.len(),
            });
        }
        let finite = self.objective.iter().all(|v| v.is_finite())
            && self.b_eq.iter().all(|v| v.is_finite())
            && self.a_eq.as_slice().iter().all(|v| v.is_finite())
            && self.lower.iter().flatten().all(|v| v.is_finite());
        if !finite {
            return Err(Error::NonFinite("linear program"));
        }
        Ok(())
    }

    pub fn solve(&self) -> Result<LpSolution> {
        lp_solve(self)
    }
}

/// How an original variable maps onto standard-form columns.
#[derive(Clone, Copy)]
enum VarMap {
    Shifted { col: usize, lower: f64 },
    Split { pos: usize, neg: usize },
}

struct Tableau {
    m: usize,
    /// Row stride: `n + m` columns followed by the right-hand side.
    width: usize,
    t: Vec<f64>,
    basis: Vec<usize>,
    reduced: Vec<f64>,
}

impl Tableau {
    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.t[i * self.width + j]
    }

    #[inline]
    fn rhs(&self, i: usize) -> f64 {
        self.t[i * self.width + self.width - 1]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width;
        let p = self.t[r * w + c];
        for v in &mut self.t[r * w..(r + 1) * w] {
            *v /= p;
        }
        let prow: Vec<f64> = self.t[r * w..(r + 1) * w].to_vec();
        for i in 0..self.m {
            if i == r {
                continue;
            }
            let f = self.t[i * w + c];
            if f != 0.0 {
                for (v, &pv) in self.t[i * w..(i + 1) * w].iter_mut().zip(&prow) {
                    *v -= f * pv;
                }
                self.t[i * w + c] = 0.0;
            }
        }
        let f = self.reduced[c];
        if f != 0.0 {
            for (v, &pv) in self.reduced.iter_mut().zip(&prow) {
                *v -= f * pv;
            }
            self.reduced[c] = 0.0;
        }
        self.basis[r] = c;
    }

    /// Recomputes the reduced-cost row (last entry: −objective value).
    fn price(&mut self, cost: &[f64]) {
        let w = self.width;
        let mut red = vec![0.0; w];
        red[..cost.len()].copy_from_slice(cost);
        for i in 0..self.m {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                for (v, &tv) in red.iter_mut().zip(&self.t[i * w..(i + 1) * w]) {
                    *v -= cb * tv;
                }
            }
        }
        self.reduced = red;
    }

    /// Dantzig pricing over the columns `0..eligible`, switching to Bland's
    /// rule after a run of degenerate pivots so cycling cannot occur.
    fn iterate(&mut self, eligible: usize, max_pivots: usize) -> Result<()> {
        let mut degenerate_run = 0usize;
        for _ in 0..max_pivots {
            let threshold = -PIVOT_EPS * 10.0;
            let entering = if degenerate_run < DEGENERATE_RUN_LIMIT {
                (0..eligible)
                    .filter(|&j| self.reduced[j] < threshold)
                    .min_by(|&a, &b| self.reduced[a].total_cmp(&self.reduced[b]))
            } else {
                (0..eligible).find(|&j| self.reduced[j] < threshold)
            };
            let Some(c) = entering else {
                return Ok(());
            };
            let bland = degenerate_run >= DEGENERATE_RUN_LIMIT;
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.m {
                let a = self.at(i, c);
                if a <= PIVOT_EPS {
                    continue;
                }
                let ratio = self.rhs(i).max(0.0) / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        let slack = 1e-12 * br.abs().max(1.0);
                        let tie_wins = if bland {
                            self.basis[i] < self.basis[bi]
                        } else {
                            a > self.at(bi, c)
                        };
                        if ratio < br - slack || (ratio <= br + slack && tie_wins) {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            match leave {
                None => return Err(Error::Unbounded),
                Some((r, step)) => {
                    if step <= 1e-12 {
                        degenerate_run += 1;
                    } else {
                        degenerate_run = 0;
                    }
                    self.pivot(r, c)
                }
            }
        }
        Err(Error::BudgetExceeded {
            what: "simplex pivots",
            count: max_pivots,
            limit: max_pivots,
        })
    }
}

/// Solves the linear program; see the module documentation for the form.
pub fn lp_solve(problem: &LpProblem) -> Result<LpSolution> {
    problem.validate()?;
    let a = &problem.a_eq;
    let m = a.rows();
    let n_orig = problem.objective.len();

    let mut maps = Vec::with_capacity(n_orig);
    let mut n = 0;
    for lb in &problem.lower {
        match lb {
            Some(l) => {
                maps.push(VarMap::Shifted { col: n, lower: *l });
                n += 1;
            }
            None => {
                maps.push(VarMap::Split { pos: n, neg: n + 1 });
                n += 2;
            }
        }
    }

    let mut b = problem.b_eq.clone();
    let mut cost = vec![0.0; n + m];
    let mut offset = 0.0;
    for (j, map) in maps.iter().enumerate() {
        let cj = problem.objective[j];
        match *map {
            VarMap::Shifted { col, lower } => {
                cost[col] = cj;
                if lower != 0.0 {
                    offset += cj * lower;
                    for (i, bi) in b.iter_mut().enumerate() {
                        *bi -= a[(i, j)] * lower;
                    }
                }
            }
            VarMap::Split { pos, neg } => {
                cost[pos] = cj;
                cost[neg] = -cj;
            }
        }
    }

    let width = n + m + 1;
    let mut t = vec![0.0; m * width];
    let mut sign = vec![1.0; m];
    for i in 0..m {
        if b[i] < 0.0 {
            sign[i] = -1.0;
        }
        let row = &mut t[i * width..(i + 1) * width];
        for (j, map) in maps.iter().enumerate() {
            let v = sign[i] * a[(i, j)];
            match *map {
                VarMap::Shifted { col, .. } => row[col] = v,
                VarMap::Split { pos, neg } => {
                    row[pos] = v;
                    row[neg] = -v;
                }
            }
        }
        row[n + i] = 1.0;
        row[width - 1] = sign[i] * b[i];
    }

    let mut tab = Tableau {
        m,
        width,
        t,
        basis: (n..n + m).collect(),
        reduced: vec![],
    };
    let max_pivots = 50_000 + 50 * (n + m);

    // Phase one: minimize the sum of artificials.
    let mut phase1 = vec![0.0; n + m];
    for c in &mut phase1[n..] {
        *c = 1.0;
    }
    tab.price(&phase1);
    tab.iterate(n, max_pivots)?;
    let infeas = -tab.reduced[width - 1];
    let bscale = b.iter().fold(1.0f64, |s, v| s.max(v.abs()));
    if infeas > TOL.feas * bscale {
        return Err(Error::Infeasible);
    }

    // Drive remaining artificials out of the basis where possible; rows
    // where this fails are redundant and keep a zero-level artificial.
    for r in 0..m {
        if tab.basis[r] < n {
            continue;
        }
        let best = (0..n)
            .map(|j| (j, tab.at(r, j).abs()))
            .filter(|&(_, v)| v > 1e-9)
            .max_by(|x, y| x.1.total_cmp(&y.1));
        if let Some((j, _)) = best {
            tab.pivot(r, j);
        }
    }

    // Phase two.
    let mut phase2 = cost.clone();
    for c in &mut phase2[n..] {
        *c = 0.0;
    }
    tab.price(&phase2);
    tab.iterate(n, max_pivots)?;

    let mut xs = vec![0.0; n];
    for i in 0..m {
        let bv = tab.basis[i];
        if bv < n {
            xs[bv] = tab.rhs(i).max(0.0);
        }
    }
    let x: Vec<f64> = maps
        .iter()
        .map(|map| match *map {
            VarMap::Shifted { col, lower } => xs[col] + lower,
            VarMap::Split { pos, neg } => xs[pos] - xs[neg],
        })
        .collect();
    let value = crate::linalg::dot(&problem.objective, &x);
    debug_assert!((value - (offset - tab.reduced[width - 1])).abs() <= 1e-6 * value.abs().max(1.0));

    // y = c_Bᵀ B⁻¹, with B⁻¹ sitting in the artificial columns.
    let mut duals = vec![0.0; m];
    for k in 0..m {
        let cb = phase2[tab.basis[k]];
        if cb == 0.0 {
            continue;
        }
        for (i, d) in duals.iter_mut().enumerate() {
            *d += cb * tab.at(k, n + i);
        }
    }
    for (d, s) in duals.iter_mut().zip(&sign) {
        *d *= s;
    }

    Ok(LpSolution { value, x, duals })
}
