//! Dense bounded-variable primal simplex.
//!
//! Every row `a·x (≤|≥|=) b` gets a slack `s = b - a·x` whose bounds encode
//! the relation, plus an artificial column for phase one. Structural bounds
//! must be finite. Entering and leaving choices follow Bland's rule (lowest
//! column index), so the method terminates on degenerate problems.

use crate::error::{Error, Result};
use crate::polytope::Relation;
use crate::scalar::Scalar;

pub(crate) struct BoundedLp<'a, T> {
    pub rows: &'a [Vec<T>],
    pub relations: &'a [Relation],
    pub rhs: &'a [T],
    pub lower: &'a [T],
    pub upper: &'a [T],
    /// Minimized.
    pub cost: &'a [T],
}

pub(crate) enum Solution<T> {
    Optimal(Vec<T>),
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Basic,
    AtLower,
    AtUpper,
}

struct Tableau<T> {
    /// `B⁻¹ A`, one row per constraint.
    coef: Vec<Vec<T>>,
    /// Values of the basic variables.
    beta: Vec<T>,
    basis: Vec<usize>,
    status: Vec<Status>,
    lb: Vec<T>,
    ub: Vec<T>,
    reduced: Vec<T>,
    pivot_tol: T,
    opt_tol: T,
}

impl<T: Scalar> Tableau<T> {
    fn value(&self, j: usize) -> T {
        match self.status[j] {
            Status::AtLower => self.lb[j],
            Status::AtUpper => self.ub[j],
            Status::Basic => {
                let r = self
                    .basis
                    .iter()
                    .position(|&b| b == j)
                    .expect("basic column in basis");
                self.beta[r]
            }
        }
    }

    fn price(&mut self, cost: &[T]) {
        let cols = self.lb.len();
        self.reduced = (0..cols)
            .map(|j| {
                let mut d = cost[j];
                for (row, &b) in self.coef.iter().zip(&self.basis) {
                    d = d - cost[b] * row[j];
                }
                d
            })
            .collect();
    }

    fn entering(&self) -> Option<usize> {
        (0..self.lb.len()).find(|&j| match self.status[j] {
            Status::AtLower => self.ub[j] > self.lb[j] && self.reduced[j] < -self.opt_tol,
            Status::AtUpper => self.ub[j] > self.lb[j] && self.reduced[j] > self.opt_tol,
            Status::Basic => false,
        })
    }

    fn run(&mut self, max_iter: usize) -> Result<()> {
        for _ in 0..max_iter {
            let Some(q) = self.entering() else {
                return Ok(());
            };
            let dir = if self.status[q] == Status::AtLower {
                T::one()
            } else {
                -T::one()
            };

            let mut theta = self.ub[q] - self.lb[q];
            let mut leaving: Option<usize> = None;
            for (i, row) in self.coef.iter().enumerate() {
                let alpha = row[q] * dir;
                let b = self.basis[i];
                let limit = if alpha > self.pivot_tol {
                    (self.beta[i] - self.lb[b]) / alpha
                } else if alpha < -self.pivot_tol {
                    (self.ub[b] - self.beta[i]) / (-alpha)
                } else {
                    continue;
                };
                let limit = limit.max(T::zero());
                let better = match leaving {
                    _ if limit < theta => true,
                    Some(r) => limit == theta && b < self.basis[r],
                    None => false,
                };
                if better {
                    theta = limit;
                    leaving = Some(i);
                }
            }
            if !theta.is_finite() {
                return Err(Error::Internal(
                    "unbounded direction in a bounded LP".into(),
                ));
            }

            let entering_value = self.value(q) + dir * theta;
            for (i, row) in self.coef.iter().enumerate() {
                self.beta[i] = self.beta[i] - row[q] * dir * theta;
            }

            match leaving {
                None => {
                    self.status[q] = match self.status[q] {
                        Status::AtLower => Status::AtUpper,
                        _ => Status::AtLower,
                    };
                }
                Some(r) => {
                    let out = self.basis[r];
                    self.status[out] = if self.coef[r][q] * dir > T::zero() {
                        Status::AtLower
                    } else {
                        Status::AtUpper
                    };
                    self.pivot(r, q);
                    self.status[q] = Status::Basic;
                    self.beta[r] = entering_value;
                }
            }
        }
        Err(Error::Internal(format!(
            "simplex exceeded {max_iter} iterations"
        )))
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let p = self.coef[r][q];
        for x in self.coef[r].iter_mut() {
            *x = *x / p;
        }
        let pivot_row = self.coef[r].clone();
        for (i, row) in self.coef.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[q];
            if f != T::zero() {
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = *x - f * y;
                }
            }
        }
        let f = self.reduced[q];
        if f != T::zero() {
            for (x, &y) in self.reduced.iter_mut().zip(&pivot_row) {
                *x = *x - f * y;
            }
        }
        self.basis[r] = q;
    }
}

pub(crate) fn solve<T: Scalar>(lp: &BoundedLp<'_, T>) -> Result<Solution<T>> {
    let n = lp.lower.len();
    let m = lp.rows.len();
    let tol = T::feasibility_tol();
    let cols = n + 2 * m;

    let mut lb = Vec::with_capacity(cols);
    let mut ub = Vec::with_capacity(cols);
    lb.extend_from_slice(lp.lower);
    ub.extend_from_slice(lp.upper);

    // slack ranges implied by the structural box
    for ((row, rel), &b) in lp.rows.iter().zip(lp.relations).zip(lp.rhs) {
        let (mut lo, mut hi) = (T::zero(), T::zero());
        for ((&a, &l), &u) in row.iter().zip(lp.lower).zip(lp.upper) {
            lo = lo + (a * l).min(a * u);
            hi = hi + (a * l).max(a * u);
        }
        let (smin, smax) = (b - hi, b - lo);
        let (mut sl, mut su) = match rel {
            Relation::Le => (smin.max(T::zero()), smax),
            Relation::Ge => (smin, smax.min(T::zero())),
            Relation::Eq => (T::zero(), T::zero()),
        };
        if sl > su {
            if sl - su > tol {
                return Ok(Solution::Infeasible);
            }
            su = sl;
        }
        if *rel == Relation::Eq && (smin > tol || smax < -tol) {
            return Ok(Solution::Infeasible);
        }
        if sl.abs() < T::min_positive_value() {
            sl = T::zero();
        }
        lb.push(sl);
        ub.push(su);
    }
    lb.extend(std::iter::repeat_n(T::zero(), m));
    ub.extend(std::iter::repeat_n(T::infinity(), m));

    let mut status = vec![Status::AtLower; cols];
    let mut coef = Vec::with_capacity(m);
    let mut beta = Vec::with_capacity(m);
    for (i, (row, &b)) in lp.rows.iter().zip(lp.rhs).enumerate() {
        let activity: T = row.iter().zip(lp.lower).map(|(&a, &l)| a * l).sum();
        let resid = b - activity;
        let s = n + i;
        // park the slack at whichever bound leaves the smaller residual
        let (sv, st) = if (resid - lb[s]).abs() <= (resid - ub[s]).abs() {
            (lb[s], Status::AtLower)
        } else {
            (ub[s], Status::AtUpper)
        };
        status[s] = st;
        let rho = resid - sv;
        let sigma = if rho < T::zero() { -T::one() } else { T::one() };
        let mut r = vec![T::zero(); cols];
        for (x, &a) in r.iter_mut().zip(row) {
            *x = a / sigma;
        }
        r[s] = T::one() / sigma;
        r[n + m + i] = T::one();
        status[n + m + i] = Status::Basic;
        coef.push(r);
        beta.push(rho.abs());
    }

    let mut t = Tableau {
        coef,
        beta,
        basis: (n + m..n + 2 * m).collect(),
        status,
        lb,
        ub,
        reduced: Vec::new(),
        pivot_tol: T::pivot_tol(),
        opt_tol: tol,
    };
    let max_iter = 1000 + 50 * cols;

    let mut phase1 = vec![T::zero(); cols];
    for c in &mut phase1[n + m..] {
        *c = T::one();
    }
    t.price(&phase1);
    t.run(max_iter)?;
    let infeasibility: T = (n + m..cols).map(|j| t.value(j)).sum();
    let scale = lp.rhs.iter().fold(T::one(), |acc, b| acc.max(b.abs()));
    if infeasibility > tol * scale {
        return Ok(Solution::Infeasible);
    }

    for j in n + m..cols {
        t.ub[j] = T::zero();
    }
    let mut phase2 = vec![T::zero(); cols];
    phase2[..n].copy_from_slice(lp.cost);
    t.price(&phase2);
    t.run(max_iter)?;

    let mut x = vec![T::zero(); n];
    for (j, xj) in x.iter_mut().enumerate() {
        *xj = t.value(j);
    }
    Ok(Solution::Optimal(x))
}
