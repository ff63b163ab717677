//! Joint interval extensions, interval projections and reconstruction.
//!
//! Every endpoint here is one LP: the min or max of a (marginal) cell
//! probability over a constraint system. LPs for distinct cells are
//! independent and run on the rayon pool; results are assembled by index.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{Database, IntervalDistribution, RealDistribution, Scheme, Space, VarSet};
use crate::polytope::{
    constraints_from_box, constraints_from_database, optimize, ConstraintSystem, Direction,
    LpOutcome,
};
use crate::scalar::Scalar;

/// Per-cell `[min, max]` of each objective over `cs`, clamped to `[0, 1]`.
fn sweep<T: Scalar>(
    cs: &ConstraintSystem<T>,
    space: Space,
    objectives: &[Vec<T>],
) -> Result<IntervalDistribution<T>> {
    let bounds: Vec<(T, T)> = objectives
        .par_iter()
        .map(|c| {
            let lo = optimize(cs, c, Direction::Minimize)?;
            let hi = optimize(cs, c, Direction::Maximize)?;
            match (lo, hi) {
                (LpOutcome::Optimal { value: l, .. }, LpOutcome::Optimal { value: u, .. }) => {
                    let clamp = |x: T| x.max(T::zero()).min(T::one());
                    let (l, u) = (clamp(l), clamp(u));
                    Ok((l.min(u), u))
                }
                _ => Err(Error::Internal(
                    "feasible system reported infeasible during sweep".into(),
                )),
            }
        })
        .collect::<Result<_>>()?;
    IntervalDistribution::from_intervals(space, &bounds)
}

fn indicator_objectives<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|j| {
            let mut c = vec![T::zero(); n];
            c[j] = T::one();
            c
        })
        .collect()
}

/// `E(I)*`: for each joint cell of the database's ambient space, the min and
/// max of its probability over the real-valued extension.
pub fn extension_star<T: Scalar>(db: &Database<T>) -> Result<IntervalDistribution<T>> {
    let ambient = db.ambient().clone();
    let cs = constraints_from_database(db, &ambient)?;
    let n = ambient.cell_count();
    let zero = vec![T::zero(); n];
    if !optimize(&cs, &zero, Direction::Minimize)?.is_feasible() {
        return Err(Error::Inconsistent);
    }
    sweep(&cs, ambient, &indicator_objectives(n))
}

/// `i_D`, the narrowest joint interval distribution containing every
/// element of a real-valued database's extension.
pub fn joint_intervals<T: Scalar>(db: &Database<T>) -> Result<IntervalDistribution<T>> {
    if !db.is_real_valued() {
        return Err(Error::NotRealValued);
    }
    extension_star(db)
}

/// Interval projection onto `onto`: each marginal endpoint is the min/max of
/// the marginal sum over `{p : p ≤ i}`.
pub fn project_interval<T: Scalar>(
    i: &IntervalDistribution<T>,
    onto: &VarSet,
) -> Result<IntervalDistribution<T>> {
    let sub = i.space().restrict(onto)?;
    let cs = constraints_from_box(i)?;
    let n = i.len();
    if !optimize(&cs, &vec![T::zero(); n], Direction::Minimize)?.is_feasible() {
        return Err(Error::EmptyBox);
    }
    let map = i.space().marginal_map(&sub)?;
    let objectives: Vec<Vec<T>> = (0..sub.cell_count())
        .map(|t| {
            map.iter()
                .map(|&m| if m == t { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    sweep(&cs, sub, &objectives)
}

/// Plain marginalization.
pub fn project_real<T: Scalar>(
    p: &RealDistribution<T>,
    onto: &VarSet,
) -> Result<RealDistribution<T>> {
    let sub = p.space().restrict(onto)?;
    let map = p.space().marginal_map(&sub)?;
    let mut out = vec![T::zero(); sub.cell_count()];
    for (&t, &x) in map.iter().zip(p.probs()) {
        out[t] = out[t] + x;
    }
    RealDistribution::new(sub, out)
}

/// `π_X(i)`: one projected table per subset of `scheme`, over `i`'s space.
pub fn project_database<T: Scalar>(
    i: &IntervalDistribution<T>,
    scheme: &Scheme,
) -> Result<Database<T>> {
    scheme.check_over(i.space())?;
    let tables = scheme
        .subsets()
        .iter()
        .map(|s| project_interval(i, s))
        .collect::<Result<Vec<_>>>()?;
    Database::with_ambient(i.space().clone(), tables)
}

/// A reconstruction together with the projected database it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction<T> {
    pub projections: Database<T>,
    pub joint: IntervalDistribution<T>,
}

/// `E(π_X(i))*`.
pub fn reconstruct<T: Scalar>(
    i: &IntervalDistribution<T>,
    scheme: &Scheme,
) -> Result<Reconstruction<T>> {
    let projections = project_database(i, scheme)?;
    let joint = extension_star(&projections)?;
    Ok(Reconstruction { projections, joint })
}

/// Shrinks every endpoint of `i` to one attained by some `p ≤ i`.
pub fn tighten<T: Scalar>(i: &IntervalDistribution<T>) -> Result<IntervalDistribution<T>> {
    i.check()?;
    let db = Database::with_ambient(i.space().clone(), vec![i.clone()])?;
    let e = extension_star(&db).map_err(|e| match e {
        Error::Inconsistent => Error::EmptyBox,
        other => other,
    })?;
    let lower = e
        .lower()
        .iter()
        .zip(i.lower())
        .map(|(&a, &b)| a.max(b))
        .collect();
    let upper = e
        .upper()
        .iter()
        .zip(i.upper())
        .map(|(&a, &b)| a.min(b))
        .collect();
    IntervalDistribution::new(i.space().clone(), lower, upper)
}
