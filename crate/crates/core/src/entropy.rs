//! Shannon entropy in bits, conditional entropy, relative entropy, IPF
//! reconstruction and entropy extremes over interval boxes.

use crate::error::{Error, Result};
use crate::extension::project_real;
use crate::model::{Database, IntervalDistribution, RealDistribution, VarSet};
use crate::scalar::{xlog2x, Scalar};

/// `-Σ p log₂ p`, with `0 log 0 = 0`.
pub fn shannon_entropy<T: Scalar>(p: &RealDistribution<T>) -> T {
    entropy_of(p.probs())
}

pub(crate) fn entropy_of<T: Scalar>(p: &[T]) -> T {
    -p.iter().map(|&x| xlog2x(x)).sum::<T>()
}

fn marginal_entropy<T: Scalar>(p: &RealDistribution<T>, set: &VarSet) -> Result<T> {
    if set.is_empty() {
        return Ok(T::zero());
    }
    Ok(shannon_entropy(&project_real(p, set)?))
}

fn check_known<T: Scalar>(p: &RealDistribution<T>, sets: &[&VarSet]) -> Result<()> {
    for s in sets {
        if let Some(n) = s.iter().find(|n| p.space().position(n).is_none()) {
            return Err(Error::UnknownVariable(n.clone()));
        }
    }
    Ok(())
}

fn check_disjoint(a: &VarSet, b: &VarSet) -> Result<()> {
    match a.intersection(b).next() {
        Some(n) => Err(Error::OverlappingSets(n.clone())),
        None => Ok(()),
    }
}

/// `H(target | given) = H(target ∪ given) − H(given)`.
pub fn conditional_entropy<T: Scalar>(
    p: &RealDistribution<T>,
    target: &VarSet,
    given: &VarSet,
) -> Result<T> {
    check_known(p, &[target, given])?;
    check_disjoint(target, given)?;
    let joint: VarSet = target.union(given).cloned().collect();
    let h = marginal_entropy(p, &joint)? - marginal_entropy(p, given)?;
    Ok(h.max(T::zero()))
}

/// Relative entropy `Σ p log₂(p/q)`.
pub fn kl_divergence<T: Scalar>(p: &RealDistribution<T>, q: &RealDistribution<T>) -> Result<T> {
    if p.space() != q.space() {
        return Err(Error::SpaceMismatch);
    }
    let mut d = T::zero();
    for (j, (&a, &b)) in p.probs().iter().zip(q.probs()).enumerate() {
        if a <= T::zero() {
            continue;
        }
        if b <= T::zero() {
            return Err(Error::SupportViolation {
                cell: j,
                p: a.to_f64_lossy(),
            });
        }
        d = d + a * (a / b).log2();
    }
    Ok(d.max(T::zero()))
}

#[derive(Debug, Clone, Copy)]
pub struct IpfOptions<T> {
    pub max_sweeps: usize,
    /// Stop once every table marginal is within this of its target.
    pub tolerance: T,
}

impl<T: Scalar> Default for IpfOptions<T> {
    fn default() -> Self {
        Self {
            max_sweeps: 10_000,
            tolerance: T::ipf_tol(),
        }
    }
}

/// Maximum-entropy element of a real-valued database's extension, by
/// iterative proportional fitting from the uniform distribution.
pub fn maxent_ipf<T: Scalar>(db: &Database<T>) -> Result<RealDistribution<T>> {
    maxent_ipf_with(db, &IpfOptions::default())
}

pub fn maxent_ipf_with<T: Scalar>(
    db: &Database<T>,
    opts: &IpfOptions<T>,
) -> Result<RealDistribution<T>> {
    db.check()?;
    if !db.is_real_valued() {
        return Err(Error::NotRealValued);
    }
    let ambient = db.ambient();
    let fits = db
        .tables()
        .iter()
        .map(|t| Ok((ambient.marginal_map(t.space())?, t.lower().to_vec())))
        .collect::<Result<Vec<_>>>()?;

    let mut q = RealDistribution::<T>::uniform(ambient.clone()).into_probs();
    let mut marg: Vec<T> = Vec::new();
    let mut deviation = T::infinity();
    for _ in 0..opts.max_sweeps {
        for (map, target) in &fits {
            marginal_into(&q, map, target.len(), &mut marg);
            for (x, &t) in q.iter_mut().zip(map) {
                if marg[t] > T::zero() {
                    *x = *x * target[t] / marg[t];
                }
            }
        }
        deviation = T::zero();
        for (map, target) in &fits {
            marginal_into(&q, map, target.len(), &mut marg);
            for (&m, &t) in marg.iter().zip(target) {
                deviation = deviation.max((m - t).abs());
            }
        }
        if deviation < opts.tolerance {
            return RealDistribution::new(ambient.clone(), q);
        }
    }
    Err(Error::IpfDidNotConverge {
        iterations: opts.max_sweeps,
        deviation: deviation.to_f64_lossy(),
    })
}

fn marginal_into<T: Scalar>(q: &[T], map: &[usize], len: usize, out: &mut Vec<T>) {
    out.clear();
    out.resize(len, T::zero());
    for (&x, &t) in q.iter().zip(map) {
        out[t] = out[t] + x;
    }
}

fn clamp<T: Scalar>(c: T, lo: T, hi: T) -> T {
    c.max(lo).min(hi)
}

fn check_box<T: Scalar>(i: &IntervalDistribution<T>) -> Result<()> {
    i.check().map_err(|e| match e {
        Error::Invalid(v)
            if v.iter().all(|v| {
                matches!(
                    v,
                    crate::model::Violation::LowerSumAboveOne { .. }
                        | crate::model::Violation::UpperSumBelowOne { .. }
                )
            }) =>
        {
            Error::EmptyBox
        }
        other => other,
    })
}

/// Entropy maximizer over `{p : p ≤ i}`.
///
/// The maximizer has the water-filling form `p_j = clamp(c, lower_j, upper_j)`;
/// the level `c` is found by bisection, since `Σ clamp(c)` is nondecreasing.
pub fn box_maxent<T: Scalar>(i: &IntervalDistribution<T>) -> Result<RealDistribution<T>> {
    check_box(i)?;
    let fill = |c: T| -> T { i.intervals().map(|(l, u)| clamp(c, l, u)).sum() };
    let (mut lo, mut hi) = (T::zero(), T::one());
    for _ in 0..200 {
        let mid = (lo + hi) / T::of(2.0);
        if fill(mid) < T::one() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let c = (lo + hi) / T::of(2.0);
    let p = i.intervals().map(|(l, u)| clamp(c, l, u)).collect();
    RealDistribution::new(i.space().clone(), p)
}

/// `u₁(i) = max_{p ≤ i} H(p)`.
pub fn measure_u1<T: Scalar>(i: &IntervalDistribution<T>) -> Result<T> {
    Ok(shannon_entropy(&box_maxent(i)?))
}

#[derive(Debug, Clone, Copy)]
pub struct MinentOptions {
    /// Largest cell count for which vertices are enumerated.
    pub max_cells: usize,
}

impl Default for MinentOptions {
    fn default() -> Self {
        Self { max_cells: 16 }
    }
}

/// Entropy minimizer over `{p : p ≤ i}`.
pub fn box_minent<T: Scalar>(i: &IntervalDistribution<T>) -> Result<RealDistribution<T>> {
    box_minent_with(i, &MinentOptions::default())
}

/// Concave minimization by vertex enumeration.
///
/// A vertex of the box-simplex has every cell but at most one at a bound, so
/// it suffices to pick the residual cell and a lower/upper pattern for the
/// rest, keep the patterns whose residual fits its own interval, and return
/// the lowest-entropy one.
pub fn box_minent_with<T: Scalar>(
    i: &IntervalDistribution<T>,
    opts: &MinentOptions,
) -> Result<RealDistribution<T>> {
    let n = i.len();
    if n > opts.max_cells {
        return Err(Error::EnumerationRefused {
            what: "cell count",
            size: n,
            cap: opts.max_cells,
        });
    }
    check_box(i)?;
    let tol = T::feasibility_tol();
    let (lower, upper) = (i.lower(), i.upper());
    let mut best: Option<(T, Vec<T>)> = None;
    let mut p = vec![T::zero(); n];
    for r in 0..n {
        for mask in 0u32..(1u32 << (n - 1)) {
            let mut rest = T::zero();
            for (bit, j) in (0..n).filter(|&j| j != r).enumerate() {
                p[j] = if mask >> bit & 1 == 1 {
                    upper[j]
                } else {
                    lower[j]
                };
                rest = rest + p[j];
            }
            let residual = T::one() - rest;
            if residual < lower[r] - tol || residual > upper[r] + tol {
                continue;
            }
            p[r] = clamp(residual, lower[r], upper[r]);
            let h = entropy_of(&p);
            if best.as_ref().is_none_or(|(b, _)| h < *b) {
                best = Some((h, p.clone()));
            }
        }
    }
    let (_, p) = best.ok_or(Error::EmptyBox)?;
    RealDistribution::new(i.space().clone(), p)
}

/// `u₂(i) = min_{p ≤ i} H(p)`.
pub fn measure_u2<T: Scalar>(i: &IntervalDistribution<T>) -> Result<T> {
    Ok(shannon_entropy(&box_minent(i)?))
}

/// Strength of the dependency `U →→ W`: `H(W|U) − H(W|U ∪ Z)` where `Z` is
/// every remaining variable. Zero exactly when `W ⊥ Z | U`.
pub fn mvd_strength<T: Scalar>(p: &RealDistribution<T>, u: &VarSet, w: &VarSet) -> Result<T> {
    check_known(p, &[u, w])?;
    check_disjoint(u, w)?;
    let uz: VarSet = p
        .space()
        .names()
        .filter(|n| !w.contains(*n))
        .map(String::from)
        .collect();
    let d = conditional_entropy(p, w, u)? - conditional_entropy(p, w, &uz)?;
    Ok(d.max(T::zero()))
}
