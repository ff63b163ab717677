//! Interval uncertainty `u₀`, the `d₀` metric and scheme comparison by
//! information loss.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extension::reconstruct;
use crate::model::{IntervalDistribution, Scheme, Space};
use crate::scalar::Scalar;

/// Mean interval width.
pub fn measure_u0<T: Scalar>(i: &IntervalDistribution<T>) -> T {
    let n = T::from_usize(i.len()).expect("cell count fits in scalar");
    i.intervals().map(|(l, u)| u - l).sum::<T>() / n
}

/// Mean over cells of `|Δupper| + |Δlower|`.
pub fn distance_d0<T: Scalar>(
    a: &IntervalDistribution<T>,
    b: &IntervalDistribution<T>,
) -> Result<T> {
    if a.space() != b.space() {
        return Err(Error::SpaceMismatch);
    }
    let n = T::from_usize(a.len()).expect("cell count fits in scalar");
    let total: T = a
        .intervals()
        .zip(b.intervals())
        .map(|((l, u), (l2, u2))| (u - u2).abs() + (l - l2).abs())
        .sum();
    Ok(total / n)
}

/// One scheme's reconstruction and its `d₀` distance from the original.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeReport<T> {
    pub scheme: Scheme,
    pub loss: T,
    pub reconstruction: IntervalDistribution<T>,
}

pub fn information_loss<T: Scalar>(
    i: &IntervalDistribution<T>,
    scheme: &Scheme,
) -> Result<SchemeReport<T>> {
    let reconstruction = reconstruct(i, scheme)?.joint;
    let loss = distance_d0(i, &reconstruction)?;
    Ok(SchemeReport {
        scheme: scheme.clone(),
        loss,
        reconstruction,
    })
}

/// `x ≤ y` in the refinement order.
pub fn is_refinement(x: &Scheme, y: &Scheme) -> bool {
    x.is_refinement_of(y)
}

/// Reports sorted by ascending loss, then fewer subsets, then subset order.
///
/// Losses closer than the scalar's feasibility tolerance count as ties.
pub fn rank_schemes<T: Scalar>(
    i: &IntervalDistribution<T>,
    schemes: &[Scheme],
) -> Result<Vec<SchemeReport<T>>> {
    if schemes.is_empty() {
        return Err(Error::InvalidScheme("no schemes to rank".into()));
    }
    let mut reports = schemes
        .par_iter()
        .map(|s| information_loss(i, s))
        .collect::<Result<Vec<_>>>()?;
    let bucket = |x: T| (x / T::feasibility_tol()).round().to_f64_lossy();
    reports.sort_by(|a, b| {
        bucket(a.loss)
            .partial_cmp(&bucket(b.loss))
            .unwrap_or(Ordering::Equal)
            .then(a.scheme.len().cmp(&b.scheme.len()))
            .then_with(|| a.scheme.cmp(&b.scheme))
    });
    Ok(reports)
}

/// Largest variable count accepted by [`enumerate_schemes`].
pub const MAX_ENUMERATION_VARIABLES: usize = 5;

/// Every antichain cover of the space's variables with at most
/// `max_subsets` subsets, ordered by subset count and then lexicographically.
pub fn enumerate_schemes(space: &Space, max_subsets: usize) -> Result<Vec<Scheme>> {
    let n = space.variables().len();
    if n > MAX_ENUMERATION_VARIABLES {
        return Err(Error::EnumerationRefused {
            what: "variable count",
            size: n,
            cap: MAX_ENUMERATION_VARIABLES,
        });
    }
    let full: u32 = (1 << n) - 1;
    let mut found: Vec<Vec<u32>> = Vec::new();
    let mut chosen: Vec<u32> = Vec::new();
    antichains(1, full, max_subsets, &mut chosen, &mut found);

    let names: Vec<&str> = space.names().collect();
    let mut schemes = found
        .into_iter()
        .map(|masks| {
            Scheme::new(masks.into_iter().map(|m| {
                (0..n)
                    .filter(move |k| m >> k & 1 == 1)
                    .map(|k| names[k].to_string())
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    schemes.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    schemes.dedup();
    Ok(schemes)
}

fn antichains(next: u32, full: u32, cap: usize, chosen: &mut Vec<u32>, found: &mut Vec<Vec<u32>>) {
    if !chosen.is_empty() && chosen.iter().fold(0, |acc, m| acc | m) == full {
        found.push(chosen.clone());
    }
    if chosen.len() == cap {
        return;
    }
    for m in next..=full {
        if chosen.iter().all(|&c| c & m != c && c & m != m) {
            chosen.push(m);
            antichains(m + 1, full, cap, chosen, found);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::tighten;
    use crate::model::Variable;
    use proptest::prelude::*;

    fn abc() -> Space {
        let vars = ["A", "B", "C"]
            .iter()
            .map(|n| Variable::new(*n, ["0", "1"]).unwrap())
            .collect();
        Space::new(vars).unwrap()
    }

    fn abc_i() -> IntervalDistribution<f64> {
        let mid = [0.25, 0.25, 0.05, 0.05, 0.05, 0.05, 0.15, 0.15];
        let iv: Vec<(f64, f64)> = mid.iter().map(|p| (p - 0.01, p + 0.01)).collect();
        IntervalDistribution::from_intervals(abc(), &iv).unwrap()
    }

    fn scheme(s: &str) -> Scheme {
        s.parse().unwrap()
    }

    #[test]
    fn u0_examples() {
        assert!((measure_u0(&abc_i()) - 0.02).abs() < 1e-12);
        let r = reconstruct(&abc_i(), &scheme("A,B|B,C")).unwrap().joint;
        let widths = [0.16, 0.16, 0.12, 0.12, 0.12, 0.12, 0.16, 0.16];
        let oracle = widths.iter().sum::<f64>() / 8.0;
        assert!((oracle - 0.14).abs() < 1e-12);
        assert!((measure_u0(&r) - oracle).abs() < 1e-9);
        let p = crate::model::RealDistribution::<f64>::uniform(abc()).to_interval();
        assert_eq!(measure_u0(&p), 0.0);
    }

    #[test]
    fn d0_examples() {
        let i = abc_i();
        assert_eq!(distance_d0(&i, &i).unwrap(), 0.0);
        let good = information_loss(&i, &scheme("A,B|B,C")).unwrap();
        let bad = information_loss(&i, &scheme("A,C|B,C")).unwrap();
        assert!((good.loss - 0.12).abs() < 1e-9);
        assert!((bad.loss - 0.21).abs() < 1e-9);
        // d₀ = u₀(i*) − u₀(i) when i ≤ i*
        let gap = measure_u0(&good.reconstruction) - measure_u0(&i);
        assert!((good.loss - gap).abs() < 1e-9);
    }

    #[test]
    fn full_scheme_loss_is_tightening_gain() {
        let i = abc_i();
        let r = information_loss(&i, &scheme("A,B,C")).unwrap();
        let t = tighten(&i).unwrap();
        assert!((r.loss - (measure_u0(&t) - measure_u0(&i))).abs() < 1e-9);
        assert!(r.loss < 1e-9);
    }

    #[test]
    fn ranking_prefers_ab_bc() {
        let i = abc_i();
        let ranked = rank_schemes(&i, &[scheme("A,C|B,C"), scheme("A,B|B,C")]).unwrap();
        assert_eq!(ranked[0].scheme, scheme("A,B|B,C"));
        assert_eq!(ranked[1].scheme, scheme("A,C|B,C"));
        let single = rank_schemes(&i, &[scheme("A|B|C")]).unwrap();
        assert_eq!(single.len(), 1);
        assert!(rank_schemes(&i, &[]).is_err());
    }

    #[test]
    fn ranking_ties_break_on_size_then_order() {
        // a point mass is recovered exactly from any scheme, so every loss is zero
        let mut p = vec![0.0; 8];
        p[5] = 1.0;
        let i = crate::model::RealDistribution::new(abc(), p)
            .unwrap()
            .to_interval();
        let input = [
            scheme("A|B|C"),
            scheme("B,C|A"),
            scheme("A,B,C"),
            scheme("A,B|C"),
        ];
        let ranked = rank_schemes(&i, &input).unwrap();
        let order: Vec<String> = ranked.iter().map(|r| r.scheme.to_string()).collect();
        assert_eq!(order, ["A,B,C", "A|B,C", "A,B|C", "A|B|C"]);
        assert!(ranked.iter().all(|r| r.loss < 1e-12));
    }

    #[test]
    fn enumerate_examples() {
        let ab = Space::from_domains(&[("A", ["0", "1"]), ("B", ["0", "1"])]).unwrap();
        let got = enumerate_schemes(&ab, 4).unwrap();
        assert_eq!(got, vec![scheme("A,B"), scheme("A|B")]);

        let a = Space::from_domains(&[("A", ["0", "1"])]).unwrap();
        assert_eq!(enumerate_schemes(&a, 3).unwrap(), vec![scheme("A")]);

        let two = enumerate_schemes(&abc(), 2).unwrap();
        assert!(two.contains(&scheme("A,B|B,C")));
        assert!(two.contains(&scheme("A,C|B,C")));
        assert!(two.iter().all(|s| s.len() <= 2));
        // antichain covers of a 3-set: 1 of size one, 6 of size two, 2 of size three
        assert_eq!(two.len(), 7);
        assert_eq!(enumerate_schemes(&abc(), 3).unwrap().len(), 9);

        let vars = (0..6)
            .map(|k| Variable::new(format!("V{k}"), ["0"]).unwrap())
            .collect();
        let big = Space::new(vars).unwrap();
        assert!(matches!(
            enumerate_schemes(&big, 2),
            Err(Error::EnumerationRefused { .. })
        ));
    }

    fn random_interval(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), n)
            .prop_map(|v| v.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect())
    }

    fn all_schemes() -> Vec<Scheme> {
        enumerate_schemes(&abc(), 4).unwrap()
    }

    proptest! {
        #[test]
        fn d0_is_a_metric(a in random_interval(8), b in random_interval(8), c in random_interval(8)) {
            let s = abc();
            let [a, b, c] = [a, b, c].map(|v| IntervalDistribution::from_intervals(s.clone(), &v).unwrap());
            let ab = distance_d0(&a, &b).unwrap();
            prop_assert_eq!(ab, distance_d0(&b, &a).unwrap());
            prop_assert_eq!(distance_d0(&a, &a).unwrap(), 0.0);
            if a != b { prop_assert!(ab > 0.0); }
            prop_assert!(distance_d0(&a, &c).unwrap() <= ab + distance_d0(&b, &c).unwrap() + 1e-12);
        }

        #[test]
        fn d0_of_nested_pair_is_u0_gap(a in random_interval(8), wa in prop::collection::vec(0.0f64..0.3, 8), wb in prop::collection::vec(0.0f64..0.3, 8)) {
            let s = abc();
            let i = IntervalDistribution::from_intervals(s.clone(), &a).unwrap();
            let wide: Vec<(f64, f64)> = a.iter().zip(wa.iter().zip(&wb))
                .map(|((l, u), (x, y))| ((l - x).max(0.0), (u + y).min(1.0)))
                .collect();
            let w = IntervalDistribution::from_intervals(s, &wide).unwrap();
            prop_assert!(measure_u0(&i) <= measure_u0(&w));
            prop_assert!((distance_d0(&i, &w).unwrap() - (measure_u0(&w) - measure_u0(&i))).abs() <= 1e-12);
        }

        #[test]
        fn refinement_is_reflexive_and_transitive(x in 0usize..9, y in 0usize..9, z in 0usize..9) {
            let all = all_schemes();
            let (x, y, z) = (&all[x], &all[y], &all[z]);
            prop_assert!(is_refinement(x, x));
            if is_refinement(x, y) && is_refinement(y, z) {
                prop_assert!(is_refinement(x, z));
            }
        }
    }
}
