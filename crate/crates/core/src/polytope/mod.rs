//! Linear constraint systems over joint cells and their min/max LPs.

mod simplex;

use crate::error::{Error, Result};
use crate::model::{Database, IntervalDistribution, RealDistribution, Space};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Minimize,
    Maximize,
}

/// `Σ coefficient·p[cell]  relation  rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint<T> {
    pub terms: Vec<(usize, T)>,
    pub relation: Relation,
    pub rhs: T,
}

impl<T: Scalar> LinearConstraint<T> {
    pub fn new(terms: Vec<(usize, T)>, relation: Relation, rhs: T) -> Self {
        Self {
            terms,
            relation,
            rhs,
        }
    }

    pub fn activity(&self, p: &[T]) -> T {
        self.terms.iter().map(|&(j, a)| a * p[j]).sum()
    }

    /// Amount by which `p` violates the row; zero when satisfied.
    pub fn violation(&self, p: &[T]) -> T {
        let a = self.activity(p);
        match self.relation {
            Relation::Ge => (self.rhs - a).max(T::zero()),
            Relation::Le => (a - self.rhs).max(T::zero()),
            Relation::Eq => (a - self.rhs).abs(),
        }
    }

    /// Same row multiplied through by `k > 0`.
    pub fn scaled(&self, k: T) -> Self {
        Self {
            terms: self.terms.iter().map(|&(j, a)| (j, a * k)).collect(),
            relation: self.relation,
            rhs: self.rhs * k,
        }
    }
}

/// Rows over the cells of an ambient space, ending with the normalization
/// `Σ p = 1`, plus finite per-cell bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSystem<T> {
    space: Space,
    constraints: Vec<LinearConstraint<T>>,
    lower: Vec<T>,
    upper: Vec<T>,
}

impl<T: Scalar> ConstraintSystem<T> {
    /// The probability simplex: normalization plus `0 ≤ p ≤ 1`.
    pub fn simplex(space: Space) -> Self {
        let n = space.cell_count();
        let norm = LinearConstraint::new(
            (0..n).map(|j| (j, T::one())).collect(),
            Relation::Eq,
            T::one(),
        );
        Self {
            space,
            constraints: vec![norm],
            lower: vec![T::zero(); n],
            upper: vec![T::one(); n],
        }
    }

    /// Inserts `c` ahead of the normalization row.
    pub fn push(&mut self, c: LinearConstraint<T>) -> Result<()> {
        let n = self.space.cell_count();
        if let Some(&(j, _)) = c.terms.iter().find(|(j, _)| *j >= n) {
            return Err(Error::LengthMismatch {
                expected: n,
                got: j + 1,
            });
        }
        if !c.rhs.is_finite() || c.terms.iter().any(|(_, a)| !a.is_finite()) {
            return Err(Error::Parse("non-finite constraint coefficient".into()));
        }
        let at = self.constraints.len() - 1;
        self.constraints.insert(at, c);
        Ok(())
    }

    /// Replaces the per-cell bounds. All endpoints must be finite.
    pub fn set_bounds(&mut self, lower: Vec<T>, upper: Vec<T>) -> Result<()> {
        let n = self.space.cell_count();
        for v in [&lower, &upper] {
            if v.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        if lower.iter().chain(&upper).any(|x| !x.is_finite()) {
            return Err(Error::Parse("non-finite bound".into()));
        }
        self.lower = lower;
        self.upper = upper;
        Ok(())
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    /// All rows; the last one is the normalization.
    pub fn constraints(&self) -> &[LinearConstraint<T>] {
        &self.constraints
    }

    /// Rows other than the normalization.
    pub fn table_rows(&self) -> &[LinearConstraint<T>] {
        &self.constraints[..self.constraints.len() - 1]
    }

    pub fn normalization(&self) -> &LinearConstraint<T> {
        self.constraints.last().expect("normalization row present")
    }

    pub fn lower_bounds(&self) -> &[T] {
        &self.lower
    }

    pub fn upper_bounds(&self) -> &[T] {
        &self.upper
    }

    /// Number of per-cell bound rows (two per cell).
    pub fn bound_row_count(&self) -> usize {
        2 * self.lower.len()
    }

    /// Largest violation of any row or bound at `p`.
    pub fn max_violation(&self, p: &[T]) -> T {
        let rows = self
            .constraints
            .iter()
            .map(|c| c.violation(p))
            .fold(T::zero(), T::max);
        p.iter()
            .zip(&self.lower)
            .zip(&self.upper)
            .map(|((&x, &l), &u)| (l - x).max(x - u).max(T::zero()))
            .fold(rows, T::max)
    }

    /// Every non-normalization row multiplied by `k > 0`.
    pub fn scaled(&self, k: T) -> Self {
        let mut out = self.clone();
        let last = out.constraints.len() - 1;
        for c in &mut out.constraints[..last] {
            *c = c.scaled(k);
        }
        out
    }
}

/// Result of [`optimize`].
#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    Optimal {
        value: T,
        witness: RealDistribution<T>,
    },
    Infeasible,
}

impl<T: Scalar> LpOutcome<T> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Optimal { .. })
    }

    pub fn value(&self) -> Option<T> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(*value),
            LpOutcome::Infeasible => None,
        }
    }

    pub fn witness(&self) -> Option<&RealDistribution<T>> {
        match self {
            LpOutcome::Optimal { witness, .. } => Some(witness),
            LpOutcome::Infeasible => None,
        }
    }
}

/// The constraint system `R(db)` over `ambient`: for each table cell with
/// bounds `[l, u]`, the sum of the ambient cells projecting onto it is
/// bounded below by `l` and above by `u` (one equality when `l = u`).
pub fn constraints_from_database<T: Scalar>(
    db: &Database<T>,
    ambient: &Space,
) -> Result<ConstraintSystem<T>> {
    db.check()?;
    let mut cs = ConstraintSystem::simplex(ambient.clone());
    for table in db.tables() {
        let map = ambient.marginal_map(table.space())?;
        let mut groups: Vec<Vec<(usize, T)>> = vec![Vec::new(); table.len()];
        for (j, &t) in map.iter().enumerate() {
            groups[t].push((j, T::one()));
        }
        for (t, terms) in groups.into_iter().enumerate() {
            let (lo, hi) = table.interval(t);
            if table.is_degenerate_cell(t) {
                cs.push(LinearConstraint::new(terms, Relation::Eq, lo))?;
            } else {
                cs.push(LinearConstraint::new(terms.clone(), Relation::Ge, lo))?;
                cs.push(LinearConstraint::new(terms, Relation::Le, hi))?;
            }
        }
    }
    Ok(cs)
}

/// The set `{p : p ≤ i}`: per-cell bounds from `i` plus normalization.
pub fn constraints_from_box<T: Scalar>(i: &IntervalDistribution<T>) -> Result<ConstraintSystem<T>> {
    i.check()?;
    let mut cs = ConstraintSystem::simplex(i.space().clone());
    cs.set_bounds(i.lower().to_vec(), i.upper().to_vec())?;
    Ok(cs)
}

/// Minimizes or maximizes `objective · p` over `cs`.
pub fn optimize<T: Scalar>(
    cs: &ConstraintSystem<T>,
    objective: &[T],
    direction: Direction,
) -> Result<LpOutcome<T>> {
    let n = cs.space.cell_count();
    if objective.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: objective.len(),
        });
    }
    let mut rows = Vec::with_capacity(cs.constraints.len());
    let mut relations = Vec::with_capacity(cs.constraints.len());
    let mut rhs = Vec::with_capacity(cs.constraints.len());
    for c in &cs.constraints {
        let mut dense = vec![T::zero(); n];
        for &(j, a) in &c.terms {
            dense[j] = dense[j] + a;
        }
        rows.push(dense);
        relations.push(c.relation);
        rhs.push(c.rhs);
    }
    let cost: Vec<T> = match direction {
        Direction::Minimize => objective.to_vec(),
        Direction::Maximize => objective.iter().map(|&c| -c).collect(),
    };
    let lp = simplex::BoundedLp {
        rows: &rows,
        relations: &relations,
        rhs: &rhs,
        lower: &cs.lower,
        upper: &cs.upper,
        cost: &cost,
    };
    match simplex::solve(&lp)? {
        simplex::Solution::Infeasible => Ok(LpOutcome::Infeasible),
        simplex::Solution::Optimal(x) => {
            let x: Vec<T> = x
                .into_iter()
                .zip(&cs.lower)
                .zip(&cs.upper)
                .map(|((v, &l), &u)| v.max(l).min(u))
                .collect();
            let resid = cs.max_violation(&x);
            if resid > T::feasibility_tol() {
                return Err(Error::Internal(format!(
                    "simplex witness violates constraints by {resid}"
                )));
            }
            let value = objective.iter().zip(&x).map(|(&c, &v)| c * v).sum();
            Ok(LpOutcome::Optimal {
                value,
                witness: RealDistribution::unchecked(cs.space.clone(), x),
            })
        }
    }
}

/// Whether the database's real-valued extension is non-empty.
pub fn is_consistent<T: Scalar>(db: &Database<T>) -> Result<bool> {
    let cs = constraints_from_database(db, db.ambient())?;
    let zero = vec![T::zero(); cs.space.cell_count()];
    Ok(optimize(&cs, &zero, Direction::Minimize)?.is_feasible())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{IntervalDistribution, Space};
    use proptest::prelude::*;

    fn xy() -> Space {
        Space::from_domains(&[("X", ["x1", "x2"]), ("Y", ["y1", "y2"])]).unwrap()
    }

    fn xyz() -> Space {
        Space::from_domains(&[
            ("X", ["x1", "x2"]),
            ("Y", ["y1", "y2"]),
            ("Z", ["z1", "z2"]),
        ])
        .unwrap()
    }

    fn table(space: Space, iv: &[(f64, f64)]) -> IntervalDistribution<f64> {
        IntervalDistribution::from_intervals(space, iv).unwrap()
    }

    fn database_d() -> Database<f64> {
        let s = xy();
        Database::new(vec![
            table(s.subspace(&["X"]).unwrap(), &[(0.7, 0.7), (0.3, 0.3)]),
            table(s.subspace(&["Y"]).unwrap(), &[(0.6, 0.6), (0.4, 0.4)]),
        ])
        .unwrap()
    }

    fn database_i() -> Database<f64> {
        let s = xyz();
        Database::new(vec![
            table(
                s.subspace(&["X", "Y"]).unwrap(),
                &[(0.2, 0.6), (0.4, 0.8), (0.0, 0.2), (0.0, 0.1)],
            ),
            table(
                s.subspace(&["Y", "Z"]).unwrap(),
                &[(0.0, 0.3), (0.2, 0.5), (0.1, 0.4), (0.0, 0.2)],
            ),
        ])
        .unwrap()
    }

    fn unit(n: usize, j: usize) -> Vec<f64> {
        let mut c = vec![0.0; n];
        c[j] = 1.0;
        c
    }

    #[test]
    fn database_d_gives_equality_rows() {
        let db = database_d();
        let cs = constraints_from_database(&db, db.ambient()).unwrap();
        assert_eq!(cs.table_rows().len(), 4);
        assert!(cs.table_rows().iter().all(|c| c.relation == Relation::Eq));
        // p(x1 y1) + p(x1 y2) = 0.7
        assert_eq!(cs.table_rows()[0].terms, vec![(0, 1.0), (1, 1.0)]);
        assert_eq!(cs.table_rows()[0].rhs, 0.7);
        let norm = cs.normalization();
        assert_eq!(norm.relation, Relation::Eq);
        assert_eq!(norm.terms.len(), 4);
        assert_eq!(
            cs.constraints()
                .iter()
                .filter(|c| c.terms.len() == 4 && c.relation == Relation::Eq)
                .count(),
            1
        );
    }

    #[test]
    fn interval_database_gives_paired_rows() {
        let db = database_i();
        let cs = constraints_from_database(&db, db.ambient()).unwrap();
        assert_eq!(cs.table_rows().len(), 16);
        // p(x1 y1 z1) + p(x1 y1 z2) ≥ 0.2 and ≤ 0.6
        assert_eq!(cs.table_rows()[0].terms, vec![(0, 1.0), (1, 1.0)]);
        assert_eq!(cs.table_rows()[0].relation, Relation::Ge);
        assert_eq!(cs.table_rows()[0].rhs, 0.2);
        assert_eq!(cs.table_rows()[1].relation, Relation::Le);
        assert_eq!(cs.table_rows()[1].rhs, 0.6);
        // p(x1 y2 z2) + p(x2 y2 z2) ≤ 0.2
        let last = &cs.table_rows()[15];
        assert_eq!(last.terms, vec![(3, 1.0), (7, 1.0)]);
        assert_eq!((last.relation, last.rhs), (Relation::Le, 0.2));
    }

    #[test]
    fn empty_database_is_just_the_simplex() {
        let s = Space::from_domains(&[("X", ["a", "b"])]).unwrap();
        let db: Database<f64> = Database::with_ambient(s.clone(), vec![]).unwrap();
        let cs = constraints_from_database(&db, &s).unwrap();
        assert_eq!(cs.constraints().len(), 1);
        assert_eq!(cs.bound_row_count(), 4);
        assert_eq!(cs.lower_bounds(), &[0.0, 0.0]);
        assert_eq!(cs.upper_bounds(), &[1.0, 1.0]);
    }

    #[test]
    fn ambient_must_cover_tables() {
        let db = database_i();
        let small = xy();
        assert!(matches!(
            constraints_from_database(&db, &small),
            Err(Error::UnknownVariable(v)) if v == "Z"
        ));
    }

    #[test]
    fn box_system_shapes() {
        let i = table(
            xyz(),
            &[
                (0.0, 0.3),
                (0.0, 0.5),
                (0.2, 0.4),
                (0.0, 0.2),
                (0.0, 0.2),
                (0.0, 0.2),
                (0.0, 0.1),
                (0.0, 0.1),
            ],
        );
        let cs = constraints_from_box(&i).unwrap();
        assert_eq!(cs.bound_row_count(), 16);
        assert_eq!(cs.constraints().len(), 1);
        assert_eq!(cs.upper_bounds()[7], 0.1);

        let p = table(xy(), &[(0.1, 0.1), (0.2, 0.2), (0.3, 0.3), (0.4, 0.4)]);
        let cs = constraints_from_box(&p).unwrap();
        for j in 0..4 {
            let lo = optimize(&cs, &unit(4, j), Direction::Minimize)
                .unwrap()
                .value()
                .unwrap();
            let hi = optimize(&cs, &unit(4, j), Direction::Maximize)
                .unwrap()
                .value()
                .unwrap();
            assert!((lo - p.lower()[j]).abs() < 1e-12 && (hi - p.lower()[j]).abs() < 1e-12);
        }

        let vac = table(xy(), &[(0.0, 1.0); 4]);
        let cs = constraints_from_box(&vac).unwrap();
        assert_eq!(cs, ConstraintSystem::simplex(xy()));
    }

    #[test]
    fn optimize_database_d_cell_bounds() {
        let db = database_d();
        let cs = constraints_from_database(&db, db.ambient()).unwrap();
        let hi = optimize(&cs, &unit(4, 0), Direction::Maximize).unwrap();
        let lo = optimize(&cs, &unit(4, 0), Direction::Minimize).unwrap();
        assert!((hi.value().unwrap() - 0.6).abs() < 1e-9);
        assert!((lo.value().unwrap() - 0.3).abs() < 1e-9);
        for out in [hi, lo] {
            let w = out.witness().unwrap();
            assert!(cs.max_violation(w.probs()) <= 1e-9);
            assert!((w.prob(0) - out.value().unwrap()).abs() <= 1e-9);
        }
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let mut cs = ConstraintSystem::<f64>::simplex(xy());
        cs.push(LinearConstraint::new(vec![(0, 1.0)], Relation::Ge, 0.8))
            .unwrap();
        cs.push(LinearConstraint::new(vec![(0, 1.0)], Relation::Le, 0.2))
            .unwrap();
        for dir in [Direction::Minimize, Direction::Maximize] {
            assert_eq!(
                optimize(&cs, &unit(4, 2), dir).unwrap(),
                LpOutcome::Infeasible
            );
        }
    }

    #[test]
    fn objective_length_is_checked() {
        let cs = ConstraintSystem::<f64>::simplex(xy());
        assert!(matches!(
            optimize(&cs, &[1.0], Direction::Minimize),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn consistency_examples() {
        assert!(is_consistent(&database_d()).unwrap());
        assert!(is_consistent(&database_i()).unwrap());
        let x = Space::from_domains(&[("X", ["x1", "x2"])]).unwrap();
        let db = Database::new(vec![
            table(x.clone(), &[(0.7, 0.7), (0.3, 0.3)]),
            table(x, &[(0.2, 0.2), (0.8, 0.8)]),
        ])
        .unwrap();
        assert!(!is_consistent(&db).unwrap());
    }

    #[test]
    fn degenerate_rows_with_redundancy() {
        // two identical equality tables: redundant rows must not upset phase one
        let s = xy();
        let p = table(s.clone(), &[(0.1, 0.1), (0.2, 0.2), (0.3, 0.3), (0.4, 0.4)]);
        let db = Database::new(vec![p.clone(), p]).unwrap();
        let cs = constraints_from_database(&db, &s).unwrap();
        let out = optimize(&cs, &unit(4, 3), Direction::Maximize).unwrap();
        assert!((out.value().unwrap() - 0.4).abs() < 1e-12);
    }

    // Exhaustive vertex enumeration: every choice of n tight rows/bounds,
    // solved by Gaussian elimination, filtered for feasibility.
    fn vertex_oracle(cs: &ConstraintSystem<f64>, c: &[f64], dir: Direction) -> Option<f64> {
        let n = cs.space().cell_count();
        let mut hyper: Vec<(Vec<f64>, f64)> = Vec::new();
        for r in cs.constraints() {
            let mut a = vec![0.0; n];
            for &(j, v) in &r.terms {
                a[j] += v;
            }
            hyper.push((a, r.rhs));
        }
        for j in 0..n {
            hyper.push((unit(n, j), cs.lower_bounds()[j]));
            hyper.push((unit(n, j), cs.upper_bounds()[j]));
        }
        let mut best: Option<f64> = None;
        let k = hyper.len();
        let mut idx: Vec<usize> = (0..n).collect();
        loop {
            if let Some(x) =
                solve_square(&idx.iter().map(|&i| hyper[i].clone()).collect::<Vec<_>>())
            {
                if cs.max_violation(&x) < 1e-9 {
                    let v: f64 = c.iter().zip(&x).map(|(a, b)| a * b).sum();
                    best = Some(match (best, dir) {
                        (None, _) => v,
                        (Some(b), Direction::Maximize) => b.max(v),
                        (Some(b), Direction::Minimize) => b.min(v),
                    });
                }
            }
            // next combination
            let mut i = n;
            loop {
                if i == 0 {
                    return best;
                }
                i -= 1;
                if idx[i] < k - n + i {
                    break;
                }
            }
            idx[i] += 1;
            for m in i + 1..n {
                idx[m] = idx[m - 1] + 1;
            }
        }
    }

    fn solve_square(rows: &[(Vec<f64>, f64)]) -> Option<Vec<f64>> {
        let n = rows.len();
        let mut a: Vec<Vec<f64>> = rows
            .iter()
            .map(|(r, b)| {
                let mut v = r.clone();
                v.push(*b);
                v
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
            if a[piv][col].abs() < 1e-12 {
                return None;
            }
            a.swap(col, piv);
            for r in 0..n {
                if r != col {
                    let f = a[r][col] / a[col][col];
                    let pivot_row = a[col].clone();
                    for (x, y) in a[r][col..].iter_mut().zip(&pivot_row[col..]) {
                        *x -= f * y;
                    }
                }
            }
        }
        Some((0..n).map(|i| a[i][n] / a[i][i]).collect())
    }

    fn random_system() -> impl Strategy<Value = (ConstraintSystem<f64>, Vec<f64>)> {
        (2usize..=5)
            .prop_flat_map(|n| {
                (
                    Just(n),
                    prop::collection::vec(
                        (
                            prop::collection::vec(0.0f64..2.0, n),
                            0usize..3,
                            0.0f64..1.2,
                        ),
                        0..3,
                    ),
                    prop::collection::vec(-1.0f64..1.0, n),
                )
            })
            .prop_map(|(n, rows, obj)| {
                let labels: Vec<String> = (0..n).map(|k| format!("c{k}")).collect();
                let space = Space::from_domains(&[("V", labels)]).unwrap();
                let mut cs = ConstraintSystem::simplex(space);
                for (coef, rel, rhs) in rows {
                    let rel = [Relation::Ge, Relation::Le, Relation::Eq][rel];
                    let terms = coef.into_iter().enumerate().collect();
                    cs.push(LinearConstraint::new(terms, rel, rhs)).unwrap();
                }
                (cs, obj)
            })
    }

    // coarse lattice over the simplex, used only as a one-sided bound
    fn grid_oracle(cs: &ConstraintSystem<f64>, c: &[f64], steps: usize) -> Option<f64> {
        let n = cs.space().cell_count();
        let mut best: Option<f64> = None;
        let mut k = vec![0usize; n];
        fn rec(pos: usize, left: usize, k: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
            if pos + 1 == k.len() {
                k[pos] = left;
                f(k);
                return;
            }
            for v in 0..=left {
                k[pos] = v;
                rec(pos + 1, left - v, k, f);
            }
        }
        rec(0, steps, &mut k, &mut |k| {
            let x: Vec<f64> = k.iter().map(|&v| v as f64 / steps as f64).collect();
            if cs.max_violation(&x) <= 1e-12 {
                let v: f64 = c.iter().zip(&x).map(|(a, b)| a * b).sum();
                best = Some(best.map_or(v, |b: f64| b.max(v)));
            }
        });
        best
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn optimize_matches_vertex_enumeration((cs, obj) in random_system()) {
            for dir in [Direction::Minimize, Direction::Maximize] {
                let out = optimize(&cs, &obj, dir).unwrap();
                let oracle = vertex_oracle(&cs, &obj, dir);
                match (&out, oracle) {
                    (LpOutcome::Optimal { value, witness }, Some(o)) => {
                        prop_assert!((value - o).abs() < 1e-6, "lp {} oracle {}", value, o);
                        prop_assert!(cs.max_violation(witness.probs()) <= 1e-9);
                        let v: f64 = obj.iter().zip(witness.probs()).map(|(a, b)| a * b).sum();
                        prop_assert!((v - value).abs() <= 1e-9);
                    }
                    (LpOutcome::Infeasible, None) => {}
                    (o, orc) => prop_assert!(false, "lp {:?} vs oracle {:?}", o, orc),
                }
            }
        }

        #[test]
        fn grid_never_beats_lp((cs, obj) in random_system()) {
            if cs.space().cell_count() <= 3 {
                if let (Some(g), LpOutcome::Optimal { value, .. }) =
                    (grid_oracle(&cs, &obj, 1000), optimize(&cs, &obj, Direction::Maximize).unwrap())
                {
                    prop_assert!(g <= value + 1e-9);
                }
            }
        }

        #[test]
        fn row_scaling_leaves_optimum((cs, obj) in random_system(), k in 0.1f64..10.0) {
            let a = optimize(&cs, &obj, Direction::Maximize).unwrap();
            let b = optimize(&cs.scaled(k), &obj, Direction::Maximize).unwrap();
            match (a.value(), b.value()) {
                (Some(x), Some(y)) => prop_assert!((x - y).abs() <= 1e-9),
                (None, None) => {}
                (x, y) => prop_assert!(false, "{:?} vs {:?}", x, y),
            }
        }

        #[test]
        fn single_cell_min_le_max((cs, _obj) in random_system(), j in 0usize..2) {
            let n = cs.space().cell_count();
            let c = unit(n, j);
            if let (Some(lo), Some(hi)) = (
                optimize(&cs, &c, Direction::Minimize).unwrap().value(),
                optimize(&cs, &c, Direction::Maximize).unwrap().value(),
            ) {
                prop_assert!(lo <= hi + 1e-12);
                prop_assert!((-1e-12..=1.0 + 1e-12).contains(&lo));
                prop_assert!((-1e-12..=1.0 + 1e-12).contains(&hi));
            }
        }
    }
}
