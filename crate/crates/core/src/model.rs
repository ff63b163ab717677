//! Variables, spaces, distributions, databases and schemes.
//!
//! Cells of a [`Space`] are enumerated in row-major lexicographic order of
//! domain indices, first variable slowest. Every table, file and LP in the
//! crate uses this order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A set of variable names.
pub type VarSet = BTreeSet<String>;

/// Builds a [`VarSet`] from anything yielding names.
pub fn var_set<I, S>(names: I) -> VarSet
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    names.into_iter().map(Into::into).collect()
}

/// A named variable with a finite ordered domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variable {
    name: String,
    domain: Vec<String>,
}

impl Variable {
    pub fn new<N, I, S>(name: N, domain: I) -> Result<Self>
    where
        N: Into<String>,
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::InvalidVariable("empty variable name".into()));
        }
        let domain: Vec<String> = domain.into_iter().map(Into::into).collect();
        if domain.is_empty() {
            return Err(Error::InvalidVariable(format!(
                "`{name}` has an empty domain"
            )));
        }
        let mut seen = BTreeSet::new();
        for label in &domain {
            if label.is_empty() {
                return Err(Error::InvalidVariable(format!(
                    "`{name}` has an empty label"
                )));
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel {
                    variable: name,
                    label: label.clone(),
                });
            }
        }
        Ok(Self { name, domain })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn size(&self) -> usize {
        self.domain.len()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.domain.iter().position(|l| l == label)
    }
}

/// Ordered list of variables and the cartesian product of their domains.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Space {
    variables: Vec<Variable>,
    strides: Vec<usize>,
    cell_count: usize,
}

impl Space {
    pub fn new(variables: Vec<Variable>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &variables {
            if !seen.insert(v.name()) {
                return Err(Error::DuplicateVariable(v.name().to_string()));
            }
        }
        let mut strides = vec![1; variables.len()];
        for k in (0..variables.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * variables[k + 1].size();
        }
        let cell_count = variables.iter().map(Variable::size).product();
        Ok(Self {
            variables,
            strides,
            cell_count,
        })
    }

    /// Convenience constructor from `(name, labels)` pairs.
    pub fn from_domains<N, L, S>(domains: &[(N, L)]) -> Result<Self>
    where
        N: AsRef<str>,
        L: AsRef<[S]>,
        S: AsRef<str>,
    {
        let vars = domains
            .iter()
            .map(|(n, labels)| {
                Variable::new(n.as_ref(), labels.as_ref().iter().map(|s| s.as_ref()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vars)
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn cell_count(&self) -> usize {
        self.cell_count
    }

    pub fn names(&self) -> impl Iterator<Item = &str> + '_ {
        self.variables.iter().map(Variable::name)
    }

    pub fn var_set(&self) -> VarSet {
        var_set(self.names())
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name() == name)
    }

    pub fn variable(&self, name: &str) -> Option<&Variable> {
        self.variables.iter().find(|v| v.name() == name)
    }

    pub fn cell_index<S: AsRef<str>>(&self, tuple: &[S]) -> Result<usize> {
        if tuple.len() != self.variables.len() {
            return Err(Error::TupleLength {
                expected: self.variables.len(),
                got: tuple.len(),
            });
        }
        let mut index = 0;
        for ((var, stride), label) in self.variables.iter().zip(&self.strides).zip(tuple) {
            let label = label.as_ref();
            let k = var.label_index(label).ok_or_else(|| Error::UnknownLabel {
                variable: var.name().to_string(),
                label: label.to_string(),
            })?;
            index += k * stride;
        }
        Ok(index)
    }

    /// Labels of the cell at `index`. Panics if `index` is out of range.
    pub fn cell_tuple(&self, index: usize) -> Vec<&str> {
        self.cell_digits(index)
            .into_iter()
            .zip(&self.variables)
            .map(|(k, v)| v.domain[k].as_str())
            .collect()
    }

    /// Domain indices of the cell at `index`.
    pub fn cell_digits(&self, index: usize) -> Vec<usize> {
        assert!(index < self.cell_count, "cell index {index} out of range");
        self.variables
            .iter()
            .zip(&self.strides)
            .map(|(v, s)| (index / s) % v.size())
            .collect()
    }

    pub(crate) fn cell_label(&self, index: usize) -> String {
        if self.variables.is_empty() {
            return "()".into();
        }
        self.cell_tuple(index).join(" ")
    }

    /// The space over `names`, in the order given.
    pub fn subspace<S: AsRef<str>>(&self, names: &[S]) -> Result<Space> {
        let vars = names
            .iter()
            .map(|n| {
                self.variable(n.as_ref())
                    .cloned()
                    .ok_or_else(|| Error::UnknownVariable(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Space::new(vars)
    }

    /// The space over `set`, keeping this space's variable order.
    pub fn restrict(&self, set: &VarSet) -> Result<Space> {
        if set.is_empty() {
            return Err(Error::EmptyVariableSet);
        }
        if let Some(unknown) = set.iter().find(|n| self.position(n).is_none()) {
            return Err(Error::UnknownVariable(unknown.clone()));
        }
        let names: Vec<&str> = self.names().filter(|n| set.contains(*n)).collect();
        self.subspace(&names)
    }

    /// For every cell of `self`, the index of the `sub` cell it projects onto.
    ///
    /// Every variable of `sub` must appear in `self` with an identical domain.
    pub fn marginal_map(&self, sub: &Space) -> Result<Vec<usize>> {
        let mut positions = Vec::with_capacity(sub.variables.len());
        for v in &sub.variables {
            let p = self
                .position(v.name())
                .ok_or_else(|| Error::UnknownVariable(v.name().to_string()))?;
            if self.variables[p].domain != v.domain {
                return Err(Error::SpaceMismatch);
            }
            positions.push(p);
        }
        Ok((0..self.cell_count)
            .map(|j| {
                let digits = self.cell_digits(j);
                positions
                    .iter()
                    .zip(&sub.strides)
                    .map(|(&p, s)| digits[p] * s)
                    .sum()
            })
            .collect())
    }
}

/// A list of variable subsets, normalized to an antichain and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scheme {
    subsets: Vec<VarSet>,
}

impl Scheme {
    pub fn new<I, J, S>(subsets: I) -> Result<Self>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let raw: Vec<VarSet> = subsets.into_iter().map(var_set).collect();
        if raw.iter().any(BTreeSet::is_empty) {
            return Err(Error::InvalidScheme("empty subset".into()));
        }
        Ok(Self::from_sets(raw))
    }

    fn from_sets(raw: Vec<VarSet>) -> Self {
        let mut kept: Vec<VarSet> = Vec::new();
        for (k, s) in raw.iter().enumerate() {
            let dominated = raw
                .iter()
                .enumerate()
                .any(|(m, t)| m != k && s.is_subset(t) && (s != t || m < k));
            if !dominated {
                kept.push(s.clone());
            }
        }
        kept.sort();
        Self { subsets: kept }
    }

    pub fn subsets(&self) -> &[VarSet] {
        &self.subsets
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    /// Union of all subsets.
    pub fn variables(&self) -> VarSet {
        self.subsets.iter().flatten().cloned().collect()
    }

    /// Errors unless every subset names variables of `space`.
    pub fn check_over(&self, space: &Space) -> Result<()> {
        if self.is_empty() {
            return Err(Error::InvalidScheme("scheme has no subsets".into()));
        }
        match self
            .variables()
            .into_iter()
            .find(|n| space.position(n).is_none())
        {
            Some(n) => Err(Error::UnknownVariable(n)),
            None => Ok(()),
        }
    }

    /// `self ≤ other`: every subset of `self` lies inside some subset of `other`.
    pub fn is_refinement_of(&self, other: &Scheme) -> bool {
        self.subsets
            .iter()
            .all(|x| other.subsets.iter().any(|y| x.is_subset(y)))
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .subsets
            .iter()
            .map(|s| s.iter().cloned().collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&parts.join("|"))
    }
}

/// Parses `"A,B|B,C"`: subsets separated by `|`, variables by `,`.
impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let subsets: Vec<Vec<String>> = s
            .split('|')
            .map(|part| {
                part.split(',')
                    .map(str::trim)
                    .filter(|n| !n.is_empty())
                    .map(String::from)
                    .collect()
            })
            .collect();
        if subsets.iter().any(Vec::is_empty) {
            return Err(Error::InvalidScheme(format!(
                "`{s}` contains an empty subset"
            )));
        }
        Scheme::new(subsets)
    }
}

/// A definitional problem found by validation.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    OutOfRange {
        table: Option<usize>,
        cell: String,
        value: f64,
    },
    LowerAboveUpper {
        table: Option<usize>,
        cell: String,
        lower: f64,
        upper: f64,
    },
    LowerSumAboveOne {
        table: Option<usize>,
        sum: f64,
    },
    UpperSumBelowOne {
        table: Option<usize>,
        sum: f64,
    },
    DomainConflict {
        table: usize,
        variable: String,
    },
    MissingKey {
        table: Option<usize>,
        cell: String,
    },
    DuplicateKey {
        table: Option<usize>,
        cell: String,
    },
}

impl Violation {
    fn with_table(self, t: usize) -> Self {
        use Violation::*;
        match self {
            OutOfRange { cell, value, .. } => OutOfRange {
                table: Some(t),
                cell,
                value,
            },
            LowerAboveUpper {
                cell, lower, upper, ..
            } => LowerAboveUpper {
                table: Some(t),
                cell,
                lower,
                upper,
            },
            LowerSumAboveOne { sum, .. } => LowerSumAboveOne {
                table: Some(t),
                sum,
            },
            UpperSumBelowOne { sum, .. } => UpperSumBelowOne {
                table: Some(t),
                sum,
            },
            MissingKey { cell, .. } => MissingKey {
                table: Some(t),
                cell,
            },
            DuplicateKey { cell, .. } => DuplicateKey {
                table: Some(t),
                cell,
            },
            other => other,
        }
    }
}

struct TablePrefix(Option<usize>);

impl fmt::Display for TablePrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(t) => write!(f, "table {t}: "),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            OutOfRange { table, cell, value } => write!(
                f,
                "{}cell ({cell}): endpoint {value} outside [0,1]",
                TablePrefix(*table)
            ),
            LowerAboveUpper {
                table,
                cell,
                lower,
                upper,
            } => write!(
                f,
                "{}cell ({cell}): lower > upper ({lower} > {upper})",
                TablePrefix(*table)
            ),
            LowerSumAboveOne { table, sum } => {
                write!(f, "{}Σ lower > 1 (Σ lower = {sum})", TablePrefix(*table))
            }
            UpperSumBelowOne { table, sum } => {
                write!(f, "{}Σ upper < 1 (Σ upper = {sum})", TablePrefix(*table))
            }
            DomainConflict { table, variable } => write!(
                f,
                "table {table}: domain of `{variable}` disagrees with other tables"
            ),
            MissingKey { table, cell } => {
                write!(f, "{}row for cell ({cell}) is missing", TablePrefix(*table))
            }
            DuplicateKey { table, cell } => {
                write!(
                    f,
                    "{}row for cell ({cell}) appears twice",
                    TablePrefix(*table)
                )
            }
        }
    }
}

/// Per-cell `[lower, upper]` probability bounds over a [`Space`].
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalDistribution<T> {
    space: Space,
    lower: Vec<T>,
    upper: Vec<T>,
}

impl<T: Scalar> IntervalDistribution<T> {
    /// Checks shape and finiteness only; see [`Self::violations`] for the
    /// probability invariants.
    pub fn new(space: Space, lower: Vec<T>, upper: Vec<T>) -> Result<Self> {
        for v in [&lower, &upper] {
            if v.len() != space.cell_count() {
                return Err(Error::LengthMismatch {
                    expected: space.cell_count(),
                    got: v.len(),
                });
            }
        }
        if lower.iter().chain(&upper).any(|x| !x.is_finite()) {
            return Err(Error::Parse("non-finite interval endpoint".into()));
        }
        Ok(Self {
            space,
            lower,
            upper,
        })
    }

    pub fn from_intervals(space: Space, intervals: &[(T, T)]) -> Result<Self> {
        let (lower, upper) = intervals.iter().copied().unzip();
        Self::new(space, lower, upper)
    }

    /// Like [`Self::new`] but also rejects any invariant violation.
    pub fn checked(space: Space, lower: Vec<T>, upper: Vec<T>) -> Result<Self> {
        let i = Self::new(space, lower, upper)?;
        i.check()?;
        Ok(i)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn lower(&self) -> &[T] {
        &self.lower
    }

    pub fn upper(&self) -> &[T] {
        &self.upper
    }

    pub fn interval(&self, j: usize) -> (T, T) {
        (self.lower[j], self.upper[j])
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn intervals(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.lower.iter().copied().zip(self.upper.iter().copied())
    }

    pub fn is_degenerate_cell(&self, j: usize) -> bool {
        self.upper[j] - self.lower[j] <= T::feasibility_tol()
    }

    pub fn is_degenerate(&self) -> bool {
        (0..self.len()).all(|j| self.is_degenerate_cell(j))
    }

    pub fn violations(&self) -> Vec<Violation> {
        let tol = T::feasibility_tol();
        let mut out = Vec::new();
        for (j, (lo, hi)) in self.intervals().enumerate() {
            for x in [lo, hi] {
                if x < T::zero() || x > T::one() {
                    out.push(Violation::OutOfRange {
                        table: None,
                        cell: self.space.cell_label(j),
                        value: x.to_f64_lossy(),
                    });
                }
            }
            if lo > hi {
                out.push(Violation::LowerAboveUpper {
                    table: None,
                    cell: self.space.cell_label(j),
                    lower: lo.to_f64_lossy(),
                    upper: hi.to_f64_lossy(),
                });
            }
        }
        let lo_sum: T = self.lower.iter().copied().sum();
        let hi_sum: T = self.upper.iter().copied().sum();
        if lo_sum > T::one() + tol {
            out.push(Violation::LowerSumAboveOne {
                table: None,
                sum: lo_sum.to_f64_lossy(),
            });
        }
        if hi_sum < T::one() - tol {
            out.push(Violation::UpperSumBelowOne {
                table: None,
                sum: hi_sum.to_f64_lossy(),
            });
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(v))
        }
    }

    /// `self ≤ other`: every interval of `self` lies within the matching
    /// interval of `other`.
    pub fn is_more_informative_than(&self, other: &Self) -> Result<bool> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(self
            .intervals()
            .zip(other.intervals())
            .all(|((l, u), (l2, u2))| l2 <= l && u <= u2))
    }

    /// Same test with `tol` slack on each endpoint.
    pub fn is_within(&self, other: &Self, tol: T) -> Result<bool> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(self
            .intervals()
            .zip(other.intervals())
            .all(|((l, u), (l2, u2))| l2 - tol <= l && u <= u2 + tol))
    }

    /// Largest endpoint difference against `other`.
    pub fn max_endpoint_diff(&self, other: &Self) -> Result<T> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(self
            .intervals()
            .zip(other.intervals())
            .map(|((l, u), (l2, u2))| (l - l2).abs().max((u - u2).abs()))
            .fold(T::zero(), T::max))
    }
}

impl<T: Scalar> From<&RealDistribution<T>> for IntervalDistribution<T> {
    fn from(p: &RealDistribution<T>) -> Self {
        p.to_interval()
    }
}

/// Per-cell real probabilities over a [`Space`].
#[derive(Debug, Clone, PartialEq)]
pub struct RealDistribution<T> {
    space: Space,
    p: Vec<T>,
}

impl<T: Scalar> RealDistribution<T> {
    pub fn new(space: Space, p: Vec<T>) -> Result<Self> {
        if p.len() != space.cell_count() {
            return Err(Error::LengthMismatch {
                expected: space.cell_count(),
                got: p.len(),
            });
        }
        if let Some(j) = p.iter().position(|x| !x.is_finite() || *x < T::zero()) {
            return Err(Error::InvalidReal(format!(
                "cell ({}) has probability {}",
                space.cell_label(j),
                p[j]
            )));
        }
        let total: T = p.iter().copied().sum();
        if (total - T::one()).abs() > T::feasibility_tol() {
            return Err(Error::InvalidReal(format!("probabilities sum to {total}")));
        }
        Ok(Self { space, p })
    }

    /// Uniform distribution.
    pub fn uniform(space: Space) -> Self {
        let n = T::from_usize(space.cell_count()).expect("cell count fits in scalar");
        let p = vec![T::one() / n; space.cell_count()];
        Self { space, p }
    }

    /// Reads a degenerate interval distribution as a real one.
    pub fn from_degenerate(i: &IntervalDistribution<T>) -> Result<Self> {
        if !i.is_degenerate() {
            return Err(Error::NotRealValued);
        }
        Self::new(i.space().clone(), i.lower().to_vec())
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn probs(&self) -> &[T] {
        &self.p
    }

    pub fn prob(&self, j: usize) -> T {
        self.p[j]
    }

    pub fn into_probs(self) -> Vec<T> {
        self.p
    }

    /// The degenerate interval distribution `[p, p]`.
    pub fn to_interval(&self) -> IntervalDistribution<T> {
        IntervalDistribution {
            space: self.space.clone(),
            lower: self.p.clone(),
            upper: self.p.clone(),
        }
    }

    pub(crate) fn unchecked(space: Space, p: Vec<T>) -> Self {
        Self { space, p }
    }
}

/// A collection of marginal tables over subsets of an ambient space.
///
/// Real-valued tables are stored as degenerate intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct Database<T> {
    ambient: Space,
    tables: Vec<IntervalDistribution<T>>,
}

impl<T: Scalar> Database<T> {
    /// The ambient space is the union of the tables' variables, in order of
    /// first appearance.
    pub fn new(tables: Vec<IntervalDistribution<T>>) -> Result<Self> {
        let mut vars: Vec<Variable> = Vec::new();
        for t in &tables {
            for v in t.space().variables() {
                if !vars.iter().any(|w| w.name() == v.name()) {
                    vars.push(v.clone());
                }
            }
        }
        Self::with_ambient(Space::new(vars)?, tables)
    }

    pub fn with_ambient(ambient: Space, tables: Vec<IntervalDistribution<T>>) -> Result<Self> {
        for t in &tables {
            if t.space().variables().is_empty() {
                return Err(Error::EmptyVariableSet);
            }
            if let Some(n) = t.space().names().find(|n| ambient.position(n).is_none()) {
                return Err(Error::UnknownVariable(n.to_string()));
            }
        }
        Ok(Self { ambient, tables })
    }

    pub fn ambient(&self) -> &Space {
        &self.ambient
    }

    pub fn tables(&self) -> &[IntervalDistribution<T>] {
        &self.tables
    }

    pub fn is_real_valued(&self) -> bool {
        self.tables.iter().all(IntervalDistribution::is_degenerate)
    }

    /// Every definitional problem of every table, plus domain disagreements
    /// with the ambient space.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (t, table) in self.tables.iter().enumerate() {
            for v in table.space().variables() {
                if self.ambient.variable(v.name()) != Some(v) {
                    out.push(Violation::DomainConflict {
                        table: t,
                        variable: v.name().to_string(),
                    });
                }
            }
            out.extend(table.violations().into_iter().map(|v| v.with_table(t)));
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(v))
        }
    }
}

/// Free-function form of [`Database::validate`].
pub fn validate<T: Scalar>(db: &Database<T>) -> Vec<Violation> {
    db.validate()
}
