use thiserror::Error;

use crate::model::Violation;

/// Crate-wide result type.
pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid variable: {0}")]
    InvalidVariable(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{variable}` lists label `{label}` more than once")]
    DuplicateLabel { variable: String, label: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("label `{label}` is not in the domain of variable `{variable}`")]
    UnknownLabel { variable: String, label: String },
    #[error("expected a tuple of {expected} labels, got {got}")]
    TupleLength { expected: usize, got: usize },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("distributions are defined over different spaces")]
    SpaceMismatch,
    #[error("variable set must not be empty")]
    EmptyVariableSet,
    #[error("variable sets overlap on `{0}`")]
    OverlappingSets(String),
    #[error("real-valued distribution is invalid: {0}")]
    InvalidReal(String),
    #[error("{}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("database is inconsistent: its constraint system has no feasible point")]
    Inconsistent,
    #[error("no real-valued distribution lies within the intervals")]
    EmptyBox,
    #[error("kl divergence undefined: q is zero at cell {cell} where p is {p}")]
    SupportViolation { cell: usize, p: f64 },
    #[error("operation requires degenerate (real-valued) tables")]
    NotRealValued,
    #[error("iterative proportional fitting did not converge after {iterations} sweeps (max deviation {deviation:e})")]
    IpfDidNotConverge { iterations: usize, deviation: f64 },
    #[error("exponential enumeration refused: {what} is {size}, cap is {cap}")]
    EnumerationRefused {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("invalid scheme: {0}")]
    InvalidScheme(String),
    #[error("internal solver error: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
