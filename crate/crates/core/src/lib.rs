//! Interval-valued probability distributions over finite multivariate
//! spaces.
//!
//! The crate computes joint interval extensions of (interval) probabilistic
//! databases by linear programming, projects interval distributions onto
//! database schemes and reconstructs them, and evaluates the uncertainty
//! measures `u₀`, `u₁`, `u₂` and the `d₀` metric used to rank schemes by
//! information loss.
//!
//! All numeric code is generic over [`Scalar`] (`f64` or `f32`); the
//! `*F64` aliases below cover the common case.
//!
//! ```
//! use ivprob::{extension_star, DatabaseF64, IntervalDistributionF64, Space};
//!
//! let xy = Space::from_domains(&[("X", ["x1", "x2"]), ("Y", ["y1", "y2"])]).unwrap();
//! let px = IntervalDistributionF64::from_intervals(
//!     xy.subspace(&["X"]).unwrap(), &[(0.7, 0.7), (0.3, 0.3)]).unwrap();
//! let py = IntervalDistributionF64::from_intervals(
//!     xy.subspace(&["Y"]).unwrap(), &[(0.6, 0.6), (0.4, 0.4)]).unwrap();
//! let db = DatabaseF64::new(vec![px, py]).unwrap();
//! let joint = extension_star(&db).unwrap();
//! assert!((joint.upper()[0] - 0.6).abs() < 1e-9);
//! ```

pub mod cli;
pub mod document;
pub mod entropy;
pub mod error;
pub mod extension;
pub mod measures;
pub mod model;
pub mod polytope;
pub mod scalar;

pub use entropy::{
    box_maxent, box_minent, conditional_entropy, kl_divergence, maxent_ipf, measure_u1, measure_u2,
    mvd_strength, shannon_entropy,
};
pub use error::{Error, Result};
pub use extension::{
    extension_star, joint_intervals, project_database, project_interval, project_real, reconstruct,
    tighten, Reconstruction,
};
pub use measures::{
    distance_d0, enumerate_schemes, information_loss, is_refinement, measure_u0, rank_schemes,
    SchemeReport,
};
pub use model::{
    validate, var_set, Database, IntervalDistribution, RealDistribution, Scheme, Space, VarSet,
    Variable, Violation,
};
pub use polytope::{
    constraints_from_box, constraints_from_database, is_consistent, optimize, ConstraintSystem,
    Direction, LinearConstraint, LpOutcome, Relation,
};
pub use scalar::Scalar;

pub type IntervalDistributionF64 = IntervalDistribution<f64>;
pub type RealDistributionF64 = RealDistribution<f64>;
pub type DatabaseF64 = Database<f64>;
pub type SchemeReportF64 = SchemeReport<f64>;

pub type IntervalDistributionF32 = IntervalDistribution<f32>;
pub type RealDistributionF32 = RealDistribution<f32>;
pub type DatabaseF32 = Database<f32>;
pub type SchemeReportF32 = SchemeReport<f32>;
