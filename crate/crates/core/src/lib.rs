//! Budgeted measures of noncompactness and equicontinuity characteristics
//! for finite families of vector-valued functions.

pub mod certificates;
pub mod checks;
pub mod ck;
pub mod digest;
pub mod error;
pub mod examples;
pub mod family;
pub mod measures;
pub mod normed;
pub mod random;

pub use error::{Error, Result};
pub use measures::{
    alpha_budget, beta_sep, gamma_budget, BoundKind, Budget, BudgetedValue, Caps, Mode, Partition, SolverConfig,
    Witness,
};
pub use normed::{NormTag, PointSet, SpaceTag, Tolerance, Vector};
