//! Polynomials vanishing on orbits: monomial evaluation matrices, exact
//! nullspaces, component detection by residue class, and dimension
//! estimates.

mod basis;
mod components;
pub mod linalg;
mod space;

use thiserror::Error;

use crate::cluster::ClusterError;
use crate::orbit::OrbitError;

pub use basis::{EvaluationMatrix, MonomialBasis};
pub use components::{
    detect_components, dimension_estimate, pullback_numerator, ClassReport, ComponentDecomposition,
    ComponentReport, DimensionEstimate,
};
pub use space::{
    canonical_span, ideal_generators, nullspace, stabilized_vanishing_space, truncated_ideal_span,
    vanishing_space_on, VanishingSpace,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarietyError {
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error("stride must be at least 1")]
    InvalidStride,
    #[error("point does not lie on the variety")]
    PointNotOnVariety,
    #[error("point has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}
