//! Generalized frieze varieties of acyclic quivers, computed exactly.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: rationals, sparse Laurent polynomials, rational functions.
//! - [`quiver`]: exchange matrices, mutation, representation type, symmetry.
//! - [`cluster`]: symbolic cluster variables and Coxeter mutation.
//! - [`orbit`]: numeric Coxeter orbits of a start point.
//! - [`variety`]: vanishing spaces, component decomposition, dimension.
//! - [`invariants`]: invariant Laurent polynomials and component equations.

pub mod arith;
pub mod cluster;
pub mod invariants;
pub mod orbit;
pub mod quiver;
pub mod variety;

mod budget;

pub use budget::Budget;
