//! Exact rationals, sparse Laurent polynomials, rational functions and their
//! text/JSON forms.

mod json;
mod laurent;
mod monomial;
mod parse;
mod ratfunc;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

pub use json::{PolynomialJson, RationalFunctionJson, TermJson};
pub use laurent::LaurentPolynomial;
pub use monomial::ExponentVector;
pub use parse::{parse, parse_polynomial};
pub use ratfunc::RationalFunction;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// A point of affine space with exact coordinates.
pub type Point = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable x{index} at position {pos} is out of range (nvars = {nvars})")]
    VariableOutOfRange { pos: usize, index: usize, nvars: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at evaluation point")]
    PoleAtPoint,
    #[error("expected {expected} variables, found {found}")]
    NvarsMismatch { expected: usize, found: usize },
    #[error("expression is not a Laurent polynomial")]
    NotLaurent,
    #[error("invalid rational number {0:?}")]
    InvalidRational(String),
    #[error("term budget exceeded: {terms} terms (limit {limit})")]
    TermBudgetExceeded { terms: usize, limit: usize },
}

/// Parses `"p/q"`, `"-p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let bad = || ArithError::InvalidRational(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Parses a comma-separated list of rationals such as `1,5/2,-3`.
pub fn parse_point(s: &str) -> Result<Point, ArithError> {
    s.split(',').map(parse_rational).collect()
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Integer points as exact rationals.
pub fn point(coords: &[i64]) -> Point {
    coords.iter().map(|&c| rational(c)).collect()
}

pub fn format_point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(","))
}
