//! Invariant Laurent polynomials under powers of Coxeter mutation and the
//! component equations they produce.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{ArithError, ExponentVector, LaurentPolynomial, Rational, RationalFunction};
use crate::cluster::{compose, ClusterError, ClusterState};
use crate::orbit::{Orbit, OrbitError};
use crate::quiver::{Quiver, QuiverError, SymmetryPair};
use crate::Budget;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("function is not invariant under mu_*^k for any k <= {k_max}")]
    NotInvariant { k_max: usize },
    #[error("invariant is degenerate: {0}")]
    DegenerateInvariant(String),
    #[error("quiver has no sink/source pair with matching arrow counts")]
    NoSymmetryPair,
    #[error("permutation fixes every vertex")]
    IdentityAutomorphism,
    #[error("permutation is not an automorphism of the quiver")]
    NotAutomorphism,
    #[error("expected a function of {expected} variables, got {found}")]
    NvarsMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// Smallest `k <= k_max` with `h(mu_*^k(x)) = h(x)`, decided symbolically.
pub fn check_invariant(
    q: &Quiver,
    h: &RationalFunction,
    k_max: usize,
    max_terms: usize,
) -> Result<Option<usize>, InvariantError> {
    if h.nvars() != q.n() {
        return Err(InvariantError::NvarsMismatch {
            expected: q.n(),
            found: h.nvars(),
        });
    }
    let mut s = ClusterState::initial(q);
    for k in 1..=k_max {
        s = s.coxeter_mutate(max_terms)?;
        if compose(h, &s, max_terms)? == *h {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// `c_t = h(P_t)` for `t < k`, checked to repeat for `k <= t < 2k`.
pub fn constants(
    q: &Quiver,
    h: &RationalFunction,
    start: &[Rational],
    k: usize,
    max_bits: u64,
) -> Result<Vec<Rational>, InvariantError> {
    let mut orbit = Orbit::new(q, start, max_bits)?;
    let mut cs = Vec::with_capacity(k);
    for t in 0..2 * k {
        let c = h.evaluate(orbit.point(t)?)?;
        if t < k {
            cs.push(c);
        } else if c != cs[t - k] {
            return Err(InvariantError::NotInvariant { k_max: k });
        }
    }
    Ok(cs)
}

/// Everything derived from an invariant `h` of period `k` at a start point:
/// iterates `h o mu_*^t`, constants `c_t`, and `equations[j][t] =
/// Num(h o mu_*^t - c_{t+j})` (indices mod `k`). The orbit points
/// `P_{j + k s}` lie on every `equations[j][t]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantCertificate {
    pub h: RationalFunction,
    pub period: usize,
    pub iterates: Vec<RationalFunction>,
    #[serde(serialize_with = "rational_strings")]
    pub constants: Vec<Rational>,
    pub equations: Vec<Vec<LaurentPolynomial>>,
}

fn rational_strings<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

impl InvariantCertificate {
    /// Checks `equations[j][t](P_{j+ks}) = 0` on the given orbit points.
    pub fn holds_on(&self, points: &[Vec<Rational>]) -> bool {
        points.iter().enumerate().all(|(idx, p)| {
            let j = idx % self.period;
            self.equations[j]
                .iter()
                .all(|f| f.evaluate(p).map(|v| v == Rational::default()).unwrap_or(false))
        })
    }
}

pub fn component_equations(
    q: &Quiver,
    h: &RationalFunction,
    start: &[Rational],
    k_max: usize,
    budget: &Budget,
) -> Result<InvariantCertificate, InvariantError> {
    if h.constant_value().is_some() {
        return Err(InvariantError::DegenerateInvariant("h is constant".into()));
    }
    let k = check_invariant(q, h, k_max, budget.max_terms)?.ok_or(InvariantError::NotInvariant { k_max })?;
    let cs = constants(q, h, start, k, budget.max_bits)?;
    let mut iterates = Vec::with_capacity(k);
    let mut s = ClusterState::initial(q);
    for t in 0..k {
        if t > 0 {
            s = s.coxeter_mutate(budget.max_terms)?;
        }
        iterates.push(compose(h, &s, budget.max_terms)?);
    }
    let n = q.n();
    let mut equations = Vec::with_capacity(k);
    for j in 0..k {
        let mut row = Vec::with_capacity(k);
        for (t, ht) in iterates.iter().enumerate() {
            let c = RationalFunction::constant(n, cs[(t + j) % k].clone());
            let f = (ht - &c).numerator_normal_form();
            if f.is_zero() {
                return Err(InvariantError::DegenerateInvariant(format!(
                    "h o mu_*^{t} is constant"
                )));
            }
            row.push(f);
        }
        equations.push(row);
    }
    Ok(InvariantCertificate {
        h: h.clone(),
        period: k,
        iterates,
        constants: cs,
        equations,
    })
}

/// Invariant built from a sink `i` and source `j` with matching arrow
/// counts `n_k`: `h = (1 + prod x_k^{n_k}) / (x_i x_j)`, which `mu_*`
/// sends to `1/h`. `f0` and `f1` are `Num(h - 2)` and `Num(2h - 1)`, the
/// equations at the all-ones start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryInvariant {
    pub pair: SymmetryPair,
    pub h: RationalFunction,
    pub f0: LaurentPolynomial,
    pub f1: LaurentPolynomial,
    pub period: usize,
}

pub fn symmetry_invariant(q: &Quiver, max_terms: usize) -> Result<SymmetryInvariant, InvariantError> {
    let pair = q.find_symmetry_pair().ok_or(InvariantError::NoSymmetryPair)?;
    if pair.multiplicities.is_empty() {
        return Err(InvariantError::DegenerateInvariant(
            "no vertex between sink and source; h would be 2/(x_i x_j)".into(),
        ));
    }
    let n = q.n();
    let mut e = vec![0i32; n];
    for (&k, &m) in &pair.multiplicities {
        e[k] = m as i32;
    }
    let one = Rational::from_integer(1.into());
    let prod = LaurentPolynomial::monomial(n, ExponentVector::new(e), one.clone());
    let mut ij = vec![0i32; n];
    ij[pair.sink] = 1;
    ij[pair.source] = 1;
    let xij = LaurentPolynomial::monomial(n, ExponentVector::new(ij), one);
    let numer = &LaurentPolynomial::one(n) + &prod;
    let h = RationalFunction::new(numer, xij.clone())?;
    let two = LaurentPolynomial::constant(n, Rational::from_integer(2.into()));
    let f0 = &(&LaurentPolynomial::one(n) - &(&two * &xij)) + &prod;
    let f1 = &(&two - &xij) + &(&two * &prod);
    let period = check_invariant(q, &h, 2, max_terms)?.ok_or(InvariantError::NotInvariant { k_max: 2 })?;
    Ok(SymmetryInvariant {
        pair,
        h,
        f0,
        f1,
        period,
    })
}

/// `x_{sigma(k)} / x_k` for the smallest vertex `k` moved by `sigma`.
pub fn automorphism_invariant(q: &Quiver, sigma: &[usize]) -> Result<RationalFunction, InvariantError> {
    let n = q.n();
    if sigma.len() != n || q.relabel(sigma) != *q {
        return Err(InvariantError::NotAutomorphism);
    }
    let k = (0..n).find(|&k| sigma[k] != k).ok_or(InvariantError::IdentityAutomorphism)?;
    let num = LaurentPolynomial::var(n, sigma[k]);
    let den = LaurentPolynomial::var(n, k);
    Ok(RationalFunction::new(num, den)?)
}

/// Multiplicity map of a symmetry pair, 1-based, for reporting.
pub fn multiplicities_one_based(pair: &SymmetryPair) -> BTreeMap<usize, u32> {
    pair.multiplicities.iter().map(|(&k, &m)| (k + 1, m)).collect()
}
