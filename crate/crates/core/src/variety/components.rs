use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::linalg::rank;
use super::space::{vanishing_space_on, VanishingSpace};
use super::VarietyError;
use crate::arith::{LaurentPolynomial, Rational, RationalFunction};
use crate::cluster::{compose, ClusterError, ClusterState};
use crate::orbit::{Orbit, OrbitError};
use crate::quiver::Quiver;
use crate::Budget;

/// Residue-class decomposition of an orbit's vanishing spaces.
///
/// Class `r` is sampled from `P_r, P_{r+m}, P_{r+2m}, ...`. `dims[r]` is the
/// Jacobian estimate of class `r` at its first sample point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    pub m: usize,
    pub classes: Vec<VanishingSpace>,
    pub dims: Vec<usize>,
    pub verified_cycle: bool,
    /// Vanishing space of the whole orbit.
    pub full: VanishingSpace,
    pub period: Option<usize>,
}

/// Local dimension estimate `n - rank J(p)`. At a singular point this
/// overstates the local dimension, so it is an upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DimensionEstimate {
    pub value: usize,
    pub jacobian_rank: usize,
}

pub fn dimension_estimate(v: &VanishingSpace, p: &[Rational]) -> Result<DimensionEstimate, VarietyError> {
    if p.len() != v.nvars {
        return Err(VarietyError::DimensionMismatch {
            expected: v.nvars,
            found: p.len(),
        });
    }
    let mut jac = Vec::with_capacity(v.basis.len());
    for f in &v.basis {
        let value = f.evaluate(p).map_err(|_| VarietyError::PointNotOnVariety)?;
        if !value.is_zero() {
            return Err(VarietyError::PointNotOnVariety);
        }
        let row = (0..v.nvars)
            .map(|i| f.derivative(i).evaluate(p).map_err(|_| VarietyError::PointNotOnVariety))
            .collect::<Result<Vec<_>, _>>()?;
        jac.push(row);
    }
    let r = rank(&jac);
    Ok(DimensionEstimate {
        value: v.nvars - r,
        jacobian_rank: r,
    })
}

/// `Num(F o mu_*)`: `F` composed with the Coxeter-mutated cluster, with the
/// monomial denominator cleared. For `p` with nonzero coordinates,
/// `F(mu_*(p)) = 0` exactly when the result vanishes at `p`.
pub fn pullback_numerator(f: &LaurentPolynomial, q: &Quiver, max_terms: usize) -> Result<LaurentPolynomial, VarietyError> {
    let state = ClusterState::coxeter_power(q, 1, max_terms)?;
    pullback_with(f, &state, max_terms)
}

fn pullback_with(f: &LaurentPolynomial, state: &ClusterState, max_terms: usize) -> Result<LaurentPolynomial, VarietyError> {
    let g = compose(&RationalFunction::from_laurent(f.clone()), state, max_terms)?;
    let laurent = g
        .as_laurent()
        .ok_or(VarietyError::Cluster(ClusterError::LaurentCertificationFailed { vertex: 0 }))?;
    Ok(RationalFunction::from_laurent(laurent.clone()).numerator_normal_form())
}

/// Splits the orbit of `start` into `m` residue classes.
///
/// A periodic orbit (period found while sampling, or within `m_max` steps)
/// gives `m` = period with one point per class. Otherwise `m` is the
/// smallest value in `1..=m_max` that explains every class space seen:
/// for each `m' <= m_max` and residue `r'`, the class space of `(m', r')`
/// equals that of `(gcd(m', m), r' mod gcd(m', m))`. If none does, `m = 1`.
pub fn detect_components(
    q: &Quiver,
    start: &[Rational],
    d: u32,
    m_max: usize,
    budget: &Budget,
) -> Result<ComponentDecomposition, VarietyError> {
    let mut orbit = Orbit::new(q, start, budget.max_bits)?;
    let full = vanishing_space_on(&mut orbit, d, 0, 1, budget.horizon)?;
    if orbit.period().is_none() {
        for t in 1..=m_max {
            match orbit.point(t) {
                Ok(_) => {}
                Err(OrbitError::BudgetExceeded { .. }) => break,
                Err(e) => return Err(e.into()),
            }
        }
    }
    let period = orbit.period();
    let (m, classes) = match period {
        Some(p) => {
            let classes = (0..p)
                .map(|r| vanishing_space_on(&mut orbit, d, r, p, budget.horizon))
                .collect::<Result<Vec<_>, _>>()?;
            (p, classes)
        }
        None => {
            let mut spaces: BTreeMap<(usize, usize), VanishingSpace> = BTreeMap::new();
            spaces.insert((1, 0), full.clone());
            for stride in 2..=m_max.max(1) {
                for r in 0..stride {
                    let v = vanishing_space_on(&mut orbit, d, r, stride, budget.horizon)?;
                    spaces.insert((stride, r), v);
                }
            }
            let explains = |m: usize| {
                spaces.iter().all(|(&(stride, r), v)| {
                    let g = stride.gcd(&m);
                    v.same_span(&spaces[&(g, r % g)])
                })
            };
            let m = (1..=m_max.max(1)).find(|&m| explains(m)).unwrap_or(1);
            let classes = (0..m).map(|r| spaces[&(m, r)].clone()).collect();
            (m, classes)
        }
    };

    let state = ClusterState::coxeter_power(q, 1, budget.max_terms)?;
    let mut verified_cycle = true;
    'cycle: for r in 0..m {
        let next = &classes[(r + 1) % m];
        for f in &next.basis {
            let g = pullback_with(f, &state, budget.max_terms)?;
            for &t in &classes[r].samples {
                let p = orbit.point(t)?;
                if !g.evaluate(p).map(|v| v.is_zero()).unwrap_or(false) {
                    verified_cycle = false;
                    break 'cycle;
                }
            }
        }
    }

    let mut dims = Vec::with_capacity(m);
    for class in &classes {
        let t = class.samples.first().copied().unwrap_or(0);
        let p = orbit.point(t)?.clone();
        dims.push(dimension_estimate(class, &p)?.value);
    }

    Ok(ComponentDecomposition {
        m,
        classes,
        dims,
        verified_cycle,
        full,
        period,
    })
}

/// JSON report: `{"m": 2, "classes": [{"residue": 0, "basis": [...],
/// "dim_estimate": 1, ...}], "verified_cycle": true}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub m: usize,
    pub classes: Vec<ClassReport>,
    pub verified_cycle: bool,
    pub period: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub residue: usize,
    pub basis: Vec<LaurentPolynomial>,
    pub dim_estimate: usize,
    pub points_used: usize,
    pub stabilized: bool,
}

impl From<&ComponentDecomposition> for ComponentReport {
    fn from(c: &ComponentDecomposition) -> Self {
        ComponentReport {
            m: c.m,
            classes: c
                .classes
                .iter()
                .zip(&c.dims)
                .enumerate()
                .map(|(residue, (v, &dim))| ClassReport {
                    residue,
                    basis: v.basis.clone(),
                    dim_estimate: dim,
                    points_used: v.points_used,
                    stabilized: v.stabilized,
                })
                .collect(),
            verified_cycle: c.verified_cycle,
            period: c.period,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_polynomial, point};
    use crate::orbit::iterate;
    use crate::quiver::catalog::*;
    use crate::variety::truncated_ideal_span;

    fn poly(s: &str, n: usize) -> LaurentPolynomial {
        parse_polynomial(s, n).unwrap()
    }

    fn space(basis: &[&str], n: usize, d: u32) -> VanishingSpace {
        VanishingSpace {
            nvars: n,
            degree_bound: d,
            basis: basis.iter().map(|s| poly(s, n)).collect(),
            points_used: 0,
            samples: vec![],
            stabilized: true,
        }
    }

    #[test]
    fn jacobian_estimates() {
        let k = space(&["x1^2 + x2^2 + 1 - 3*x1*x2"], 2, 2);
        // gradient (2x - 3y, 2y - 3x) at (2, 5) is (-11, 4)
        let e = dimension_estimate(&k, &point(&[2, 5])).unwrap();
        assert_eq!((e.value, e.jacobian_rank), (1, 1));
        let a2 = space(&["x1 - 2", "x2 - 3"], 2, 1);
        assert_eq!(dimension_estimate(&a2, &point(&[2, 3])).unwrap().value, 0);
        let t = space(&["x1 + x3 - 2*x2", "x1*x2 + x2*x3 + 1 - 3*x1*x3"], 3, 2);
        assert_eq!(dimension_estimate(&t, &point(&[1, 1, 1])).unwrap().value, 1);
        assert_eq!(
            dimension_estimate(&k, &point(&[1, 3])),
            Err(VarietyError::PointNotOnVariety)
        );
    }

    #[test]
    fn pullbacks() {
        let q = affine_a(2);
        let g = pullback_numerator(&poly("x1 + x3 - 3*x2", 3), &q, 10_000).unwrap();
        let r = iterate(&q, &point(&[1, 1, 1]), 8, 10_000).unwrap();
        for t in (0..=8).step_by(2) {
            assert!(g.evaluate(&r.points[t]).unwrap().is_zero());
        }
        assert!(!g.evaluate(&r.points[1]).unwrap().is_zero());
        assert_eq!(pullback_numerator(&poly("1", 3), &q, 10_000).unwrap(), poly("1", 3));

        let k = kronecker(2);
        let g = pullback_numerator(&poly("x1^2 + x2^2 + 1 - 3*x1*x2", 2), &k, 10_000).unwrap();
        let r = iterate(&k, &point(&[1, 1]), 6, 10_000).unwrap();
        assert!(r.points.iter().all(|p| g.evaluate(p).unwrap().is_zero()));
    }

    #[test]
    fn affine_a2_has_two_components() {
        let c = detect_components(&affine_a(2), &point(&[1, 1, 1]), 2, 6, &Budget::default()).unwrap();
        assert_eq!(c.m, 2);
        assert!(c.verified_cycle);
        let even = truncated_ideal_span(
            &[poly("x1 + x3 - 2*x2", 3), poly("x1*x2 + x2*x3 + 1 - 3*x1*x3", 3)],
            3,
            2,
        );
        let odd = truncated_ideal_span(
            &[poly("x1 + x3 - 3*x2", 3), poly("x1*x2 + x2*x3 + 1 - 2*x1*x3", 3)],
            3,
            2,
        );
        assert_eq!(c.classes[0].basis, even);
        assert_eq!(c.classes[1].basis, odd);
        assert_eq!(c.dims, vec![1, 1]);
        let json = serde_json::to_value(ComponentReport::from(&c)).unwrap();
        assert_eq!(json["m"], 2);
        assert_eq!(json["classes"][1]["residue"], 1);
    }

    #[test]
    fn a2_has_five_point_components() {
        let c = detect_components(&linear_a(2), &point(&[1, 1]), 2, 10, &Budget::default()).unwrap();
        assert_eq!(c.m, 5);
        assert_eq!(c.period, Some(5));
        assert!(c.verified_cycle);
        assert_eq!(c.classes[1].points_used, 1);
        assert_eq!(c.dims, vec![0; 5]);
    }

    #[test]
    fn kronecker_is_irreducible() {
        let c = detect_components(&kronecker(2), &point(&[1, 1]), 2, 6, &Budget::default()).unwrap();
        assert_eq!(c.m, 1);
        assert!(c.verified_cycle);
        assert_eq!(c.dims, vec![1]);
    }
}
