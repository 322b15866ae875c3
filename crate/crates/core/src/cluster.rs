//! Symbolic cluster mutation: cluster variables as Laurent polynomials in the
//! initial cluster `x1..xn`.

use thiserror::Error;

use crate::arith::{ArithError, LaurentPolynomial, RationalFunction};
use crate::quiver::Quiver;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("exchange at vertex {vertex} did not divide exactly")]
    LaurentCertificationFailed { vertex: usize },
    #[error("quiver is not admissibly labelled")]
    NotAdmissible,
    #[error("expected a function of {expected} variables, got {found}")]
    NvarsMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A seed: the current quiver and its cluster variables, expressed in the
/// initial variables. Every variable is a Laurent polynomial (denominator 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterState {
    quiver: Quiver,
    vars: Vec<LaurentPolynomial>,
    history: Vec<usize>,
}

impl ClusterState {
    /// The initial seed `(x1, ..., xn)` of `q`.
    pub fn initial(q: &Quiver) -> Self {
        let n = q.n();
        ClusterState {
            quiver: q.clone(),
            vars: (0..n).map(|i| LaurentPolynomial::var(n, i)).collect(),
            history: Vec::new(),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn vars(&self) -> &[LaurentPolynomial] {
        &self.vars
    }

    /// Variable `i` as a rational function.
    pub fn var_function(&self, i: usize) -> RationalFunction {
        RationalFunction::from_laurent(self.vars[i].clone())
    }

    /// Mutated vertices, 0-based, in order of application.
    pub fn history(&self) -> &[usize] {
        &self.history
    }

    /// Mutation at vertex `k` (0-based). The exchange binomial is divided by
    /// the old variable exactly; failure to divide is reported rather than
    /// producing a non-Laurent result.
    pub fn mutate(&self, k: usize, max_terms: usize) -> Result<ClusterState, ClusterError> {
        let n = self.quiver.n();
        if k >= n {
            return Err(ClusterError::VertexOutOfRange { vertex: k + 1, n });
        }
        let mut incoming = LaurentPolynomial::one(n);
        let mut outgoing = LaurentPolynomial::one(n);
        for j in 0..n {
            let b = self.quiver.entry(j, k);
            if b > 0 {
                incoming = mul(&incoming, &checked_pow(&self.vars[j], b as u32, max_terms)?, max_terms)?;
            } else if b < 0 {
                outgoing = mul(&outgoing, &checked_pow(&self.vars[j], (-b) as u32, max_terms)?, max_terms)?;
            }
        }
        let binomial = &incoming + &outgoing;
        let fresh = binomial
            .exact_divide(&self.vars[k])
            .ok_or(ClusterError::LaurentCertificationFailed { vertex: k + 1 })?;
        if fresh.num_terms() > max_terms {
            return Err(ArithError::TermBudgetExceeded {
                terms: fresh.num_terms(),
                limit: max_terms,
            }
            .into());
        }
        let mut vars = self.vars.clone();
        vars[k] = fresh;
        let mut history = self.history.clone();
        history.push(k);
        Ok(ClusterState {
            quiver: self.quiver.mutate(k),
            vars,
            history,
        })
    }

    /// Coxeter mutation: mutations at vertices 1, 2, ..., n in turn.
    pub fn coxeter_mutate(&self, max_terms: usize) -> Result<ClusterState, ClusterError> {
        if !self.quiver.is_admissible() {
            return Err(ClusterError::NotAdmissible);
        }
        let mut s = self.clone();
        for k in 0..self.quiver.n() {
            s = s.mutate(k, max_terms)?;
        }
        Ok(s)
    }

    /// `t` Coxeter mutations starting from the initial seed of `q`.
    pub fn coxeter_power(q: &Quiver, t: usize, max_terms: usize) -> Result<ClusterState, ClusterError> {
        let mut s = ClusterState::initial(q);
        for _ in 0..t {
            s = s.coxeter_mutate(max_terms)?;
        }
        Ok(s)
    }
}

fn checked_pow(a: &LaurentPolynomial, k: u32, max_terms: usize) -> Result<LaurentPolynomial, ClusterError> {
    let mut acc = a.clone();
    for _ in 1..k {
        acc = mul(&acc, a, max_terms)?;
    }
    Ok(acc)
}

fn mul(
    a: &LaurentPolynomial,
    b: &LaurentPolynomial,
    max_terms: usize,
) -> Result<LaurentPolynomial, ClusterError> {
    let p = a * b;
    if p.num_terms() > max_terms {
        return Err(ArithError::TermBudgetExceeded {
            terms: p.num_terms(),
            limit: max_terms,
        }
        .into());
    }
    Ok(p)
}

/// `h(vars(s))`, the rational function obtained by substituting the cluster
/// variables of `s` for the initial variables.
pub fn compose(h: &RationalFunction, s: &ClusterState, max_terms: usize) -> Result<RationalFunction, ClusterError> {
    compose_with(h, s.vars(), max_terms)
}

/// `h(values)` for an arbitrary tuple of Laurent polynomials.
pub fn compose_with(
    h: &RationalFunction,
    values: &[LaurentPolynomial],
    max_terms: usize,
) -> Result<RationalFunction, ClusterError> {
    if h.nvars() != values.len() {
        return Err(ClusterError::NvarsMismatch {
            expected: values.len(),
            found: h.nvars(),
        });
    }
    Ok(h.compose(values, max_terms)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse, parse_polynomial, point, ratio, Rational};
    use crate::quiver::catalog::*;
    use crate::Budget;
    use num_traits::Signed;
    use proptest::prelude::*;

    const TERMS: usize = 1_000_000;

    fn eval_all(s: &ClusterState, p: &[Rational]) -> Vec<Rational> {
        s.vars().iter().map(|v| v.evaluate(p).unwrap()).collect()
    }

    #[test]
    fn initial_seeds() {
        let s = ClusterState::initial(&kronecker(2));
        assert_eq!(s.vars(), &[LaurentPolynomial::var(2, 0), LaurentPolynomial::var(2, 1)]);
        assert_eq!(ClusterState::initial(&affine_a(2)).vars().len(), 3);
        let one = Quiver::from_arrows(1, &[]).unwrap();
        assert_eq!(ClusterState::initial(&one).vars(), &[LaurentPolynomial::var(1, 0)]);
        assert!(s.history().is_empty());
    }

    #[test]
    fn single_mutations() {
        let s = ClusterState::initial(&affine_a(2)).mutate(0, TERMS).unwrap();
        assert_eq!(s.vars()[0], parse_polynomial("x2*x3/x1 + 1/x1", 3).unwrap());
        let s = ClusterState::initial(&kronecker(2)).mutate(0, TERMS).unwrap();
        assert_eq!(s.vars()[0], parse_polynomial("(x2^2 + 1)/x1", 2).unwrap());
        assert_eq!(s.history(), &[0]);
    }

    #[test]
    fn mutating_twice_restores_the_variable() {
        let s0 = ClusterState::initial(&double_a3());
        for k in 0..3 {
            let s = s0.mutate(k, TERMS).unwrap().mutate(k, TERMS).unwrap();
            assert_eq!(s.vars(), s0.vars());
            assert_eq!(s.quiver(), s0.quiver());
        }
    }

    #[test]
    fn coxeter_mutation_at_all_ones() {
        let ones = |n| point(&vec![1; n]);
        let s = ClusterState::coxeter_power(&linear_a(2), 1, TERMS).unwrap();
        assert_eq!(eval_all(&s, &ones(2)), point(&[2, 3]));
        let s = ClusterState::coxeter_power(&double_a3(), 1, TERMS).unwrap();
        assert_eq!(eval_all(&s, &ones(3)), point(&[2, 5, 26]));
        let s = ClusterState::coxeter_power(&kronecker(2), 2, TERMS).unwrap();
        assert_eq!(eval_all(&s, &ones(2)), point(&[13, 34]));
    }

    #[test]
    fn coxeter_mutation_requires_admissible_labels() {
        let q = double_a3().mutate(0);
        assert_eq!(
            ClusterState::initial(&q).coxeter_mutate(TERMS),
            Err(ClusterError::NotAdmissible)
        );
    }

    #[test]
    fn compose_examples() {
        let q = affine_a(2);
        let h = parse("(x1+x3)/x2", 3).unwrap();
        let s = ClusterState::initial(&q).mutate(0, TERMS).unwrap();
        // rotation (y, z, x') of the mutated seed
        let rotated = [s.vars()[1].clone(), s.vars()[2].clone(), s.vars()[0].clone()];
        let hp = compose_with(&h, &rotated, TERMS).unwrap();
        assert_eq!(hp, parse("(x1*x2 + x2*x3 + 1)/(x1*x3)", 3).unwrap());

        let x1 = parse("x1", 3).unwrap();
        assert_eq!(compose(&x1, &ClusterState::initial(&q), TERMS).unwrap(), x1);

        let k = kronecker(2);
        let h = parse("(x1^2+x2^2+1)/(x1*x2)", 2).unwrap();
        let s = ClusterState::coxeter_power(&k, 1, TERMS).unwrap();
        assert_eq!(compose(&h, &s, TERMS).unwrap(), h);
    }

    #[test]
    fn term_budget_is_enforced() {
        let r = ClusterState::coxeter_power(&kronecker(3), 3, 50);
        assert!(matches!(
            r,
            Err(ClusterError::Arith(ArithError::TermBudgetExceeded { limit: 50, .. }))
        ));
        assert_eq!(Budget::default().max_terms, TERMS);
    }

    // forward orbit step written directly from the recurrence
    fn orbit_step(q: &Quiver, p: &[Rational]) -> Vec<Rational> {
        let n = q.n();
        let mut f = p.to_vec();
        for i in 0..n {
            let mut prod = Rational::from_integer(1.into());
            for j in 0..n {
                let b = q.entry(j, i);
                if b > 0 {
                    prod *= num_traits::pow(f[j].clone(), b as usize);
                } else if b < 0 {
                    prod *= num_traits::pow(f[j].clone(), (-b) as usize);
                }
            }
            f[i] = (Rational::from_integer(1.into()) + prod) / &f[i];
        }
        f
    }

    fn arb_small_quiver(max_n: usize, max_mult: u32) -> impl Strategy<Value = Quiver> {
        (1..=max_n).prop_flat_map(move |n| {
            prop::collection::vec(0..=max_mult, n * (n - 1) / 2).prop_map(move |mults| {
                let mut arrows = Vec::new();
                let mut it = mults.into_iter();
                for i in 1..=n {
                    for j in 1..i {
                        let m = it.next().unwrap();
                        if m > 0 {
                            arrows.push((i, j, m));
                        }
                    }
                }
                Quiver::from_arrows(n, &arrows).unwrap()
            })
        })
    }

    // wild quivers outgrow any practical budget within a few steps; random
    // cases that do are skipped
    const SMALL: usize = 2_000;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn laurent_phenomenon(q in arb_small_quiver(5, 1), seq in prop::collection::vec(0usize..5, 0..=6)) {
            let mut s = ClusterState::initial(&q);
            let mut expected = q.clone();
            for k in seq {
                let k = k % q.n();
                s = match s.mutate(k, SMALL) {
                    Err(ClusterError::Arith(ArithError::TermBudgetExceeded { .. })) => return Ok(()),
                    r => r.unwrap(),
                };
                expected = expected.mutate(k);
                for v in s.vars() {
                    let f = RationalFunction::from_laurent(v.clone());
                    prop_assert!(f.den().is_one());
                }
            }
            prop_assert_eq!(s.quiver(), &expected);
        }

        #[test]
        fn coefficients_stay_positive(q in arb_small_quiver(4, 1), t in 0usize..=4) {
            let s = match ClusterState::coxeter_power(&q, t, SMALL) {
                Err(ClusterError::Arith(ArithError::TermBudgetExceeded { .. })) => return Ok(()),
                r => r.unwrap(),
            };
            for v in s.vars() {
                for (_, c) in v.terms() {
                    prop_assert!(c.is_positive());
                }
            }
        }

        #[test]
        fn symbolic_matches_numeric(
            q in prop_oneof![arb_small_quiver(3, 1), arb_small_quiver(2, 3)],
            coords in prop::collection::vec((1i64..=7, 1i64..=5), 3),
            t in 0usize..=3,
        ) {
            let a: Vec<Rational> = coords[..q.n()].iter().map(|&(n, d)| ratio(n, d)).collect();
            let s = match ClusterState::coxeter_power(&q, t, SMALL) {
                Err(ClusterError::Arith(ArithError::TermBudgetExceeded { .. })) => return Ok(()),
                r => r.unwrap(),
            };
            let mut p = a.clone();
            for _ in 0..t {
                p = orbit_step(&q, &p);
            }
            prop_assert_eq!(eval_all(&s, &a), p);
        }
    }
}
