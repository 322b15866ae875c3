use num_traits::One;

use crate::arith::{ExponentVector, LaurentPolynomial, Rational};

/// All monomials of total degree at most `d` in `n` variables.
///
/// Listed by degree, constant first; within a degree in lexicographic order
/// with `x1` first, e.g. `1, x, y, x^2, xy, y^2` for `n = 2, d = 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    nvars: usize,
    degree_bound: u32,
    monomials: Vec<ExponentVector>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree_bound: u32) -> Self {
        let mut monomials = Vec::new();
        for deg in 0..=degree_bound {
            let mut current = vec![0i32; nvars];
            push_degree(&mut monomials, &mut current, 0, deg as i32);
        }
        MonomialBasis {
            nvars,
            degree_bound,
            monomials,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[ExponentVector] {
        &self.monomials
    }

    pub fn index_of(&self, e: &ExponentVector) -> Option<usize> {
        self.monomials.iter().position(|m| m == e)
    }

    /// Row of monomial values at `p`.
    pub fn evaluate(&self, p: &[Rational]) -> Vec<Rational> {
        // build each degree from the previous one: x^e = x_i * x^(e - e_i)
        let mut values: Vec<Rational> = Vec::with_capacity(self.len());
        for (k, e) in self.monomials.iter().enumerate() {
            if k == 0 {
                values.push(Rational::one());
                continue;
            }
            let i = e.as_slice().iter().position(|&x| x > 0).expect("nonconstant");
            let prev = e.sub(&ExponentVector::unit(self.nvars, i));
            let j = self.index_of(&prev).expect("lower degree present");
            values.push(&values[j] * &p[i]);
        }
        values
    }

    /// Coefficient vector of a polynomial of degree at most `d`.
    pub fn coefficients(&self, f: &LaurentPolynomial) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::default(); self.len()];
        for (e, c) in f.terms() {
            v[self.index_of(e)?] = c.clone();
        }
        Some(v)
    }

    pub fn polynomial(&self, coefficients: &[Rational]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            self.nvars,
            self.monomials
                .iter()
                .zip(coefficients)
                .map(|(e, c)| (e.as_slice().to_vec(), c.clone())),
        )
    }
}

fn push_degree(out: &mut Vec<ExponentVector>, current: &mut [i32], i: usize, remaining: i32) {
    if i + 1 == current.len() {
        current[i] = remaining;
        out.push(ExponentVector::new(current.to_vec()));
        current[i] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        current[i] = e;
        push_degree(out, current, i + 1, remaining - e);
    }
    current[i] = 0;
}

/// Monomial values at a list of points, one row per point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationMatrix {
    pub basis: MonomialBasis,
    pub rows: Vec<Vec<Rational>>,
}

impl EvaluationMatrix {
    pub fn new(points: &[Vec<Rational>], basis: &MonomialBasis) -> Self {
        EvaluationMatrix {
            basis: basis.clone(),
            rows: points.iter().map(|p| basis.evaluate(p)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{point, rational};

    fn binomial(n: u64, k: u64) -> u64 {
        (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
    }

    #[test]
    fn basis_order_and_size() {
        let b = MonomialBasis::new(2, 3);
        let names: Vec<Vec<i32>> = b.monomials().iter().map(|e| e.as_slice().to_vec()).collect();
        assert_eq!(
            names,
            vec![
                vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1],
                vec![0, 2], vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]
            ]
        );
        assert_eq!(MonomialBasis::new(1, 0).len(), 1);
        assert_eq!(MonomialBasis::new(3, 2).len(), 10);
        for n in 1..5 {
            for d in 0..5 {
                assert_eq!(MonomialBasis::new(n, d).len() as u64, binomial(n as u64 + d as u64, n as u64));
            }
        }
    }

    #[test]
    fn a2_evaluation_matrix() {
        let pts: Vec<_> = [[1, 1], [2, 3], [2, 1], [1, 2], [3, 2]].iter().map(|p| point(p)).collect();
        let m = EvaluationMatrix::new(&pts, &MonomialBasis::new(2, 2));
        let expected: Vec<Vec<_>> = [
            [1, 1, 1, 1, 1, 1],
            [1, 2, 3, 4, 6, 9],
            [1, 2, 1, 4, 2, 1],
            [1, 1, 2, 1, 2, 4],
            [1, 3, 2, 9, 6, 4],
        ]
        .iter()
        .map(|r| point(r))
        .collect();
        assert_eq!(m.rows, expected);
    }

    #[test]
    fn small_matrices() {
        let pts = vec![point(&[1, 1]), point(&[2, 5]), point(&[13, 34])];
        let m = EvaluationMatrix::new(&pts, &MonomialBasis::new(2, 1));
        assert_eq!(m.rows, vec![point(&[1, 1, 1]), point(&[1, 2, 5]), point(&[1, 13, 34])]);
        let m = EvaluationMatrix::new(&[point(&[1, 1])], &MonomialBasis::new(2, 0));
        assert_eq!(m.rows, vec![vec![rational(1)]]);
    }
}
