use num_integer::Integer;
use num_traits::Zero;

use super::basis::{EvaluationMatrix, MonomialBasis};
use super::linalg::{integer_row, Echelon};
use super::VarietyError;
use crate::arith::{LaurentPolynomial, Rational};
use crate::orbit::Orbit;
use crate::quiver::Quiver;
use crate::Budget;

/// Polynomials of degree at most `degree_bound` vanishing on a point set.
///
/// The basis is the reduced echelon basis of the space with respect to the
/// graded-lex order: each polynomial has leading coefficient 1, its leading
/// monomial appears in no other basis element, and the list is sorted by
/// leading monomial, smallest first. Equal spaces have equal bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingSpace {
    pub nvars: usize,
    pub degree_bound: u32,
    pub basis: Vec<LaurentPolynomial>,
    pub points_used: usize,
    /// Orbit indices of the sampled points (empty for an explicit point list).
    pub samples: Vec<usize>,
    pub stabilized: bool,
}

impl VanishingSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Same subspace, ignoring how it was sampled.
    pub fn same_span(&self, other: &VanishingSpace) -> bool {
        self.nvars == other.nvars && self.degree_bound == other.degree_bound && self.basis == other.basis
    }

    pub fn contains(&self, f: &LaurentPolynomial) -> bool {
        span_contains(&self.basis, f, self.nvars, self.degree_bound)
    }

    /// True if every element of `other` lies in this space.
    pub fn contains_space(&self, other: &VanishingSpace) -> bool {
        other.basis.iter().all(|f| self.contains(f))
    }
}

/// Grlex-ascending permutation of the basis indices.
fn ascending_columns(basis: &MonomialBasis) -> Vec<usize> {
    let mut cols: Vec<usize> = (0..basis.len()).collect();
    cols.sort_by(|&a, &b| basis.monomials()[a].cmp(&basis.monomials()[b]));
    cols
}

/// Incremental nullspace of an evaluation matrix.
#[derive(Debug, Clone)]
pub(crate) struct NullspaceBuilder {
    basis: MonomialBasis,
    // elimination column c holds basis index columns[c]
    columns: Vec<usize>,
    echelon: Echelon,
}

impl NullspaceBuilder {
    pub(crate) fn new(basis: &MonomialBasis) -> Self {
        NullspaceBuilder {
            basis: basis.clone(),
            columns: ascending_columns(basis),
            echelon: Echelon::new(basis.len()),
        }
    }

    /// Adds a row of monomial values; true when the nullspace shrank.
    pub(crate) fn add_row(&mut self, values: &[Rational]) -> bool {
        let permuted: Vec<Rational> = self.columns.iter().map(|&i| values[i].clone()).collect();
        self.echelon.insert(integer_row(&permuted))
    }

    pub(crate) fn add_point(&mut self, p: &[Rational]) -> bool {
        let row = self.basis.evaluate(p);
        self.add_row(&row)
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.echelon.is_full()
    }

    pub(crate) fn polynomials(&self) -> Vec<LaurentPolynomial> {
        // the free column of each kernel vector is its grlex-leading monomial
        self.echelon
            .kernel()
            .into_iter()
            .map(|(_, v)| {
                let mut coeffs = vec![Rational::zero(); v.len()];
                for (c, x) in v.into_iter().enumerate() {
                    coeffs[self.columns[c]] = x;
                }
                self.basis.polynomial(&coeffs)
            })
            .collect()
    }
}

/// Nullspace of an evaluation matrix, as polynomials.
pub fn nullspace(m: &EvaluationMatrix) -> VanishingSpace {
    let mut b = NullspaceBuilder::new(&m.basis);
    for r in &m.rows {
        b.add_row(r);
    }
    VanishingSpace {
        nvars: m.basis.nvars(),
        degree_bound: m.basis.degree_bound(),
        basis: b.polynomials(),
        points_used: m.rows.len(),
        samples: Vec::new(),
        stabilized: true,
    }
}

fn span_echelon(polys: &[LaurentPolynomial], basis: &MonomialBasis) -> (Vec<usize>, Echelon) {
    let mut columns = ascending_columns(basis);
    columns.reverse();
    let mut e = Echelon::new(basis.len());
    for f in polys {
        let coeffs = basis
            .coefficients(f)
            .expect("polynomial degree within the basis");
        let permuted: Vec<Rational> = columns.iter().map(|&i| coeffs[i].clone()).collect();
        e.insert(integer_row(&permuted));
    }
    (columns, e)
}

/// Reduced echelon basis of the span of `polys`, in the same normal form as
/// [`VanishingSpace::basis`]. All inputs must have degree at most `d`.
pub fn canonical_span(polys: &[LaurentPolynomial], nvars: usize, d: u32) -> Vec<LaurentPolynomial> {
    let basis = MonomialBasis::new(nvars, d);
    let (columns, e) = span_echelon(polys, &basis);
    let mut out: Vec<LaurentPolynomial> = e
        .rows()
        .map(|(p, r)| {
            let lead = &r[p];
            let mut coeffs = vec![Rational::zero(); r.len()];
            for (c, x) in r.iter().enumerate() {
                coeffs[columns[c]] = Rational::new(x.clone(), lead.clone());
            }
            basis.polynomial(&coeffs)
        })
        .collect();
    out.reverse();
    out
}

fn span_contains(polys: &[LaurentPolynomial], f: &LaurentPolynomial, nvars: usize, d: u32) -> bool {
    let basis = MonomialBasis::new(nvars, d);
    let Some(coeffs) = basis.coefficients(f) else {
        return false;
    };
    let (columns, e) = span_echelon(polys, &basis);
    let permuted: Vec<Rational> = columns.iter().map(|&i| coeffs[i].clone()).collect();
    e.contains(&integer_row(&permuted))
}

/// Degree-`d` part of the ideal generated by `gens`: the span of all
/// `monomial * g` of degree at most `d`, in canonical form.
pub fn truncated_ideal_span(gens: &[LaurentPolynomial], nvars: usize, d: u32) -> Vec<LaurentPolynomial> {
    let mut products = Vec::new();
    for g in gens {
        let Some(dg) = g.total_degree() else { continue };
        if dg < 0 || dg as u32 > d {
            continue;
        }
        for m in MonomialBasis::new(nvars, d - dg as u32).monomials() {
            products.push(g.mul_monomial(m));
        }
    }
    canonical_span(&products, nvars, d)
}

/// A small generating set of the degree-`d` truncated ideal spanned by
/// `space`: elements are taken by increasing leading monomial and kept when
/// not already in the truncated ideal of those kept before.
pub fn ideal_generators(space: &VanishingSpace) -> Vec<LaurentPolynomial> {
    let mut gens: Vec<LaurentPolynomial> = Vec::new();
    let mut span: Vec<LaurentPolynomial> = Vec::new();
    for f in &space.basis {
        if !span_contains(&span, f, space.nvars, space.degree_bound) {
            gens.push(f.clone());
            span = truncated_ideal_span(&gens, space.nvars, space.degree_bound);
        }
    }
    gens
}

/// Vanishing space of the orbit points `P_offset, P_offset+stride, ...`.
///
/// Points are added until one of: the space is zero (it can only shrink);
/// a detected period shows every distinct point of the class is in; or at
/// least `width + 3` points were tried and the last 3 changed nothing. If
/// the horizon is reached first the result is returned with
/// `stabilized = false`.
pub fn stabilized_vanishing_space(
    q: &Quiver,
    start: &[Rational],
    d: u32,
    offset: usize,
    stride: usize,
    budget: &Budget,
) -> Result<VanishingSpace, VarietyError> {
    let mut orbit = Orbit::new(q, start, budget.max_bits)?;
    vanishing_space_on(&mut orbit, d, offset, stride, budget.horizon)
}

/// As [`stabilized_vanishing_space`], on an orbit that may already hold
/// computed points.
pub fn vanishing_space_on(
    orbit: &mut Orbit,
    d: u32,
    offset: usize,
    stride: usize,
    horizon: usize,
) -> Result<VanishingSpace, VarietyError> {
    if stride == 0 {
        return Err(VarietyError::InvalidStride);
    }
    let n = orbit.quiver().n();
    let basis = MonomialBasis::new(n, d);
    let width = basis.len();
    let mut builder = NullspaceBuilder::new(&basis);
    let mut samples = Vec::new();
    let mut unchanged = 0usize;
    let complete = |orbit: &Orbit, k: usize| orbit.period().is_some_and(|p| k >= p / p.gcd(&stride));
    let mut k = 0usize;
    let stabilized = loop {
        if complete(orbit, k) {
            break true;
        }
        let t = offset + k * stride;
        if t > horizon {
            break false;
        }
        let p = orbit.point(t)?.clone();
        if complete(orbit, k) {
            break true;
        }
        let changed = builder.add_point(&p);
        samples.push(t);
        unchanged = if changed { 0 } else { unchanged + 1 };
        if builder.is_zero() || (samples.len() >= width + 3 && unchanged >= 3) {
            break true;
        }
        k += 1;
    };
    Ok(VanishingSpace {
        nvars: n,
        degree_bound: d,
        basis: builder.polynomials(),
        points_used: samples.len(),
        samples,
        stabilized,
    })
}
