use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::ExponentVector;
use super::ratfunc::RationalFunction;
use super::{ArithError, Rational};

/// Sparse Laurent polynomial over the rationals in `nvars` variables.
///
/// Terms are kept in a map ordered by graded-lex; zero coefficients are never
/// stored, so the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, ExponentVector::zero(nvars), c)
    }

    /// The variable `x_{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range");
        Self::monomial(nvars, ExponentVector::unit(nvars, index), Rational::one())
    }

    pub fn monomial(nvars: usize, exponents: ExponentVector, coef: Rational) -> Self {
        assert_eq!(exponents.len(), nvars);
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exponents, coef);
        }
        LaurentPolynomial { nvars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i32>, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            p.add_term(ExponentVector::new(e), c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| e.is_constant() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// The graded-lex greatest term.
    pub fn leading_term(&self) -> Option<(&ExponentVector, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_constant())
    }

    /// The constant value, when the polynomial is constant.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.coefficient(&ExponentVector::zero(self.nvars)))
        } else {
            None
        }
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.is_nonnegative())
    }

    /// Largest total degree among the terms.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.degree()).max()
    }

    /// Componentwise minimum of the exponent vectors (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> ExponentVector {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return ExponentVector::zero(self.nvars);
        };
        let mut m = first.as_slice().to_vec();
        for e in it {
            for (mi, &ei) in m.iter_mut().zip(e.as_slice()) {
                *mi = (*mi).min(ei);
            }
        }
        ExponentVector::new(m)
    }

    pub fn mul_monomial(&self, e: &ExponentVector) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.add(e), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Splits off integer content: returns `(s, s * self)` where `s * self`
    /// has coprime integer coefficients and a positive graded-lex leading
    /// coefficient. The zero polynomial returns `(1, 0)`.
    pub fn primitive_part(&self) -> (Rational, Self) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let mut s = Rational::new(den_lcm, num_gcd);
        if self.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            s = -s;
        }
        let p = self.scale(&s);
        (s, p)
    }

    /// Formal partial derivative with respect to `x_{index+1}`.
    pub fn derivative(&self, index: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.as_slice()[index];
            if k == 0 {
                continue;
            }
            let mut d = e.as_slice().to_vec();
            d[index] -= 1;
            out.add_term(ExponentVector::new(d), c * Rational::from_integer(BigInt::from(k)));
        }
        out
    }

    /// Value at `point`, summed over a common denominator so that only one
    /// reduction is needed.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, ArithError> {
        if point.len() != self.nvars {
            return Err(ArithError::NvarsMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        if self.terms.is_empty() {
            return Ok(Rational::zero());
        }
        // x_i^k = a^k / b^k = a^(k - lo) b^(hi - k) / (a^-lo b^hi), lo <= 0 <= hi
        let mut lo = vec![0i32; self.nvars];
        let mut hi = vec![0i32; self.nvars];
        for e in self.terms.keys() {
            for (i, &k) in e.as_slice().iter().enumerate() {
                lo[i] = lo[i].min(k);
                hi[i] = hi[i].max(k);
                if k < 0 && point[i].is_zero() {
                    return Err(ArithError::PoleAtPoint);
                }
            }
        }
        let coef_den = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut cache: HashMap<(usize, bool, u32), BigInt> = HashMap::new();
        let mut power = |i: usize, numer: bool, k: u32| -> BigInt {
            if k == 0 {
                return BigInt::one();
            }
            cache
                .entry((i, numer, k))
                .or_insert_with(|| {
                    let base = if numer { point[i].numer() } else { point[i].denom() };
                    num_traits::pow(base.clone(), k as usize)
                })
                .clone()
        };
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let mut v = c.numer() * (&coef_den / c.denom());
            for (i, &k) in e.as_slice().iter().enumerate() {
                if lo[i] == 0 && hi[i] == 0 {
                    continue;
                }
                v *= power(i, true, (k - lo[i]) as u32);
                v *= power(i, false, (hi[i] - k) as u32);
            }
            total += v;
        }
        let mut den = coef_den;
        for i in 0..self.nvars {
            den *= power(i, true, (-lo[i]) as u32);
            den *= power(i, false, hi[i] as u32);
        }
        Ok(Rational::new(total, den))
    }

    /// Exact division `self / divisor` when the quotient is a Laurent
    /// polynomial.
    ///
    /// Both operands are shifted to ordinary polynomials not divisible by any
    /// variable; sparse division under graded-lex then succeeds iff the
    /// divisor divides.
    pub fn exact_divide(&self, divisor: &LaurentPolynomial) -> Option<LaurentPolynomial> {
        assert_eq!(self.nvars, divisor.nvars);
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        let a_shift = self.min_exponents();
        let b_shift = divisor.min_exponents();
        let mut rem = self.mul_monomial(&a_shift.scale(-1));
        let b = divisor.mul_monomial(&b_shift.scale(-1));
        let (b_lead, b_coef) = b.leading_term().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut quotient = Self::zero(self.nvars);
        while let Some((e, c)) = rem.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            if !e.is_divisible_by(&b_lead) {
                return None;
            }
            let qe = e.sub(&b_lead);
            let qc = c / &b_coef;
            for (be, bc) in b.terms() {
                rem.add_term(be.add(&qe), -(bc * &qc));
            }
            quotient.add_term(qe, qc);
        }
        Some(quotient.mul_monomial(&a_shift.sub(&b_shift)))
    }

    /// Substitutes `values[i]` for `x_{i+1}`.
    ///
    /// Negative exponents are handled by clearing them first, so the result is
    /// a rational function whose denominator is a product of powers of the
    /// substituted values. Fails with `TermBudgetExceeded` when an
    /// intermediate product exceeds `max_terms`.
    pub fn substitute(
        &self,
        values: &[LaurentPolynomial],
        max_terms: usize,
    ) -> Result<RationalFunction, ArithError> {
        let (num, clear) = self.substitute_cleared(values, max_terms)?;
        let den = power_product(values, &clear, max_terms)?;
        RationalFunction::new(num, den)
    }

    /// Like [`substitute`](Self::substitute), but returns the cleared
    /// numerator together with the power of each value in the denominator.
    pub fn substitute_cleared(
        &self,
        values: &[LaurentPolynomial],
        max_terms: usize,
    ) -> Result<(LaurentPolynomial, Vec<u32>), ArithError> {
        if values.len() != self.nvars {
            return Err(ArithError::NvarsMismatch {
                expected: self.nvars,
                found: values.len(),
            });
        }
        let target = values.first().map(|v| v.nvars).unwrap_or(0);
        if values.iter().any(|v| v.nvars != target) {
            return Err(ArithError::NvarsMismatch {
                expected: target,
                found: values.iter().map(|v| v.nvars).find(|&n| n != target).unwrap_or(0),
            });
        }
        let shift = self.min_exponents();
        let clear: Vec<u32> = shift.as_slice().iter().map(|&e| (-e).max(0) as u32).collect();
        let mut powers = PowerCache::new(values, max_terms);
        let mut num = LaurentPolynomial::zero(target);
        for (e, c) in &self.terms {
            let mut term = LaurentPolynomial::constant(target, c.clone());
            for (i, &k) in e.as_slice().iter().enumerate() {
                let k = (k as i64 + clear[i] as i64) as u32;
                if k > 0 {
                    term = checked_mul(&term, powers.get(i, k)?, max_terms)?;
                }
            }
            num = &num + &term;
            check_budget(&num, max_terms)?;
        }
        Ok((num, clear))
    }
}

/// `prod values[i]^powers[i]`.
pub(crate) fn power_product(
    values: &[LaurentPolynomial],
    powers: &[u32],
    max_terms: usize,
) -> Result<LaurentPolynomial, ArithError> {
    let target = values.first().map(|v| v.nvars).unwrap_or(0);
    let mut cache = PowerCache::new(values, max_terms);
    let mut out = LaurentPolynomial::one(target);
    for (i, &k) in powers.iter().enumerate() {
        if k > 0 {
            out = checked_mul(&out, cache.get(i, k)?, max_terms)?;
        }
    }
    Ok(out)
}

struct PowerCache<'a> {
    values: &'a [LaurentPolynomial],
    cache: HashMap<(usize, u32), LaurentPolynomial>,
    max_terms: usize,
}

impl<'a> PowerCache<'a> {
    fn new(values: &'a [LaurentPolynomial], max_terms: usize) -> Self {
        PowerCache {
            values,
            cache: HashMap::new(),
            max_terms,
        }
    }

    fn get(&mut self, index: usize, k: u32) -> Result<&LaurentPolynomial, ArithError> {
        if !self.cache.contains_key(&(index, k)) {
            let p = if k == 1 {
                self.values[index].clone()
            } else {
                let half = self.get(index, k / 2)?.clone();
                let mut p = checked_mul(&half, &half, self.max_terms)?;
                if k % 2 == 1 {
                    p = checked_mul(&p, &self.values[index], self.max_terms)?;
                }
                p
            };
            self.cache.insert((index, k), p);
        }
        Ok(&self.cache[&(index, k)])
    }
}

fn check_budget(p: &LaurentPolynomial, max_terms: usize) -> Result<(), ArithError> {
    if p.num_terms() > max_terms {
        Err(ArithError::TermBudgetExceeded {
            terms: p.num_terms(),
            limit: max_terms,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn checked_mul(
    a: &LaurentPolynomial,
    b: &LaurentPolynomial,
    max_terms: usize,
) -> Result<LaurentPolynomial, ArithError> {
    let p = a * b;
    check_budget(&p, max_terms)?;
    Ok(p)
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch");
        let (mut out, other) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch");
        let mut acc: HashMap<ExponentVector, Rational> =
            HashMap::with_capacity(self.terms.len().saturating_mul(rhs.terms.len()).min(1 << 20));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                // skip the gcd work of a general rational product
                let c = if ca.is_integer() && cb.is_integer() {
                    Rational::from_integer(ca.numer() * cb.numer())
                } else {
                    ca * cb
                };
                match acc.entry(ea.add(eb)) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += c;
                    }
                }
            }
        }
        LaurentPolynomial {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Text syntax, terms in descending graded-lex order: `x1^2 - 3*x1*x2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if e.is_constant() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{e}")?;
            } else {
                write!(f, "{mag}*{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}
