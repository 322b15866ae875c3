use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::laurent::{power_product, LaurentPolynomial};
use super::{ArithError, Rational};

/// Quotient of two Laurent polynomials in canonical form.
///
/// The denominator is an ordinary polynomial divisible by no variable, with
/// coprime integer coefficients and a positive graded-lex leading
/// coefficient. Monomial denominators are folded into the numerator, so a
/// Laurent polynomial always has denominator `1`. Common non-monomial factors
/// are not cancelled in general (composition cancels powers of the
/// substituted values); equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct RationalFunction {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

impl RationalFunction {
    pub fn new(num: LaurentPolynomial, den: LaurentPolynomial) -> Result<Self, ArithError> {
        if num.nvars() != den.nvars() {
            return Err(ArithError::NvarsMismatch {
                expected: num.nvars(),
                found: den.nvars(),
            });
        }
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: LaurentPolynomial, den: LaurentPolynomial) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return RationalFunction {
                num,
                den: LaurentPolynomial::one(n),
            };
        }
        let shift = den.min_exponents().scale(-1);
        let den = den.mul_monomial(&shift);
        let num = num.mul_monomial(&shift);
        let (s, den) = den.primitive_part();
        let num = num.scale(&s);
        RationalFunction { num, den }
    }

    pub fn from_laurent(p: LaurentPolynomial) -> Self {
        let n = p.nvars();
        RationalFunction {
            num: p,
            den: LaurentPolynomial::one(n),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_laurent(LaurentPolynomial::constant(nvars, c))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::from_laurent(LaurentPolynomial::var(nvars, index))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn den(&self) -> &LaurentPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The Laurent polynomial this function equals, when the denominator is 1.
    pub fn as_laurent(&self) -> Option<&LaurentPolynomial> {
        self.den.is_one().then_some(&self.num)
    }

    /// Constant value, if the function is a constant.
    pub fn constant_value(&self) -> Option<Rational> {
        self.as_laurent().and_then(|p| p.constant_value())
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<Self, ArithError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, k: i32) -> Result<Self, ArithError> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let k = k.unsigned_abs();
        Ok(Self::canonical(base.num.pow(k), base.den.pow(k)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::canonical(self.num.scale(c), self.den.clone())
    }

    /// Equality in the function field: `a.num * b.den == b.num * a.den`.
    pub fn equals(&self, other: &RationalFunction) -> bool {
        assert_eq!(self.nvars(), other.nvars(), "nvars mismatch");
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, ArithError> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Err(ArithError::PoleAtPoint);
        }
        Ok(self.num.evaluate(point)? / d)
    }

    /// Substitutes `values[i]` for `x_{i+1}` in numerator and denominator.
    pub fn compose(
        &self,
        values: &[LaurentPolynomial],
        max_terms: usize,
    ) -> Result<RationalFunction, ArithError> {
        let (mut top, a) = self.num.substitute_cleared(values, max_terms)?;
        let (mut bottom, b) = self.den.substitute_cleared(values, max_terms)?;
        if bottom.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        // top * prod v^b / (bottom * prod v^a); cancel shared powers of the
        // substituted values, which are usually the only common factors.
        // Larger values go first: a small value may divide a larger one.
        let mut up = vec![0u32; values.len()];
        let mut down = vec![0u32; values.len()];
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(values[i].num_terms()));
        for i in order {
            let (side, count, keep) = if b[i] >= a[i] {
                (&mut bottom, b[i] - a[i], &mut up)
            } else {
                (&mut top, a[i] - b[i], &mut down)
            };
            let mut left = count;
            while left > 0 && !side.is_zero() {
                match side.exact_divide(&values[i]) {
                    Some(q) => {
                        *side = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            keep[i] = left;
        }
        let num = &top * &power_product(values, &up, max_terms)?;
        let den = &bottom * &power_product(values, &down, max_terms)?;
        Ok(Self::canonical(num, den))
    }

    /// The polynomial numerator `Num(f)`: negative exponents cleared by a
    /// monomial, integer content removed, graded-lex leading coefficient
    /// positive.
    pub fn numerator_normal_form(&self) -> LaurentPolynomial {
        let shift = self.num.min_exponents();
        let clear = shift
            .as_slice()
            .iter()
            .map(|&e| (-e).max(0))
            .collect::<Vec<_>>();
        let cleared = self
            .num
            .mul_monomial(&super::ExponentVector::new(clear));
        cleared.primitive_part().1
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.nvars() == other.nvars() && self.equals(other)
    }
}

impl Eq for RationalFunction {}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::canonical(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl From<LaurentPolynomial> for RationalFunction {
    fn from(p: LaurentPolynomial) -> Self {
        RationalFunction::from_laurent(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}
