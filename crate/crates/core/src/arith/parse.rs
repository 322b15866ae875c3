//! Recursive-descent parser for the polynomial text syntax.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' exponent)?
//! exponent:= '-'? integer | '(' '-'? integer ')'
//! primary := integer | 'x' index | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::{ArithError, LaurentPolynomial, Rational, RationalFunction};

pub fn parse(text: &str, nvars: usize) -> Result<RationalFunction, ArithError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

/// Parses text that must denote a Laurent polynomial (denominator a monomial).
pub fn parse_polynomial(text: &str, nvars: usize) -> Result<LaurentPolynomial, ArithError> {
    let f = parse(text, nvars)?;
    f.as_laurent().cloned().ok_or(ArithError::NotLaurent)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ArithError {
        ArithError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction, ArithError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, ArithError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let rhs = self.unary()?;
                if rhs.is_zero() {
                    return Err(ArithError::Syntax {
                        pos: at,
                        msg: "division by the zero polynomial".into(),
                    });
                }
                acc = acc.checked_div(&rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction, ArithError> {
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<RationalFunction, ArithError> {
        let base = self.primary()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let at = self.pos;
        let k = self.integer()?;
        if paren && !self.eat(b')') {
            return Err(self.error("expected ')'"));
        }
        let k: i32 = i32::try_from(k).map_err(|_| ArithError::Syntax {
            pos: at,
            msg: "exponent too large".into(),
        })?;
        let k = if neg { -k } else { k };
        if k < 0 && base.is_zero() {
            return Err(ArithError::Syntax {
                pos: at,
                msg: "division by the zero polynomial".into(),
            });
        }
        base.pow(k)
    }

    fn integer(&mut self) -> Result<BigInt, ArithError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn primary(&mut self) -> Result<RationalFunction, ArithError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(b'x') => {
                let at = self.pos;
                self.pos += 1;
                if !self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.error("expected variable index after 'x'"));
                }
                let idx = self.integer()?;
                let idx = usize::try_from(&idx).unwrap_or(usize::MAX);
                if idx == 0 || idx > self.nvars {
                    return Err(ArithError::VariableOutOfRange {
                        pos: at,
                        index: idx,
                        nvars: self.nvars,
                    });
                }
                Ok(RationalFunction::var(self.nvars, idx - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let k = self.integer()?;
                Ok(RationalFunction::constant(self.nvars, Rational::from_integer(k)))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn kronecker_invariant_is_laurent() {
        let h = parse("(x1^2+x2^2+1)/(x1*x2)", 2).unwrap();
        assert!(h.den().is_one());
        let expected = LaurentPolynomial::from_terms(
            2,
            [(vec![1, -1], q(1)), (vec![-1, 1], q(1)), (vec![-1, -1], q(1))],
        );
        assert_eq!(h.num(), &expected);
    }

    #[test]
    fn single_variable() {
        let f = parse("x1", 3).unwrap();
        assert_eq!(f.num(), &LaurentPolynomial::var(3, 0));
        assert!(f.den().is_one());
    }

    #[test]
    fn monomial_denominator_folds_into_numerator() {
        let h = parse("(x1+x3)/x2", 3).unwrap();
        // oracle: build x1*x2^-1 + x3*x2^-1 term by term
        let expected =
            LaurentPolynomial::from_terms(3, [(vec![1, -1, 0], q(1)), (vec![0, -1, 1], q(1))]);
        assert_eq!(h.num(), &expected);
        assert!(h.den().is_one());
    }

    #[test]
    fn precedence_and_unary_minus() {
        let f = parse("-x1^2 + 2*x2/4", 2).unwrap();
        let expected =
            LaurentPolynomial::from_terms(2, [(vec![2, 0], q(-1)), (vec![0, 1], Rational::new(1.into(), 2.into()))]);
        assert_eq!(f.num(), &expected);
        assert_eq!(parse("x1^(-2)", 1).unwrap(), parse("1/x1^2", 1).unwrap());
    }

    #[test]
    fn non_monomial_denominator_is_kept() {
        let f = parse("1/(x1+1)", 1).unwrap();
        assert_eq!(f.den().to_string(), "x1 + 1");
        assert_eq!(f.to_string(), "(1)/(x1 + 1)");
    }

    #[test]
    fn errors_report_position() {
        match parse("x1 + * x2", 2) {
            Err(ArithError::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse("x3", 2),
            Err(ArithError::VariableOutOfRange { index: 3, .. })
        ));
        assert!(matches!(parse("x0", 2), Err(ArithError::VariableOutOfRange { .. })));
        assert!(matches!(parse("1/(x1-x1)", 2), Err(ArithError::Syntax { pos: 1, .. })));
        assert!(matches!(parse("(x1", 2), Err(ArithError::Syntax { .. })));
        assert!(matches!(parse("2x1", 2), Err(ArithError::Syntax { pos: 1, .. })));
        assert!(parse("", 1).is_err());
    }

    #[test]
    fn zero_parses() {
        assert!(parse("x1 - x1", 2).unwrap().is_zero());
        assert!(Rational::zero().is_zero());
    }
}
