use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rational, LaurentPolynomial, RationalFunction};

/// Wire form of a Laurent polynomial: terms sorted graded-lex descending,
/// coefficients as exact-rational strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i32>,
    pub coef: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunctionJson {
    pub num: PolynomialJson,
    pub den: PolynomialJson,
}

impl From<&LaurentPolynomial> for PolynomialJson {
    fn from(p: &LaurentPolynomial) -> Self {
        PolynomialJson {
            nvars: p.nvars(),
            terms: p
                .terms()
                .rev()
                .map(|(e, c)| TermJson {
                    exp: e.as_slice().to_vec(),
                    coef: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolynomialJson> for LaurentPolynomial {
    type Error = String;

    fn try_from(j: PolynomialJson) -> Result<Self, String> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            if t.exp.len() != j.nvars {
                return Err(format!(
                    "exponent vector {:?} does not have {} entries",
                    t.exp, j.nvars
                ));
            }
            let c = parse_rational(&t.coef).map_err(|e| e.to_string())?;
            terms.push((t.exp, c));
        }
        Ok(LaurentPolynomial::from_terms(j.nvars, terms))
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolynomialJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PolynomialJson::deserialize(d)?;
        LaurentPolynomial::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl From<&RationalFunction> for RationalFunctionJson {
    fn from(f: &RationalFunction) -> Self {
        RationalFunctionJson {
            num: f.num().into(),
            den: f.den().into(),
        }
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RationalFunctionJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = RationalFunctionJson::deserialize(d)?;
        let num = LaurentPolynomial::try_from(j.num).map_err(serde::de::Error::custom)?;
        let den = LaurentPolynomial::try_from(j.den).map_err(serde::de::Error::custom)?;
        RationalFunction::new(num, den).map_err(serde::de::Error::custom)
    }
}
