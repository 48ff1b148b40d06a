use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Quotient of integer polynomials in canonical form: the fraction is
/// reduced, the combined content is 1, and the denominator's leading
/// coefficient is positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunction {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl RationalFunction {
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero("rational function with zero denominator".into()));
        }
        Ok(Self::canonical(num, den))
    }

    pub fn from_poly(p: IntPolynomial) -> Self {
        RationalFunction {
            num: p,
            den: IntPolynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(IntPolynomial::one())
    }

    fn canonical(num: IntPolynomial, den: IntPolynomial) -> Self {
        if num.is_zero() {
            return Self::from_poly(IntPolynomial::zero());
        }
        let g = num.gcd(&den);
        // g is primitive, so by Gauss's lemma it divides both over Z.
        let (mut num, mut den) = if g.degree() > super::poly::Degree::Finite(0) {
            (
                num.exact_div(&g).expect("primitive gcd divides"),
                den.exact_div(&g).expect("primitive gcd divides"),
            )
        } else {
            (num, den)
        };
        let c = num.content().gcd(&den.content());
        let mut c = if c.is_zero() { BigInt::from(1) } else { c };
        if den.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        num = IntPolynomial::new(num.coeffs().iter().map(|a| a / &c).collect());
        den = IntPolynomial::new(den.coeffs().iter().map(|a| a / &c).collect());
        RationalFunction { num, den }
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        Self::canonical(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        if other.is_zero() {
            return Err(Error::DivisionByZero("division by the zero rational function".into()));
        }
        Ok(Self::canonical(&self.num * &other.den, &self.den * &other.num))
    }

    pub fn inv(&self) -> Result<RationalFunction> {
        Self::one().div(self)
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<RationalFunction> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = u32::try_from(e.unsigned_abs())
            .map_err(|_| Error::Contract("exponent too large".into()))?;
        Ok(RationalFunction {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Equality by cross-multiplication.
    pub fn rf_eq(&self, other: &RationalFunction) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.display_with(var)
        } else {
            format!("({}) / ({})", self.num.display_with(var), self.den.display_with(var))
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("S"))
    }
}

pub fn rf_mul(a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
    a.mul(b)
}

pub fn rf_div(a: &RationalFunction, b: &RationalFunction) -> Result<RationalFunction> {
    a.div(b)
}

pub fn rf_eq(a: &RationalFunction, b: &RationalFunction) -> bool {
    a.rf_eq(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn inverse_pair() {
        let a = rf(&[1], &[1, -1]);
        let b = rf(&[1, -1], &[1]);
        assert_eq!(a.mul(&b), RationalFunction::one());
    }

    #[test]
    fn reduces_common_factor() {
        let a = rf(&[1, 0, -1], &[1, -1]);
        assert_eq!(a, RationalFunction::from_poly(p(&[1, 1])));
    }

    #[test]
    fn level_one_hasse_weil_shape() {
        let w = rf(&[1], &[1, -3, 2]);
        let expected = RationalFunction::from_poly(&p(&[1, -1]) * &p(&[1, -2])).inv().unwrap();
        assert!(w.rf_eq(&expected));
        assert_eq!(w, expected);
    }

    #[test]
    fn canonical_sign_and_content() {
        let a = rf(&[2, 2], &[-4, 0, 4]);
        // (2+2S)/(4S^2-4) = 1/(2S-2)
        assert_eq!(a.numerator(), &p(&[1]));
        assert_eq!(a.denominator(), &p(&[-2, 2]));
        let b = rf(&[3], &[6, 3]);
        assert_eq!(b.numerator(), &p(&[1]));
        assert_eq!(b.denominator(), &p(&[2, 1]));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(RationalFunction::new(p(&[1]), p(&[])).is_err());
        assert!(rf(&[1], &[1]).div(&RationalFunction::from_poly(p(&[]))).is_err());
    }

    #[test]
    fn powers() {
        let a = rf(&[1, -1], &[1, 1]);
        let sq = a.powi(2).unwrap();
        assert!(sq.rf_eq(&a.mul(&a)));
        let inv = a.powi(-1).unwrap();
        assert!(inv.mul(&a).rf_eq(&RationalFunction::one()));
        assert_eq!(a.powi(0).unwrap(), RationalFunction::one());
    }

    #[test]
    fn json_shape() {
        // 1/(1-S) is stored as -1/(S-1): positive leading denominator coefficient
        let s = serde_json::to_string(&rf(&[1], &[1, -1])).unwrap();
        assert_eq!(s, r#"{"num":{"coeffs":["-1"]},"den":{"coeffs":["-1","1"]}}"#);
    }
}
