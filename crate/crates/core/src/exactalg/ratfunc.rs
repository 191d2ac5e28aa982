//! Quotients of Laurent polynomials, kept unreduced apart from sign
//! normalization and monomial denominators.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::Signed;

use super::laurent::LaurentPoly;
use super::rational::Rational;
use crate::error::{GeoError, Result};

#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(GeoError::Domain("zero denominator".into()));
        }
        Ok(Self::normalize(num, den))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let den = LaurentPoly::one(p.ring());
        RationalFunction { num: p, den }
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        if let Ok(inv) = den.inv_monomial() {
            let one = LaurentPoly::one(num.ring());
            return RationalFunction {
                num: &num * &inv,
                den: one,
            };
        }
        if num.is_zero() {
            return RationalFunction {
                den: LaurentPoly::one(num.ring()),
                num,
            };
        }
        if let Ok(q) = num.div_exact(&den) {
            return RationalFunction {
                den: LaurentPoly::one(num.ring()),
                num: q,
            };
        }
        let neg = den.leading().map(|(_, c)| c.is_negative()).unwrap_or(false);
        if neg {
            RationalFunction { num: -num, den: -den }
        } else {
            RationalFunction { num, den }
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this function equals, when the denominator is 1.
    pub fn as_poly(&self) -> Option<LaurentPoly> {
        if self.den.as_constant().map(|c| c == num::One::one()).unwrap_or(false) {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.den.eval(point)?;
        if num::Zero::is_zero(&d) {
            return Err(GeoError::Domain("denominator vanishes at point".into()));
        }
        Ok(self.num.eval(point)? / d)
    }

    pub fn partial(&self, i: usize) -> Self {
        let n = &(&self.num.partial(i) * &self.den) - &(&self.num * &self.den.partial(i));
        let d = &self.den * &self.den;
        Self::normalize(n, d)
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalize(&self.num + &rhs.num, self.den.clone());
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::normalize(n, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
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

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_poly() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "({}) / ({})", self.num, self.den),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::laurent::Ring;

    #[test]
    fn normalization_and_equality() {
        let r = Ring::new(&[("p", true), ("x", false)]);
        let p = r.var("p");
        let x = r.var("x");
        let a = RationalFunction::new(p.clone(), &x + &p).unwrap();
        let b = RationalFunction::new(-&(&p * &x), -&(&(&x * &x) + &(&p * &x))).unwrap();
        assert_eq!(a, b);
        assert!(a.denominator().leading().unwrap().1.is_positive());
        let c = RationalFunction::new(&x + &p, p.clone()).unwrap();
        assert!(c.as_poly().is_some());
        let sum = &a + &(-&a);
        assert!(sum.is_zero());
        assert!(RationalFunction::new(p.clone(), LaurentPoly::zero(&r)).is_err());
    }

    #[test]
    fn quotient_rule() {
        let r = Ring::new(&[("x", false)]);
        let x = r.var("x");
        let one = LaurentPoly::one(&r);
        let f = RationalFunction::new(one.clone(), &x + &one).unwrap();
        let want = RationalFunction::new(-one.clone(), &(&x + &one) * &(&x + &one)).unwrap();
        assert_eq!(f.partial(0), want);
    }
}
