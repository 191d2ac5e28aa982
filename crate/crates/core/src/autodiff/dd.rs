//! Unevaluated sum of two doubles, about 106 bits of significand.

use super::{domain, Real};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

const LN2: DoubleDouble = DoubleDouble {
    hi: 0.693_147_180_559_945_3,
    lo: 2.319_046_813_846_299_6e-17,
};

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    fn norm(hi: f64, lo: f64) -> Self {
        let (h, l) = quick_two_sum(hi, lo);
        DoubleDouble { hi: h, lo: l }
    }

    fn ldexp(self, k: i32) -> Self {
        let f = 2f64.powi(k);
        DoubleDouble {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    pub fn dd_add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        Self::norm(s, e + f)
    }

    pub fn dd_mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        Self::norm(p, e + (self.hi * o.lo + self.lo * o.hi))
    }

    pub fn dd_div(self, o: Self) -> Self {
        let q1 = self.hi / o.hi;
        let r = self.dd_add(o.dd_mul(Self::from_f64(-q1)));
        let q2 = r.hi / o.hi;
        let r = r.dd_add(o.dd_mul(Self::from_f64(-q2)));
        let q3 = r.hi / o.hi;
        let (h, l) = quick_two_sum(q1, q2);
        DoubleDouble { hi: h, lo: l }.dd_add(Self::from_f64(q3))
    }

    fn dd_neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn dd_exp(self) -> Self {
        if self.hi > 709.0 {
            return Self::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Self::from_f64(0.0);
        }
        let k = (self.hi / LN2.hi).round();
        let r = self.dd_add(LN2.dd_mul(Self::from_f64(-k))).ldexp(-10);
        // expm1(r) by Taylor, |r| < 4e-4
        let mut term = r;
        let mut sum = r;
        for i in 2..=12 {
            term = term.dd_mul(r).dd_div(Self::from_f64(i as f64));
            sum = sum.dd_add(term);
        }
        for _ in 0..10 {
            sum = sum.ldexp(1).dd_add(sum.dd_mul(sum));
        }
        sum.dd_add(Self::from_f64(1.0)).ldexp(k as i32)
    }

    pub fn dd_ln(self) -> Option<Self> {
        if !(self.hi > 0.0) {
            return None;
        }
        let mut y = Self::from_f64(self.hi.ln());
        for _ in 0..2 {
            y = y.dd_add(self.dd_mul(y.dd_neg().dd_exp())).dd_add(Self::from_f64(-1.0));
        }
        Some(y)
    }
}

impl Real for DoubleDouble {
    fn cst(&self, c: f64) -> Self {
        Self::from_f64(c)
    }
    fn add(&self, o: &Self) -> Self {
        self.dd_add(*o)
    }
    fn sub(&self, o: &Self) -> Self {
        self.dd_add(o.dd_neg())
    }
    fn mul(&self, o: &Self) -> Self {
        self.dd_mul(*o)
    }
    fn neg(&self) -> Self {
        self.dd_neg()
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.hi == 0.0 {
            return Err(domain("division by zero"));
        }
        Ok(self.dd_div(*o))
    }
    fn exp(&self) -> Self {
        self.dd_exp()
    }
    fn ln(&self) -> Result<Self> {
        self.dd_ln().ok_or_else(|| domain(format!("ln of non-positive {}", self.hi)))
    }
    fn powf(&self, e: f64) -> Result<Self> {
        if e.fract() == 0.0 && e.abs() < 64.0 {
            return self.powi(e as i32);
        }
        Ok(self.ln()?.dd_mul(Self::from_f64(e)).dd_exp())
    }
    fn value(&self) -> f64 {
        self.to_f64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn third_times_three_is_one() {
        let t = DoubleDouble::from_f64(1.0).dd_div(DoubleDouble::from_f64(3.0));
        let back = t.dd_mul(DoubleDouble::from_f64(3.0)).dd_add(DoubleDouble::from_f64(-1.0));
        assert!(back.to_f64().abs() < 1e-31);
    }

    #[test]
    fn exp_ln_round_trip() {
        for &x in &[0.1, 0.75, 1.0, 2.5, 17.0, 1e-3] {
            let d = DoubleDouble::from_f64(x);
            let r = d.dd_ln().unwrap().dd_exp().dd_add(d.dd_neg());
            assert!(r.to_f64().abs() < 1e-29 * x.max(1.0), "{x}: {r:?}");
            assert!((d.dd_exp().to_f64() - x.exp()).abs() <= 2.0 * f64::EPSILON * x.exp());
        }
        // e = exp(1) to double-double precision
        let e = DoubleDouble::from_f64(1.0).dd_exp();
        assert_eq!(e.hi, std::f64::consts::E);
        assert!((e.lo - 1.445_646_891_729_250_2e-16).abs() < 1e-31);
        assert!(DoubleDouble::from_f64(-1.0).dd_ln().is_none());
    }
}
