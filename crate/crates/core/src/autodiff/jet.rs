//! Truncated multivariate Taylor jets through third order.

use super::{domain, Real};
use crate::error::Result;

/// Value, gradient, Hessian and third derivatives of a scalar in `nvars`
/// variables. Only entries with `i <= j (<= k)` are computed; the rest are
/// mirrored, so symmetry holds bit for bit.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet3 {
    pub nvars: usize,
    pub value: f64,
    pub grad: Vec<f64>,
    hess: Vec<f64>,
    third: Vec<f64>,
}

impl Jet3 {
    pub fn constant(nvars: usize, value: f64) -> Self {
        Jet3 {
            nvars,
            value,
            grad: vec![0.0; nvars],
            hess: vec![0.0; nvars * nvars],
            third: vec![0.0; nvars * nvars * nvars],
        }
    }

    pub fn variable(nvars: usize, idx: usize, value: f64) -> Self {
        let mut j = Self::constant(nvars, value);
        j.grad[idx] = 1.0;
        j
    }

    pub fn hess(&self, i: usize, j: usize) -> f64 {
        self.hess[i * self.nvars + j]
    }

    pub fn third(&self, i: usize, j: usize, k: usize) -> f64 {
        let n = self.nvars;
        self.third[(i * n + j) * n + k]
    }

    pub fn hess_matrix(&self) -> Vec<Vec<f64>> {
        (0..self.nvars).map(|i| (0..self.nvars).map(|j| self.hess(i, j)).collect()).collect()
    }

    /// Builds the jet from closures on the canonical index ranges and
    /// mirrors into every permutation.
    fn assemble(
        nvars: usize,
        value: f64,
        g: impl Fn(usize) -> f64,
        h: impl Fn(usize, usize) -> f64,
        t: impl Fn(usize, usize, usize) -> f64,
    ) -> Self {
        let n = nvars;
        let mut out = Self::constant(n, value);
        for i in 0..n {
            out.grad[i] = g(i);
            for j in i..n {
                let v = h(i, j);
                out.hess[i * n + j] = v;
                out.hess[j * n + i] = v;
                for k in j..n {
                    let v = t(i, j, k);
                    for (a, b, c) in [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
                        out.third[(a * n + b) * n + c] = v;
                    }
                }
            }
        }
        out
    }

    /// `f o self` for a univariate `f` with derivatives `d = [f, f', f'', f''']`.
    pub fn compose(&self, d: [f64; 4]) -> Self {
        let u = self;
        Self::assemble(
            u.nvars,
            d[0],
            |i| d[1] * u.grad[i],
            |i, j| d[1] * u.hess(i, j) + d[2] * u.grad[i] * u.grad[j],
            |i, j, k| {
                d[1] * u.third(i, j, k)
                    + d[2] * (u.hess(i, j) * u.grad[k] + u.hess(i, k) * u.grad[j] + u.hess(j, k) * u.grad[i])
                    + d[3] * u.grad[i] * u.grad[j] * u.grad[k]
            },
        )
    }

    fn zip_lin(&self, o: &Self, s: f64) -> Self {
        Self::assemble(
            self.nvars,
            self.value + s * o.value,
            |i| self.grad[i] + s * o.grad[i],
            |i, j| self.hess(i, j) + s * o.hess(i, j),
            |i, j, k| self.third(i, j, k) + s * o.third(i, j, k),
        )
    }

    pub fn recip(&self) -> Result<Self> {
        let u = self.value;
        if u == 0.0 {
            return Err(domain("division by a jet with zero value"));
        }
        let r = 1.0 / u;
        Ok(self.compose([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r]))
    }
}

/// One seed jet per coordinate of `point`.
pub fn seed_jets(point: &[f64]) -> Vec<Jet3> {
    let n = point.len();
    point.iter().enumerate().map(|(i, &v)| Jet3::variable(n, i, v)).collect()
}

impl Real for Jet3 {
    fn cst(&self, c: f64) -> Self {
        Jet3::constant(self.nvars, c)
    }

    fn add(&self, o: &Self) -> Self {
        self.zip_lin(o, 1.0)
    }

    fn sub(&self, o: &Self) -> Self {
        self.zip_lin(o, -1.0)
    }

    fn mul(&self, o: &Self) -> Self {
        let (a, b) = (self, o);
        Self::assemble(
            a.nvars,
            a.value * b.value,
            |i| a.grad[i] * b.value + a.value * b.grad[i],
            |i, j| a.hess(i, j) * b.value + a.grad[i] * b.grad[j] + a.grad[j] * b.grad[i] + a.value * b.hess(i, j),
            |i, j, k| {
                a.third(i, j, k) * b.value
                    + a.hess(i, j) * b.grad[k]
                    + a.hess(i, k) * b.grad[j]
                    + a.hess(j, k) * b.grad[i]
                    + a.grad[i] * b.hess(j, k)
                    + a.grad[j] * b.hess(i, k)
                    + a.grad[k] * b.hess(i, j)
                    + a.value * b.third(i, j, k)
            },
        )
    }

    fn neg(&self) -> Self {
        self.compose([-self.value, -1.0, 0.0, 0.0])
    }

    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    fn exp(&self) -> Self {
        let e = self.value.exp();
        self.compose([e; 4])
    }

    fn ln(&self) -> Result<Self> {
        let u = self.value;
        if u <= 0.0 {
            return Err(domain(format!("ln of non-positive {u}")));
        }
        let r = 1.0 / u;
        Ok(self.compose([u.ln(), r, -r * r, 2.0 * r * r * r]))
    }

    fn powf(&self, e: f64) -> Result<Self> {
        let u = self.value;
        if e.fract() == 0.0 && e.abs() < 64.0 {
            if u == 0.0 && e < 0.0 {
                return Err(domain("negative power of zero"));
            }
            let k = e as i32;
            let p = |m: i32| if k - m < 0 && u == 0.0 { 0.0 } else { u.powi(k - m) };
            let kf = k as f64;
            return Ok(self.compose([p(0), kf * p(1), kf * (kf - 1.0) * p(2), kf * (kf - 1.0) * (kf - 2.0) * p(3)]));
        }
        if u <= 0.0 {
            return Err(domain(format!("non-integer power of non-positive {u}")));
        }
        Ok(self.compose([
            u.powf(e),
            e * u.powf(e - 1.0),
            e * (e - 1.0) * u.powf(e - 2.0),
            e * (e - 1.0) * (e - 2.0) * u.powf(e - 3.0),
        ]))
    }

    fn value(&self) -> f64 {
        self.value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_mixed_partial() {
        let v = seed_jets(&[2.0, 3.0]);
        let p = v[0].mul(&v[1]);
        assert_eq!(p.value, 6.0);
        assert_eq!(p.hess(0, 1), 1.0);
        assert_eq!(p.hess(1, 0), 1.0);
        assert_eq!(p.hess(0, 0), 0.0);
    }

    #[test]
    fn exp_at_zero() {
        let x = Jet3::variable(1, 0, 0.0);
        let e = x.exp();
        assert_eq!((e.value, e.grad[0], e.hess(0, 0), e.third(0, 0, 0)), (1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn domain_errors() {
        let x = Jet3::variable(1, 0, -1.0);
        assert!(x.ln().is_err());
        assert!(x.powf(0.5).is_err());
        assert!(x.powf(3.0).is_ok());
        assert!(x.cst(1.0).div(&x.cst(0.0)).is_err());
    }

    #[test]
    fn cubic_polynomial_exact() {
        // f = x^3 y - 2 x y^2 + 5 at (3, -2)
        let v = seed_jets(&[3.0, -2.0]);
        let (x, y) = (&v[0], &v[1]);
        let f = x.powi(3).unwrap().mul(y).sub(&x.mul(&y.mul(y)).scale(2.0)).add_c(5.0);
        assert_eq!(f.value, 27.0 * -2.0 - 2.0 * 3.0 * 4.0 + 5.0);
        assert_eq!(f.grad, vec![3.0 * 9.0 * -2.0 - 2.0 * 4.0, 27.0 - 4.0 * 3.0 * -2.0]);
        assert_eq!(f.hess(0, 0), 6.0 * 3.0 * -2.0);
        assert_eq!(f.hess(0, 1), 27.0 - 4.0 * -2.0);
        assert_eq!(f.hess(1, 1), -4.0 * 3.0);
        assert_eq!(f.third(0, 0, 0), -12.0);
        assert_eq!(f.third(0, 0, 1), 18.0);
        assert_eq!(f.third(0, 1, 1), -4.0);
        assert_eq!(f.third(1, 1, 1), 0.0);
    }
}
