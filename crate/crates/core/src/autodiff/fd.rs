//! Central finite differences with one Richardson refinement, evaluated in
//! double-double so that rounding stays far below the truncation error.

use super::{DoubleDouble, Real};
use crate::error::{GeoError, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdEstimate {
    pub estimate: f64,
    /// `|D(h/2) - D(h)|`, a bound on the unrefined error.
    pub error: f64,
}

/// 1-D central stencil for a derivative of order `k`: offsets (in units of
/// `h`) with weights; the sum is divided by `h^k`.
fn stencil(k: usize) -> &'static [(f64, f64)] {
    match k {
        0 => &[(0.0, 1.0)],
        1 => &[(1.0, 0.5), (-1.0, -0.5)],
        2 => &[(1.0, 1.0), (0.0, -2.0), (-1.0, 1.0)],
        _ => &[(2.0, 0.5), (1.0, -1.0), (-1.0, 1.0), (-2.0, -0.5)],
    }
}

fn central<F>(f: &F, point: &[f64], counts: &[usize], h: &[f64]) -> Result<DoubleDouble>
where
    F: Fn(&[DoubleDouble]) -> Result<DoubleDouble>,
{
    let n = point.len();
    let mut total = DoubleDouble::from_f64(0.0);
    let mut idx = vec![0usize; n];
    loop {
        let mut w = 1.0;
        let mut x = Vec::with_capacity(n);
        for i in 0..n {
            let (off, wi) = stencil(counts[i])[idx[i]];
            w *= wi;
            // off * h is exact for these small offsets
            x.push(DoubleDouble::from_f64(point[i]).dd_add(DoubleDouble::from_f64(off * h[i])));
        }
        let v = f(&x)?;
        if !v.is_finite() {
            return Err(GeoError::Numeric(format!("non-finite sample at {x:?}")));
        }
        total = total.dd_add(v.dd_mul(DoubleDouble::from_f64(w)));
        let mut i = 0;
        loop {
            if i == n {
                let mut scale = DoubleDouble::from_f64(1.0);
                for (c, hi) in counts.iter().zip(h) {
                    for _ in 0..*c {
                        scale = scale.dd_mul(DoubleDouble::from_f64(*hi));
                    }
                }
                return Ok(total.dd_div(scale));
            }
            idx[i] += 1;
            if idx[i] < stencil(counts[i]).len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Mixed partial of `f` at `point`; `multi[i]` is the derivative count in
/// variable `i`, total order at most 3.
pub fn fd_oracle<F>(f: &F, point: &[f64], multi: &[usize]) -> Result<FdEstimate>
where
    F: Fn(&[DoubleDouble]) -> Result<DoubleDouble>,
{
    if multi.len() != point.len() {
        return Err(GeoError::DimensionMismatch {
            expected: point.len(),
            got: multi.len(),
        });
    }
    let order: usize = multi.iter().sum();
    if order > 3 {
        return Err(GeoError::Unsupported(format!("derivative order {order} > 3")));
    }
    let step = f64::EPSILON.powf(1.0 / (order as f64 + 2.0));
    let h: Vec<f64> = point.iter().map(|x| x.abs().max(1.0) * step).collect();
    let d1 = central(f, point, multi, &h)?;
    if order == 0 {
        return Ok(FdEstimate {
            estimate: d1.to_f64(),
            error: 0.0,
        });
    }
    let h2: Vec<f64> = h.iter().map(|x| x / 2.0).collect();
    let d2 = central(f, point, multi, &h2)?;
    let rich = d2.dd_mul(DoubleDouble::from_f64(4.0)).dd_add(d1.neg()).dd_div(DoubleDouble::from_f64(3.0));
    Ok(FdEstimate {
        estimate: rich.to_f64(),
        error: d2.sub(&d1).to_f64().abs(),
    })
}

/// Convenience for plain `f64` closures; samples are rounded to double, so
/// accuracy is limited by ordinary rounding.
pub fn fd_oracle_f64<F>(f: &F, point: &[f64], multi: &[usize]) -> Result<FdEstimate>
where
    F: Fn(&[f64]) -> f64,
{
    let g = |x: &[DoubleDouble]| {
        let xs: Vec<f64> = x.iter().map(|d| d.to_f64()).collect();
        Ok(DoubleDouble::from_f64(f(&xs)))
    };
    fd_oracle(&g, point, multi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_third_derivative() {
        for &x in &[-3.0, 0.0, 0.7, 12.0] {
            let f = |v: &[DoubleDouble]| v[0].powi(3);
            let e = fd_oracle(&f, &[x], &[3]).unwrap();
            assert!((e.estimate - 6.0).abs() < 1e-6, "{x}: {e:?}");
        }
    }

    #[test]
    fn constant_gradient_is_zero() {
        let f = |v: &[DoubleDouble]| Ok(v[0].cst(4.25));
        for k in 0..2 {
            let mut m = vec![0, 0];
            m[k] = 1;
            assert!(fd_oracle(&f, &[1.5, -2.0], &m).unwrap().estimate.abs() < 1e-10);
        }
    }

    #[test]
    fn non_finite_and_bad_shape() {
        let f = |v: &[DoubleDouble]| v[0].cst(1.0).div(&v[0].sub(&v[0]).add(&v[0].cst(0.0)));
        assert!(fd_oracle(&f, &[1.0], &[1]).is_err());
        let g = |v: &[DoubleDouble]| Ok(v[0]);
        assert!(fd_oracle(&g, &[1.0], &[1, 0]).is_err());
        let e = fd_oracle_f64(&|x: &[f64]| x[0] * x[1], &[2.0, 3.0], &[1, 1]).unwrap();
        assert!((e.estimate - 1.0).abs() < 1e-6);
    }

    #[test]
    fn mixed_exp_partials() {
        // f = exp(x y), d^3/dx^2dy at (0.3, 0.8) = e^{xy} y (2 + x y)
        let f = |v: &[DoubleDouble]| Ok(v[0].mul(&v[1]).exp());
        let (x, y) = (0.3f64, 0.8f64);
        let want = (x * y).exp() * y * (2.0 + x * y);
        let e = fd_oracle(&f, &[x, y], &[2, 1]).unwrap();
        assert!(((e.estimate - want) / want).abs() < 1e-9, "{e:?} vs {want}");
    }
}
