//! Order-3 forward jets for smooth potentials, a double-double scalar for the
//! finite-difference oracle, and the oracle itself.
//!
//! Potentials are written once over [`Real`] and evaluated with `f64`,
//! [`DoubleDouble`] or [`Jet3`].

mod dd;
mod fd;
mod jet;

pub use dd::DoubleDouble;
pub use fd::{fd_oracle, fd_oracle_f64, FdEstimate};
pub use jet::{seed_jets, Jet3};

use crate::error::{GeoError, Result};

/// Scalar arithmetic shared by every evaluator. Fallible operations report
/// a numeric-domain error instead of producing NaN.
pub trait Real: Clone + Sized {
    /// A constant shaped like `self` (same jet width).
    fn cst(&self, c: f64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    fn exp(&self) -> Self;
    fn ln(&self) -> Result<Self>;
    /// Real power; a non-integer exponent needs a positive base.
    fn powf(&self, e: f64) -> Result<Self>;
    fn value(&self) -> f64;

    fn scale(&self, c: f64) -> Self {
        self.mul(&self.cst(c))
    }

    fn add_c(&self, c: f64) -> Self {
        self.add(&self.cst(c))
    }

    fn powi(&self, k: i32) -> Result<Self> {
        if k < 0 {
            return self.cst(1.0).div(&self.powi(-k)?);
        }
        let mut acc = self.cst(1.0);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        Ok(acc)
    }
}

pub(crate) fn domain(msg: impl Into<String>) -> GeoError {
    GeoError::NumericDomain(msg.into())
}

impl Real for f64 {
    fn cst(&self, c: f64) -> Self {
        c
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if *o == 0.0 {
            return Err(domain("division by zero"));
        }
        Ok(self / o)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Result<Self> {
        if *self <= 0.0 {
            return Err(domain(format!("ln of non-positive {self}")));
        }
        Ok(f64::ln(*self))
    }
    fn powf(&self, e: f64) -> Result<Self> {
        if e.fract() == 0.0 && e.abs() < 64.0 {
            return Real::powi(self, e as i32);
        }
        if *self <= 0.0 {
            return Err(domain(format!("non-integer power of non-positive {self}")));
        }
        Ok(f64::powf(*self, e))
    }
    fn value(&self) -> f64 {
        *self
    }
}
