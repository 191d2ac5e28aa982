//! Vector fields with Laurent-polynomial components.

use std::fmt;

use crate::exactalg::{LaurentPoly, Rational, RingRef};
use crate::error::{GeoError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct VectorFieldSym {
    ring: RingRef,
    comps: Vec<LaurentPoly>,
}

impl VectorFieldSym {
    /// Components on the first `comps.len()` symbols of the ring.
    pub fn new(comps: Vec<LaurentPoly>) -> Self {
        let ring = comps.first().expect("empty vector field").ring().clone();
        VectorFieldSym { ring, comps }
    }

    pub fn zero(ring: &RingRef, dim: usize) -> Self {
        VectorFieldSym {
            ring: ring.clone(),
            comps: vec![LaurentPoly::zero(ring); dim],
        }
    }

    /// The coordinate field of the `i`-th chart symbol.
    pub fn coord(ring: &RingRef, dim: usize, i: usize) -> Self {
        let mut v = Self::zero(ring, dim);
        v.comps[i] = LaurentPoly::one(ring);
        v
    }

    pub fn coord_by_name(ring: &RingRef, dim: usize, name: &str) -> Self {
        let i = ring.index_of(name).unwrap_or_else(|| panic!("unknown symbol {name}"));
        assert!(i < dim);
        Self::coord(ring, dim, i)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[LaurentPoly] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &LaurentPoly {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        VectorFieldSym {
            ring: self.ring.clone(),
            comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        VectorFieldSym {
            ring: self.ring.clone(),
            comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        VectorFieldSym {
            ring: self.ring.clone(),
            comps: self.comps.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        VectorFieldSym {
            ring: self.ring.clone(),
            comps: self.comps.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn mul_fn(&self, f: &LaurentPoly) -> Self {
        VectorFieldSym {
            ring: self.ring.clone(),
            comps: self.comps.iter().map(|a| a * f).collect(),
        }
    }

    /// Directional derivative `X(f)`.
    pub fn apply(&self, f: &LaurentPoly) -> LaurentPoly {
        let mut acc = LaurentPoly::zero(&self.ring);
        for (i, c) in self.comps.iter().enumerate() {
            if !c.is_zero() {
                let d = f.partial(i);
                if !d.is_zero() {
                    acc += &(c * &d);
                }
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.comps.iter().map(|c| c.eval(point)).collect()
    }

    pub fn check_same(&self, o: &Self) -> Result<()> {
        if self.dim() != o.dim() {
            return Err(GeoError::DimensionMismatch {
                expected: self.dim(),
                got: o.dim(),
            });
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.comps.iter().map(|c| c.to_json()).collect())
    }
}

/// `[X,Y]^k = X(Y^k) - Y(X^k)`.
pub fn bracket(x: &VectorFieldSym, y: &VectorFieldSym) -> VectorFieldSym {
    let comps = (0..x.dim())
        .map(|k| &x.apply(&y.comps[k]) - &y.apply(&x.comps[k]))
        .collect();
    VectorFieldSym {
        ring: x.ring.clone(),
        comps,
    }
}

/// Linear combination `sum c_i v_i`.
pub fn combine(coeffs: &[Rational], fields: &[VectorFieldSym]) -> VectorFieldSym {
    let mut acc = VectorFieldSym::zero(fields[0].ring(), fields[0].dim());
    for (c, f) in coeffs.iter().zip(fields) {
        if !num::Zero::is_zero(c) {
            acc = acc.add(&f.scale(c));
        }
    }
    acc
}

impl fmt::Display for VectorFieldSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c}) d/d{}", self.ring.name(i)))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
