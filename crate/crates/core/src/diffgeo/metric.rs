//! Named metrics in a chart and the operations that only need `g`.

use super::fields::VectorFieldSym;
use crate::exactalg::{LaurentPoly, PolyMatrix, RingRef};
use crate::error::{GeoError, Result};

#[derive(Clone, Debug)]
pub struct MetricSpec {
    pub name: String,
    ring: RingRef,
    dim: usize,
    g: PolyMatrix,
    g_inv: PolyMatrix,
}

impl MetricSpec {
    /// Coordinates are the first `g.rows()` symbols of the ring; the inverse
    /// is computed exactly and must be polynomial.
    pub fn new(name: &str, g: PolyMatrix) -> Result<Self> {
        let g_inv = g.inverse_poly()?;
        Self::with_inverse(name, g, g_inv)
    }

    /// Uses a known inverse after checking `g * g_inv = I`.
    pub fn with_inverse(name: &str, g: PolyMatrix, g_inv: PolyMatrix) -> Result<Self> {
        if !g.is_symmetric() {
            return Err(GeoError::Domain(format!("metric {name} is not symmetric")));
        }
        let dim = g.rows();
        let ring = g.ring().clone();
        if dim > ring.len() {
            return Err(GeoError::DimensionMismatch {
                expected: ring.len(),
                got: dim,
            });
        }
        if g.mul(&g_inv)? != PolyMatrix::identity(&ring, dim) {
            return Err(GeoError::Domain(format!("supplied inverse of {name} is wrong")));
        }
        Ok(MetricSpec {
            name: name.to_string(),
            ring,
            dim,
            g,
            g_inv,
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn chart(&self) -> Vec<String> {
        self.ring.names()[..self.dim].to_vec()
    }

    pub fn g(&self) -> &PolyMatrix {
        &self.g
    }

    pub fn g_inv(&self) -> &PolyMatrix {
        &self.g_inv
    }

    pub fn coord(&self, i: usize) -> VectorFieldSym {
        VectorFieldSym::coord(&self.ring, self.dim, i)
    }

    pub fn coord_by_name(&self, name: &str) -> VectorFieldSym {
        VectorFieldSym::coord_by_name(&self.ring, self.dim, name)
    }

    pub fn inner(&self, x: &VectorFieldSym, y: &VectorFieldSym) -> LaurentPoly {
        let mut acc = LaurentPoly::zero(&self.ring);
        for i in 0..self.dim {
            if x.comp(i).is_zero() {
                continue;
            }
            for j in 0..self.dim {
                let gij = self.g.get(i, j);
                if gij.is_zero() || y.comp(j).is_zero() {
                    continue;
                }
                acc += &(&(x.comp(i) * gij) * y.comp(j));
            }
        }
        acc
    }
}

/// Entries `G(e_i, e_j)` of a frame.
pub fn gram_matrix(metric: &MetricSpec, frame: &[VectorFieldSym]) -> PolyMatrix {
    PolyMatrix::from_fn(metric.ring(), frame.len(), frame.len(), |i, j| {
        metric.inner(&frame[i], &frame[j])
    })
}

/// `(L_X g)_ij = X^k d_k g_ij + g_kj d_i X^k + g_ik d_j X^k`.
pub fn lie_derivative_metric(metric: &MetricSpec, x: &VectorFieldSym) -> PolyMatrix {
    let n = metric.dim();
    let g = metric.g();
    let dx: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|k| (0..n).map(|i| x.comp(k).partial(i)).collect())
        .collect();
    PolyMatrix::from_fn(metric.ring(), n, n, |i, j| {
        let mut acc = x.apply(g.get(i, j));
        for k in 0..n {
            if !dx[k][i].is_zero() {
                acc += &(g.get(k, j) * &dx[k][i]);
            }
            if !dx[k][j].is_zero() {
                acc += &(g.get(i, k) * &dx[k][j]);
            }
        }
        acc
    })
}

pub fn is_killing(metric: &MetricSpec, x: &VectorFieldSym) -> bool {
    lie_derivative_metric(metric, x).is_zero()
}
