//! Differential forms with Laurent coefficients and polynomial maps
//! between charts (pullback of forms and symmetric tensors, pushforward of
//! vector fields).

use std::collections::BTreeMap;
use std::fmt;

use super::fields::VectorFieldSym;
use crate::exactalg::{LaurentPoly, PolyMatrix, Rational, RingRef};
use crate::error::{GeoError, Result};

/// A form on the first `dim` symbols of `ring`; keys are strictly increasing
/// index lists, possibly of mixed degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    ring: RingRef,
    dim: usize,
    terms: BTreeMap<Vec<usize>, LaurentPoly>,
}

fn sort_sign(idx: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl Form {
    pub fn zero(ring: &RingRef, dim: usize) -> Self {
        Form {
            ring: ring.clone(),
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn function(f: LaurentPoly, dim: usize) -> Self {
        let mut out = Self::zero(f.ring(), dim);
        out.add_term(Vec::new(), f);
        out
    }

    /// `dx^i`.
    pub fn dx(ring: &RingRef, dim: usize, i: usize) -> Self {
        let mut out = Self::zero(ring, dim);
        out.add_term(vec![i], LaurentPoly::one(ring));
        out
    }

    /// `sum_i c_i dx^i`.
    pub fn one_form(coeffs: &[LaurentPoly]) -> Self {
        let ring = coeffs[0].ring().clone();
        let mut out = Self::zero(&ring, coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            out.add_term(vec![i], c.clone());
        }
        out
    }

    /// `f dx^{i_1} ^ ... ^ dx^{i_k}` with arbitrary index order.
    pub fn basis(ring: &RingRef, dim: usize, idx: &[usize], f: LaurentPoly) -> Self {
        let mut out = Self::zero(ring, dim);
        let mut v = idx.to_vec();
        if let Some(s) = sort_sign(&mut v) {
            out.add_term(v, if s < 0 { -f } else { f });
        }
        out
    }

    fn add_term(&mut self, idx: Vec<usize>, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let e = self
            .terms
            .entry(idx.clone())
            .or_insert_with(|| LaurentPoly::zero(&self.ring));
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, LaurentPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, idx: &[usize]) -> LaurentPoly {
        self.terms
            .get(idx)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(&self.ring))
    }

    /// Coefficients of a 1-form.
    pub fn one_form_coeffs(&self) -> Vec<LaurentPoly> {
        (0..self.dim).map(|i| self.coeff(&[i])).collect()
    }

    pub fn add(&self, o: &Form) -> Form {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, o: &Form) -> Form {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Form {
        self.mul_fn(&LaurentPoly::int(&self.ring, -1))
    }

    pub fn scale(&self, c: &Rational) -> Form {
        let mut out = Self::zero(&self.ring, self.dim);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.scale(c));
        }
        out
    }

    pub fn mul_fn(&self, f: &LaurentPoly) -> Form {
        let mut out = Self::zero(&self.ring, self.dim);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * f);
        }
        out
    }

    pub fn wedge(&self, o: &Form) -> Form {
        let mut out = Self::zero(&self.ring, self.dim);
        for (ka, va) in &self.terms {
            for (kb, vb) in &o.terms {
                let mut idx: Vec<usize> = ka.iter().chain(kb.iter()).copied().collect();
                if let Some(s) = sort_sign(&mut idx) {
                    let c = va * vb;
                    out.add_term(idx, if s < 0 { -c } else { c });
                }
            }
        }
        out
    }

    pub fn pow_wedge(&self, k: usize) -> Form {
        let mut acc = Form::function(LaurentPoly::one(&self.ring), self.dim);
        for _ in 0..k {
            acc = acc.wedge(self);
        }
        acc
    }

    /// Exterior derivative in the chart coordinates.
    pub fn d(&self) -> Form {
        let mut out = Self::zero(&self.ring, self.dim);
        for (k, v) in &self.terms {
            for j in 0..self.dim {
                let dv = v.partial(j);
                if dv.is_zero() {
                    continue;
                }
                let mut idx = vec![j];
                idx.extend_from_slice(k);
                if let Some(s) = sort_sign(&mut idx) {
                    out.add_term(idx, if s < 0 { -dv } else { dv });
                }
            }
        }
        out
    }

    /// Interior product `i_X`.
    pub fn interior(&self, x: &VectorFieldSym) -> Form {
        let mut out = Self::zero(&self.ring, self.dim);
        for (k, v) in &self.terms {
            for (r, &i) in k.iter().enumerate() {
                let xi = x.comp(i);
                if xi.is_zero() {
                    continue;
                }
                let mut idx = k.clone();
                idx.remove(r);
                let c = v * xi;
                out.add_term(idx, if r % 2 == 1 { -c } else { c });
            }
        }
        out
    }

    /// `alpha(X_1, ..., X_k)` for a k-form.
    pub fn eval_on(&self, vs: &[&VectorFieldSym]) -> LaurentPoly {
        let mut f = self.clone();
        for v in vs {
            f = f.interior(v);
        }
        f.coeff(&[])
    }

    /// `L_X = i_X d + d i_X`.
    pub fn lie_derivative(&self, x: &VectorFieldSym) -> Form {
        self.d().interior(x).add(&self.interior(x).d())
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, v)| {
                let basis: Vec<String> = k.iter().map(|&i| format!("d{}", self.ring.name(i))).collect();
                if basis.is_empty() {
                    format!("({v})")
                } else {
                    format!("({v}) {}", basis.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A polynomial map `F` from a source chart into a target chart, given by the
/// images of every target ring symbol as polynomials on the source ring.
#[derive(Clone, Debug)]
pub struct ChartMap {
    pub source: RingRef,
    pub source_dim: usize,
    pub target: RingRef,
    pub target_dim: usize,
    images: Vec<LaurentPoly>,
}

impl ChartMap {
    pub fn new(
        source: &RingRef,
        source_dim: usize,
        target: &RingRef,
        target_dim: usize,
        images: Vec<LaurentPoly>,
    ) -> Result<Self> {
        if images.len() != target.len() {
            return Err(GeoError::DimensionMismatch {
                expected: target.len(),
                got: images.len(),
            });
        }
        Ok(ChartMap {
            source: source.clone(),
            source_dim,
            target: target.clone(),
            target_dim,
            images,
        })
    }

    pub fn images(&self) -> &[LaurentPoly] {
        &self.images
    }

    /// `J[a][j] = d F^a / d u^j` over target chart coordinates.
    pub fn jacobian(&self) -> PolyMatrix {
        PolyMatrix::from_fn(&self.source, self.target_dim, self.source_dim, |a, j| {
            self.images[a].partial(j)
        })
    }

    pub fn compose_fn(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        f.substitute(&self.images)
    }

    pub fn pullback_form(&self, w: &Form) -> Result<Form> {
        let mut out = Form::zero(&self.source, self.source_dim);
        let differentials: Vec<Form> = (0..self.target_dim)
            .map(|a| {
                let coeffs: Vec<LaurentPoly> =
                    (0..self.source_dim).map(|j| self.images[a].partial(j)).collect();
                Form::one_form(&coeffs)
            })
            .collect();
        for (k, v) in w.terms() {
            let mut t = Form::function(self.compose_fn(v)?, self.source_dim);
            for &a in k {
                t = t.wedge(&differentials[a]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// `F*g = J^T (g o F) J`.
    pub fn pullback_sym(&self, g: &PolyMatrix) -> Result<PolyMatrix> {
        let gf = g.map(|e| self.compose_fn(e))?;
        let j = self.jacobian();
        j.transpose().mul(&gf)?.mul(&j)
    }

    /// `F_* V` expressed in target coordinates through `inverse`.
    pub fn pushforward(&self, v: &VectorFieldSym, inverse: &ChartMap) -> Result<VectorFieldSym> {
        let j = self.jacobian();
        let mut comps = Vec::with_capacity(self.target_dim);
        for a in 0..self.target_dim {
            let mut acc = LaurentPoly::zero(&self.source);
            for k in 0..self.source_dim {
                let jk = j.get(a, k);
                if !jk.is_zero() && !v.comp(k).is_zero() {
                    acc += &(jk * v.comp(k));
                }
            }
            comps.push(inverse.compose_fn(&acc)?);
        }
        Ok(VectorFieldSym::new(comps))
    }
}
