//! Dense matrices of Laurent polynomials.

use std::fmt;

use super::laurent::{LaurentPoly, RingRef};
use super::ratfunc::RationalFunction;
use super::rational::{self, Rational};
use crate::error::{GeoError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    ring: RingRef,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(ring: &RingRef, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            ring: ring.clone(),
            entries: vec![LaurentPoly::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &RingRef, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(ring));
        }
        m
    }

    pub fn from_fn(
        ring: &RingRef,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> LaurentPoly,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix {
            rows,
            cols,
            ring: ring.clone(),
            entries,
        }
    }

    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(GeoError::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(PolyMatrix {
            rows: r,
            cols: c,
            ring: ring.clone(),
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(GeoError::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        Ok(Self::from_fn(&self.ring, self.rows, other.cols, |i, j| {
            let mut acc = LaurentPoly::zero(&self.ring);
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        }))
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        Self::from_fn(&self.ring, self.rows, self.cols, |i, j| {
            self.get(i, j) - other.get(i, j)
        })
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        Self::from_fn(&self.ring, self.rows, self.cols, |i, j| {
            self.get(i, j) + other.get(i, j)
        })
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        Self::from_fn(&self.ring, self.rows, self.cols, |i, j| self.get(i, j).scale(c))
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> Result<LaurentPoly>) -> Result<PolyMatrix> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        let ring = entries
            .first()
            .map(|e| e.ring().clone())
            .unwrap_or_else(|| self.ring.clone());
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            ring,
            entries,
        })
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).eval(point)).collect())
            .collect()
    }

    pub fn eval_f64(&self, point: &[f64]) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).eval_f64(point)).collect())
            .collect()
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Result<LaurentPoly> {
        if !self.is_square() {
            return Err(GeoError::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one(&self.ring));
        }
        let mut a: Vec<Vec<LaurentPoly>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = 1i64;
        let mut prev = LaurentPoly::one(&self.ring);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                // prefer the sparsest nonzero pivot below
                let pick = (k + 1..n)
                    .filter(|&i| !a[i][k].is_zero())
                    .min_by_key(|&i| a[i][k].num_terms());
                match pick {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(LaurentPoly::zero(&self.ring)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = t.div_exact(&prev)?;
                }
                a[i][k] = LaurentPoly::zero(&self.ring);
            }
            prev = a[k][k].clone();
        }
        Ok(a[n - 1][n - 1].scale(&rational::int(sign)))
    }

    /// Rank over the field of rational functions (division-free elimination).
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<LaurentPoly>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for i in rank + 1..self.rows {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                let piv = a[rank][c].clone();
                for j in c..self.cols {
                    a[i][j] = &(&a[i][j] * &piv) - &(&a[rank][j] * &f);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn minor(&self, skip_r: usize, skip_c: usize) -> PolyMatrix {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != skip_r).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| j != skip_c).collect();
        Self::from_fn(&self.ring, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Exact inverse as adjugate over determinant.
    pub fn inverse(&self) -> Result<RatFuncMatrix> {
        let det = self.det()?;
        if det.is_zero() {
            return Err(GeoError::Singular);
        }
        let n = self.rows;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                // adj(i,j) = (-1)^{i+j} det(minor(j,i))
                let mut c = self.minor(j, i).det()?;
                if (i + j) % 2 == 1 {
                    c = -c;
                }
                entries.push(RationalFunction::new(c, det.clone())?);
            }
        }
        Ok(RatFuncMatrix {
            rows: n,
            cols: n,
            entries,
        })
    }

    /// Inverse that must reduce to Laurent polynomials.
    pub fn inverse_poly(&self) -> Result<PolyMatrix> {
        self.inverse()?
            .to_poly(&self.ring)
            .ok_or_else(|| GeoError::Domain("inverse is not polynomial".into()))
    }

    pub fn to_json(&self, chart: &[String]) -> serde_json::Value {
        serde_json::json!({
            "chart": chart,
            "entries": (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.get(i, j).to_json()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_text_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.to_text_rows() {
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatFuncMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RationalFunction>,
}

impl RatFuncMatrix {
    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.entries[i * self.cols + j]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_poly(&self, ring: &RingRef) -> Option<PolyMatrix> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(e.as_poly()?);
        }
        Some(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            ring: ring.clone(),
            entries,
        })
    }
}

/// Exact inverse; alias kept for the operation name used in reports.
pub fn matrix_inverse_exact(m: &PolyMatrix) -> Result<RatFuncMatrix> {
    m.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::laurent::Ring;

    #[test]
    fn identity_inverse() {
        let r = Ring::new(&[("x", false)]);
        let id = PolyMatrix::identity(&r, 3);
        assert_eq!(id.inverse_poly().unwrap(), id);
        assert_eq!(id.det().unwrap(), LaurentPoly::one(&r));
    }

    #[test]
    fn singular_detected() {
        let r = Ring::new(&[("x", false)]);
        let x = r.var("x");
        let m = PolyMatrix::from_rows(&r, vec![vec![x.clone(), x.clone()], vec![x.clone(), x]])
            .unwrap();
        assert!(m.det().unwrap().is_zero());
        assert_eq!(m.inverse().unwrap_err(), GeoError::Singular);
    }

    #[test]
    fn non_monomial_det_gives_rational_entries() {
        let r = Ring::new(&[("x", false)]);
        let x = r.var("x");
        let one = LaurentPoly::one(&r);
        let m = PolyMatrix::from_rows(
            &r,
            vec![vec![&x + &one, LaurentPoly::zero(&r)], vec![LaurentPoly::zero(&r), one.clone()]],
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!(inv.to_poly(&r).is_none());
        let want = RationalFunction::new(one, &x + &LaurentPoly::one(&r)).unwrap();
        assert_eq!(inv.get(0, 0), &want);
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let r = Ring::new(&[("a", false), ("b", true)]);
        let a = r.var("a");
        let b = r.var("b");
        let one = LaurentPoly::one(&r);
        let m = PolyMatrix::from_rows(
            &r,
            vec![
                vec![LaurentPoly::zero(&r), a.clone(), b.clone()],
                vec![one.clone(), &a * &b, LaurentPoly::zero(&r)],
                vec![b.clone(), one.clone(), &a + &one],
            ],
        )
        .unwrap();
        // expansion along the first row
        let mut want = LaurentPoly::zero(&r);
        for j in 0..3 {
            let t = m.get(0, j) * &m.minor(0, j).det().unwrap();
            if j % 2 == 0 {
                want += &t;
            } else {
                want -= &t;
            }
        }
        assert_eq!(m.det().unwrap(), want);
    }
}
