//! Polynomial Killing fields by coefficient matching, and the Lie algebra
//! structure of a finite family of fields.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::Zero;
use rayon::prelude::*;

use super::fields::{bracket, VectorFieldSym};
use super::metric::MetricSpec;
use crate::exactalg::laurent::Exponents;
use crate::exactalg::linsolve::SparseRow;
use crate::exactalg::{kernel_exact, rref_rows, solve_in_span, LaurentPoly, QMatrix, Rational};
use crate::error::{GeoError, Result};

/// Monomials in `nvars` variables of total degree `<= deg`, graded then lex.
pub fn monomials(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == nvars {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in (0..=left).rev() {
            cur.push(k);
            rec(nvars, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for d in 0..=deg {
        let mut layer = Vec::new();
        rec(nvars, d, &mut Vec::new(), &mut layer);
        out.extend(layer);
    }
    out
}

#[derive(Clone, Debug)]
pub struct KillingSolution {
    pub max_degree: u32,
    pub unknowns: usize,
    pub equations: usize,
    /// Basis in reduced echelon normal form over the ansatz coordinates.
    pub basis: Vec<VectorFieldSym>,
}

impl KillingSolution {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Basis of polynomial Killing fields with components of degree `<= max_degree`.
pub fn killing_solve(metric: &MetricSpec, max_degree: u32) -> KillingSolution {
    let n = metric.dim();
    let ring = metric.ring().clone();
    let nv = ring.len();
    let monos = monomials(n, max_degree);
    let to_exp = |m: &Vec<u32>| -> Exponents {
        let mut e = vec![0i32; nv];
        for (i, k) in m.iter().enumerate() {
            e[i] = *k as i32;
        }
        e
    };
    // unknown (k, m): coefficient of monomial m in component k
    let cols: Vec<(usize, usize)> = (0..n)
        .flat_map(|k| (0..monos.len()).map(move |m| (k, m)))
        .collect();
    let g = metric.g();
    let dg: Vec<Vec<Vec<LaurentPoly>>> = (0..n)
        .map(|k| {
            (0..n)
                .map(|i| (0..n).map(|j| g.get(i, j).partial(k)).collect())
                .collect()
        })
        .collect();
    // L_{m d_k} g_ij = m d_k g_ij + g_kj d_i m + g_ik d_j m
    let contributions: Vec<Vec<((usize, usize), LaurentPoly)>> = cols
        .par_iter()
        .map(|&(k, mi)| {
            let m = LaurentPoly::monomial(&ring, to_exp(&monos[mi]), Rational::from_integer(1.into()))
                .expect("nonnegative exponents");
            let dm: Vec<LaurentPoly> = (0..n).map(|i| m.partial(i)).collect();
            let mut out = Vec::new();
            for i in 0..n {
                for j in i..n {
                    let mut e = &m * &dg[k][i][j];
                    if !dm[i].is_zero() {
                        e += &(g.get(k, j) * &dm[i]);
                    }
                    if !dm[j].is_zero() {
                        e += &(g.get(i, k) * &dm[j]);
                    }
                    if !e.is_zero() {
                        out.push(((i, j), e));
                    }
                }
            }
            out
        })
        .collect();
    let mut rows: HashMap<(usize, usize, Exponents), SparseRow> = HashMap::new();
    for (col, contrib) in contributions.into_iter().enumerate() {
        for ((i, j), poly) in contrib {
            for (e, c) in poly.terms() {
                rows.entry((i, j, e.clone()))
                    .or_default()
                    .insert(col, c.clone());
            }
        }
    }
    let mut keys: Vec<_> = rows.keys().cloned().collect();
    keys.sort();
    let mut qm = QMatrix::new(cols.len());
    for key in &keys {
        qm.push_sparse(rows.remove(key).unwrap());
    }
    let kernel = kernel_exact(&qm);
    let basis = kernel
        .iter()
        .map(|v| {
            let mut comps = vec![LaurentPoly::zero(&ring); n];
            for (col, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    let (k, mi) = cols[col];
                    let t = LaurentPoly::monomial(&ring, to_exp(&monos[mi]), c.clone())
                        .expect("nonnegative exponents");
                    comps[k] += &t;
                }
            }
            VectorFieldSym::new(comps)
        })
        .collect();
    KillingSolution {
        max_degree,
        unknowns: cols.len(),
        equations: qm.nrows(),
        basis,
    }
}

type FieldKey = (usize, Exponents);

fn field_keys(fields: &[&VectorFieldSym]) -> Vec<FieldKey> {
    let mut keys = BTreeSet::new();
    for f in fields {
        for (k, c) in f.comps().iter().enumerate() {
            for e in c.terms().keys() {
                keys.insert((k, e.clone()));
            }
        }
    }
    keys.into_iter().collect()
}

fn field_vector(f: &VectorFieldSym, index: &BTreeMap<FieldKey, usize>) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); index.len()];
    for (k, c) in f.comps().iter().enumerate() {
        for (e, q) in c.terms() {
            v[index[&(k, e.clone())]] = q.clone();
        }
    }
    v
}

/// Coefficient vectors of fields over a common monomial index.
pub fn fields_as_vectors(fields: &[&VectorFieldSym]) -> Vec<Vec<Rational>> {
    let keys = field_keys(fields);
    let index: BTreeMap<FieldKey, usize> =
        keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    fields.iter().map(|f| field_vector(f, &index)).collect()
}

/// Exact rank of a family of fields over the constants.
pub fn field_rank(fields: &[VectorFieldSym]) -> usize {
    let refs: Vec<&VectorFieldSym> = fields.iter().collect();
    let vecs = fields_as_vectors(&refs);
    let cols = vecs.first().map(|v| v.len()).unwrap_or(0);
    rref_rows(&vecs, cols).len()
}

/// Equality of the constant-coefficient spans of two families.
pub fn span_equal(a: &[VectorFieldSym], b: &[VectorFieldSym]) -> bool {
    let refs: Vec<&VectorFieldSym> = a.iter().chain(b.iter()).collect();
    let vecs = fields_as_vectors(&refs);
    let cols = vecs.first().map(|v| v.len()).unwrap_or(0);
    let (va, vb) = vecs.split_at(a.len());
    rref_rows(va, cols) == rref_rows(vb, cols)
}

/// Coefficients of `f` in the span of `basis`, or `None`.
pub fn express_in(basis: &[VectorFieldSym], f: &VectorFieldSym) -> Option<Vec<Rational>> {
    let mut refs: Vec<&VectorFieldSym> = basis.iter().collect();
    refs.push(f);
    let vecs = fields_as_vectors(&refs);
    let (cols, b) = vecs.split_at(basis.len());
    if cols.is_empty() {
        return if b[0].iter().all(|x| x.is_zero()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    solve_in_span(cols, &b[0])
}

/// `c[i][j][k]` with `[e_i, e_j] = sum_k c[i][j][k] e_k`.
pub type StructureConstants = Vec<Vec<Vec<Rational>>>;

pub fn structure_constants(basis: &[VectorFieldSym]) -> Result<StructureConstants> {
    if field_rank(basis) != basis.len() {
        return Err(GeoError::Domain("basis is linearly dependent".into()));
    }
    let m = basis.len();
    let mut c = vec![vec![vec![Rational::zero(); m]; m]; m];
    for i in 0..m {
        for j in 0..m {
            if j < i {
                let neg: Vec<Rational> = c[j][i].iter().map(|x| -x.clone()).collect();
                c[i][j] = neg;
                continue;
            }
            let br = bracket(&basis[i], &basis[j]);
            if br.is_zero() {
                continue;
            }
            c[i][j] = express_in(basis, &br).ok_or_else(|| {
                GeoError::NotClosed(format!("[e{i}, e{j}] = {br}"))
            })?;
        }
    }
    Ok(c)
}
