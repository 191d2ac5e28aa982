//! Levi-Civita connection, curvature and sectional curvature.

use rayon::prelude::*;

use super::fields::{bracket, VectorFieldSym};
use super::metric::MetricSpec;
use crate::exactalg::{rational, LaurentPoly, PolyMatrix, Rational, RingRef};
use crate::error::{GeoError, Result};

/// `gamma[a][b][c] = Gamma^a_{bc}`, symmetric in `b, c`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChristoffelTable {
    dim: usize,
    ring: RingRef,
    chart: Vec<String>,
    gamma: Vec<LaurentPoly>,
}

impl ChristoffelTable {
    pub fn get(&self, a: usize, b: usize, c: usize) -> &LaurentPoly {
        &self.gamma[(a * self.dim + b) * self.dim + c]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn chart(&self) -> &[String] {
        &self.chart
    }

    /// Every nonzero `(a, b, c, value)` with `b <= c`.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize, LaurentPoly)> {
        let mut out = Vec::new();
        for a in 0..self.dim {
            for b in 0..self.dim {
                for c in b..self.dim {
                    let v = self.get(a, b, c);
                    if !v.is_zero() {
                        out.push((a, b, c, v.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|a| {
            (0..self.dim).all(|b| (0..b).all(|c| self.get(a, b, c) == self.get(a, c, b)))
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .nonzero()
            .into_iter()
            .map(|(a, b, c, v)| {
                serde_json::json!({
                    "index": format!("upper: {}, lower: ({}, {})", self.chart[a], self.chart[b], self.chart[c]),
                    "value": v.to_json(),
                    "text": v.to_string(),
                })
            })
            .collect();
        serde_json::json!({ "chart": self.chart, "nonzero": entries })
    }
}

/// `Gamma^a_{bc} = 1/2 G^{as} (d_c G_{sb} + d_b G_{sc} - d_s G_{bc})`.
pub fn christoffel(metric: &MetricSpec) -> ChristoffelTable {
    let n = metric.dim();
    let g = metric.g();
    let ginv = metric.g_inv();
    let ring = metric.ring().clone();
    // dg[k][i][j] = d_k g_ij
    let dg: Vec<Vec<Vec<LaurentPoly>>> = (0..n)
        .map(|k| {
            (0..n)
                .map(|i| (0..n).map(|j| g.get(i, j).partial(k)).collect())
                .collect()
        })
        .collect();
    // lowered[s][b][c] = {bc, s}
    let lowered: Vec<Vec<Vec<LaurentPoly>>> = (0..n)
        .map(|s| {
            (0..n)
                .map(|b| {
                    (0..n)
                        .map(|c| &(&dg[c][s][b] + &dg[b][s][c]) - &dg[s][b][c])
                        .collect()
                })
                .collect()
        })
        .collect();
    let half = rational::rat(1, 2);
    let gamma: Vec<LaurentPoly> = (0..n * n * n)
        .into_par_iter()
        .map(|idx| {
            let a = idx / (n * n);
            let b = (idx / n) % n;
            let c = idx % n;
            let (b, c) = if b <= c { (b, c) } else { (c, b) };
            let mut acc = LaurentPoly::zero(&ring);
            for s in 0..n {
                let gi = ginv.get(a, s);
                let l = &lowered[s][b][c];
                if !gi.is_zero() && !l.is_zero() {
                    acc += &(gi * l);
                }
            }
            acc.scale(&half)
        })
        .collect();
    ChristoffelTable {
        dim: n,
        chart: metric.chart(),
        ring,
        gamma,
    }
}

/// `gamma_a = Gamma^b_{ab}`.
pub fn trace_form(table: &ChristoffelTable) -> Vec<LaurentPoly> {
    let n = table.dim;
    (0..n)
        .map(|a| {
            let mut acc = LaurentPoly::zero(&table.ring);
            for b in 0..n {
                acc += table.get(b, a, b);
            }
            acc
        })
        .collect()
}

/// `(nabla_X Y)^k = X(Y^k) + Gamma^k_{ij} X^i Y^j`.
pub fn covariant_derivative(
    table: &ChristoffelTable,
    x: &VectorFieldSym,
    y: &VectorFieldSym,
) -> VectorFieldSym {
    let n = table.dim;
    let comps = (0..n)
        .map(|k| {
            let mut acc = x.apply(y.comp(k));
            for i in 0..n {
                if x.comp(i).is_zero() {
                    continue;
                }
                for j in 0..n {
                    let gk = table.get(k, i, j);
                    if gk.is_zero() || y.comp(j).is_zero() {
                        continue;
                    }
                    acc += &(&(gk * x.comp(i)) * y.comp(j));
                }
            }
            acc
        })
        .collect();
    VectorFieldSym::new(comps)
}

/// `R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z`.
pub fn riemann_transform(
    table: &ChristoffelTable,
    x: &VectorFieldSym,
    y: &VectorFieldSym,
    z: &VectorFieldSym,
) -> VectorFieldSym {
    let yz = covariant_derivative(table, y, z);
    let xz = covariant_derivative(table, x, z);
    let a = covariant_derivative(table, x, &yz);
    let b = covariant_derivative(table, y, &xz);
    let c = covariant_derivative(table, &bracket(x, y), z);
    a.sub(&b).sub(&c)
}

#[derive(Clone, Debug)]
pub struct CurvatureTensors {
    dim: usize,
    /// `riemann[a][b][c][d] = R^a_{bcd}` with `R(d_c, d_d) d_b = R^a_{bcd} d_a`.
    riemann: Vec<LaurentPoly>,
    pub ricci: PolyMatrix,
    /// Ricci from contracting `riemann`; must equal `ricci`.
    pub ricci_contracted: PolyMatrix,
    pub scalar: LaurentPoly,
}

impl CurvatureTensors {
    pub fn riemann(&self, a: usize, b: usize, c: usize, d: usize) -> &LaurentPoly {
        let n = self.dim;
        &self.riemann[((a * n + b) * n + c) * n + d]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn riemann_antisymmetric(&self) -> bool {
        let n = self.dim;
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    (0..n).all(|d| {
                        let s = self.riemann(a, b, c, d) + self.riemann(a, b, d, c);
                        s.is_zero()
                    })
                })
            })
        })
    }

    /// The scalar curvature when it is a constant.
    pub fn scalar_constant(&self) -> Option<Rational> {
        self.scalar.as_constant()
    }
}

fn dgamma(table: &ChristoffelTable) -> Vec<LaurentPoly> {
    // dgam[((a*n+b)*n+c)*n+k] = d_k Gamma^a_{bc}
    let n = table.dim;
    (0..n * n * n * n)
        .into_par_iter()
        .map(|idx| {
            let k = idx % n;
            let r = idx / n;
            table.gamma[r].partial(k)
        })
        .collect()
}

/// Riemann tensor, Ricci by the index formula and by contraction, scalar.
pub fn ricci_scalar(metric: &MetricSpec) -> CurvatureTensors {
    let table = christoffel(metric);
    curvature_from_table(metric, &table)
}

pub fn curvature_from_table(metric: &MetricSpec, table: &ChristoffelTable) -> CurvatureTensors {
    let n = table.dim;
    let ring = table.ring.clone();
    let dg = dgamma(table);
    let d = |a: usize, b: usize, c: usize, k: usize| &dg[((a * n + b) * n + c) * n + k];
    // R^a_{bcd} = d_c G^a_{db} - d_d G^a_{cb} + G^a_{ce} G^e_{db} - G^a_{de} G^e_{cb}
    let riemann: Vec<LaurentPoly> = (0..n * n * n * n)
        .into_par_iter()
        .map(|idx| {
            let dd = idx % n;
            let c = (idx / n) % n;
            let b = (idx / (n * n)) % n;
            let a = idx / (n * n * n);
            let mut acc = d(a, dd, b, c) - d(a, c, b, dd);
            for e in 0..n {
                let t1 = table.get(a, c, e);
                let t2 = table.get(e, dd, b);
                if !t1.is_zero() && !t2.is_zero() {
                    acc += &(t1 * t2);
                }
                let t3 = table.get(a, dd, e);
                let t4 = table.get(e, c, b);
                if !t3.is_zero() && !t4.is_zero() {
                    acc -= &(t3 * t4);
                }
            }
            acc
        })
        .collect();
    // R_{ab} = Gamma^m_{ba,m} - Gamma^m_{ma,b} + Gamma^m_{mg} Gamma^g_{ba} - Gamma^m_{bg} Gamma^g_{ma}
    let ricci = PolyMatrix::from_fn(&ring, n, n, |a, b| {
        let mut acc = LaurentPoly::zero(&ring);
        for m in 0..n {
            acc += d(m, b, a, m);
            acc -= d(m, m, a, b);
            for g in 0..n {
                let p1 = table.get(m, m, g);
                let p2 = table.get(g, b, a);
                if !p1.is_zero() && !p2.is_zero() {
                    acc += &(p1 * p2);
                }
                let q1 = table.get(m, b, g);
                let q2 = table.get(g, m, a);
                if !q1.is_zero() && !q2.is_zero() {
                    acc -= &(q1 * q2);
                }
            }
        }
        acc
    });
    let ricci_contracted = PolyMatrix::from_fn(&ring, n, n, |b, dd| {
        let mut acc = LaurentPoly::zero(&ring);
        for a in 0..n {
            acc += &riemann[((a * n + b) * n + a) * n + dd];
        }
        acc
    });
    let ginv = metric.g_inv();
    let mut scalar = LaurentPoly::zero(&ring);
    for a in 0..n {
        for b in 0..n {
            let gi = ginv.get(a, b);
            if !gi.is_zero() && !ricci.get(b, a).is_zero() {
                scalar += &(gi * ricci.get(b, a));
            }
        }
    }
    CurvatureTensors {
        dim: n,
        riemann,
        ricci,
        ricci_contracted,
        scalar,
    }
}

/// Exact pieces of the sectional-curvature quotient at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionalParts {
    /// `G(R(A,B)B, A)`
    pub numerator: Rational,
    /// `|A^B|^2 = G(A,A)G(B,B) - G(A,B)^2`
    pub denominator: Rational,
}

pub fn sectional_parts(
    metric: &MetricSpec,
    table: &ChristoffelTable,
    point: &[Rational],
    a: &VectorFieldSym,
    b: &VectorFieldSym,
) -> Result<SectionalParts> {
    let rabb = riemann_transform(table, a, b, b);
    let num = metric.inner(&rabb, a).eval(point)?;
    let gaa = metric.inner(a, a).eval(point)?;
    let gbb = metric.inner(b, b).eval(point)?;
    let gab = metric.inner(a, b).eval(point)?;
    Ok(SectionalParts {
        numerator: num,
        denominator: gaa * gbb - &gab * &gab,
    })
}

/// Sectional curvature of the plane `A^B` at a rational point.
pub fn sectional(
    metric: &MetricSpec,
    table: &ChristoffelTable,
    point: &[Rational],
    a: &VectorFieldSym,
    b: &VectorFieldSym,
) -> Result<Rational> {
    let p = sectional_parts(metric, table, point, a, b)?;
    if num::Zero::is_zero(&p.denominator) {
        return Err(GeoError::DegeneratePlane {
            numerator: rational::to_text(&p.numerator),
        });
    }
    Ok(p.numerator / p.denominator)
}
