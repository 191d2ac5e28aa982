//! The thermodynamical phase space `P = R^{2n+1}` with contact form
//! `theta = dx0 + sum p_l dx^l`, Reeb field, canonical frame, Mrugala metric,
//! almost contact tensor, Killing catalog and the constitutive hypersurface.
//!
//! Chart order: `(x0, p1..pn, x1..xn)`.

use serde_json::{json, Value};

use crate::diffgeo::{
    bracket, gram_matrix, lie_derivative_metric, structure_constants, ChristoffelTable, Form,
    MetricSpec, StructureConstants, VectorFieldSym,
};
use crate::exactalg::{int, rat, LaurentPoly, PolyMatrix, QMatrix, Rational, Ring, RingRef};
use crate::error::{GeoError, Result};
use crate::report::ClaimResult;

#[derive(Clone, Debug)]
pub struct Tps {
    pub n: usize,
    ring: RingRef,
}

/// Chart, contact form, Reeb field and canonical frame `(xi, P_l, X_i)`.
pub fn build_tps(n: usize) -> Result<Tps> {
    Tps::new(n)
}

impl Tps {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(GeoError::Domain("n must be at least 1".into()));
        }
        let mut vars: Vec<(String, bool)> = vec![("x0".into(), false)];
        for i in 1..=n {
            vars.push((format!("p{i}"), true));
        }
        for i in 1..=n {
            vars.push((format!("x{i}"), false));
        }
        Ok(Tps {
            n,
            ring: Ring::new(&vars),
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    pub fn chart(&self) -> Vec<String> {
        self.ring.names().to_vec()
    }

    /// Index of `p_i`, `i` in `1..=n`.
    pub fn ip(&self, i: usize) -> usize {
        i
    }

    /// Index of `x^i`, `i` in `0..=n`.
    pub fn ix(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.n + i
        }
    }

    pub fn p(&self, i: usize) -> LaurentPoly {
        LaurentPoly::var(&self.ring, self.ip(i))
    }

    pub fn x(&self, i: usize) -> LaurentPoly {
        LaurentPoly::var(&self.ring, self.ix(i))
    }

    pub fn coord(&self, i: usize) -> VectorFieldSym {
        VectorFieldSym::coord(&self.ring, self.dim(), i)
    }

    pub fn xi(&self) -> VectorFieldSym {
        self.coord(0)
    }

    /// `P_i = d/dp_i`.
    pub fn pf(&self, i: usize) -> VectorFieldSym {
        self.coord(self.ip(i))
    }

    /// `d/dx^i`.
    pub fn dxf(&self, i: usize) -> VectorFieldSym {
        self.coord(self.ix(i))
    }

    /// `X_i = d/dx^i - p_i d/dx0`.
    pub fn xf(&self, i: usize) -> VectorFieldSym {
        self.dxf(i).sub(&self.xi().mul_fn(&self.p(i)))
    }

    /// `(xi, P_1..P_n, X_1..X_n)`.
    pub fn frame(&self) -> Vec<VectorFieldSym> {
        let mut f = vec![self.xi()];
        f.extend((1..=self.n).map(|i| self.pf(i)));
        f.extend((1..=self.n).map(|i| self.xf(i)));
        f
    }

    pub fn frame_labels(&self) -> Vec<String> {
        let mut f = vec!["xi".to_string()];
        f.extend((1..=self.n).map(|i| format!("P{i}")));
        f.extend((1..=self.n).map(|i| format!("X{i}")));
        f
    }

    pub fn theta(&self) -> Form {
        let mut c = vec![LaurentPoly::zero(&self.ring); self.dim()];
        c[0] = LaurentPoly::one(&self.ring);
        for i in 1..=self.n {
            c[self.ix(i)] = self.p(i);
        }
        Form::one_form(&c)
    }

    pub fn theta_of(&self, v: &VectorFieldSym) -> LaurentPoly {
        self.theta().eval_on(&[v])
    }

    pub fn metric_matrix(&self) -> PolyMatrix {
        let n = self.n;
        let r = &self.ring;
        PolyMatrix::from_fn(r, self.dim(), self.dim(), |a, b| {
            let kind = |k: usize| -> (u8, usize) {
                if k == 0 {
                    (0, 0)
                } else if k <= n {
                    (1, k)
                } else {
                    (2, k - n)
                }
            };
            match (kind(a), kind(b)) {
                ((0, _), (0, _)) => LaurentPoly::one(r),
                ((0, _), (2, j)) | ((2, j), (0, _)) => self.p(j),
                ((1, i), (2, j)) | ((2, j), (1, i)) if i == j => LaurentPoly::one(r),
                ((2, i), (2, j)) => &self.p(i) * &self.p(j),
                _ => LaurentPoly::zero(r),
            }
        })
    }

    /// Closed form of the inverse metric.
    pub fn metric_inverse_matrix(&self) -> PolyMatrix {
        let n = self.n;
        let r = &self.ring;
        PolyMatrix::from_fn(r, self.dim(), self.dim(), |a, b| {
            let kind = |k: usize| -> (u8, usize) {
                if k == 0 {
                    (0, 0)
                } else if k <= n {
                    (1, k)
                } else {
                    (2, k - n)
                }
            };
            match (kind(a), kind(b)) {
                ((0, _), (0, _)) => LaurentPoly::one(r),
                ((0, _), (1, j)) | ((1, j), (0, _)) => -self.p(j),
                ((1, i), (2, j)) | ((2, j), (1, i)) if i == j => LaurentPoly::one(r),
                _ => LaurentPoly::zero(r),
            }
        })
    }

    /// `G = 2 dp (.) dx + theta (x) theta`.
    pub fn metric(&self) -> Result<MetricSpec> {
        MetricSpec::with_inverse(
            &format!("mrugala_n{}", self.n),
            self.metric_matrix(),
            self.metric_inverse_matrix(),
        )
    }

    /// The right side `2 dp (.) dx + theta (x) theta` assembled from forms.
    pub fn metric_from_forms(&self) -> PolyMatrix {
        let th = self.theta().one_form_coeffs();
        let mut m = PolyMatrix::from_fn(&self.ring, self.dim(), self.dim(), |a, b| &th[a] * &th[b]);
        for k in 1..=self.n {
            let (a, b) = (self.ip(k), self.ix(k));
            let one = LaurentPoly::one(&self.ring);
            m.set(a, b, m.get(a, b) + &one);
            m.set(b, a, m.get(b, a) + &one);
        }
        m
    }

    /// The (1,1)-tensor `phi` as a matrix acting on component columns.
    pub fn phi(&self) -> PolyMatrix {
        let n = self.n;
        let r = &self.ring;
        let mut m = PolyMatrix::zeros(r, self.dim(), self.dim());
        for j in 1..=n {
            m.set(0, self.ip(j), self.p(j));
            m.set(self.ip(j), self.ix(j), LaurentPoly::one(r));
            m.set(self.ix(j), self.ip(j), LaurentPoly::int(r, -1));
        }
        m
    }

    pub fn apply(&self, m: &PolyMatrix, v: &VectorFieldSym) -> VectorFieldSym {
        let comps = (0..self.dim())
            .map(|a| {
                let mut acc = LaurentPoly::zero(&self.ring);
                for b in 0..self.dim() {
                    if !m.get(a, b).is_zero() && !v.comp(b).is_zero() {
                        acc += &(m.get(a, b) * v.comp(b));
                    }
                }
                acc
            })
            .collect();
        VectorFieldSym::new(comps)
    }

    pub fn random_point(&self, rng: &mut impl FnMut() -> Rational) -> Vec<Rational> {
        (0..self.dim()).map(|_| rng()).collect()
    }
}

pub fn mrugala_metric(n: usize) -> Result<MetricSpec> {
    Tps::new(n)?.metric()
}

/// A vector field paired with its squared norm, so unit-normalized fields
/// stay rational.
#[derive(Clone, Debug)]
pub struct ScaledField {
    pub field: VectorFieldSym,
    pub norm_sq: Rational,
}

/// Positive and negative sub-bundles: `xi`, `1/2 (P_l + X_l)` and `1/2 (P_l - X_l)`.
pub fn signature_split(tps: &Tps) -> (Vec<ScaledField>, Vec<ScaledField>) {
    let half = rat(1, 2);
    let mut plus = vec![ScaledField {
        field: tps.xi(),
        norm_sq: int(1),
    }];
    let mut minus = Vec::new();
    for l in 1..=tps.n {
        plus.push(ScaledField {
            field: tps.pf(l).add(&tps.xf(l)).scale(&half),
            norm_sq: half.clone(),
        });
        minus.push(ScaledField {
            field: tps.pf(l).sub(&tps.xf(l)).scale(&half),
            norm_sq: -half.clone(),
        });
    }
    (plus, minus)
}

/// Gram matrix of the normalized split basis, `G(v,w) / sqrt(|v|^2 |w|^2)`;
/// each entry is returned as its exact square with sign, and `None` when a
/// norm does not match the declared value.
pub fn signature_gram(metric: &MetricSpec, plus: &[ScaledField], minus: &[ScaledField]) -> Option<Vec<Vec<i32>>> {
    let all: Vec<&ScaledField> = plus.iter().chain(minus.iter()).collect();
    let mut out = vec![vec![0; all.len()]; all.len()];
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate() {
            let g = metric.inner(&a.field, &b.field).as_constant()?;
            if i == j {
                if g != a.norm_sq {
                    return None;
                }
                out[i][j] = if num::Signed::is_positive(&g) { 1 } else { -1 };
            } else if !num::Zero::is_zero(&g) {
                return None;
            }
        }
    }
    Some(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LightCone {
    Positive,
    Null,
    Negative,
}

pub fn light_cone_test(metric: &MetricSpec, v: &VectorFieldSym, point: &[Rational]) -> Result<LightCone> {
    let g = metric.inner(v, v).eval(point)?;
    Ok(match crate::exactalg::rational::sign(&g) {
        1 => LightCone::Positive,
        0 => LightCone::Null,
        _ => LightCone::Negative,
    })
}

/// Almost contact identities and the two compatibility laws on frame pairs.
pub fn compatibility_check(tps: &Tps) -> Result<Vec<ClaimResult>> {
    let metric = tps.metric()?;
    let phi = tps.phi();
    let theta = tps.theta();
    let xi = tps.xi();
    let dim = tps.dim();
    let r = tps.ring();
    let mut out = Vec::new();

    // phi^2 = -I + theta (x) xi
    let phi2 = phi.mul(&phi)?;
    let th = theta.one_form_coeffs();
    let rhs = PolyMatrix::from_fn(r, dim, dim, |a, b| {
        let id = if a == b { LaurentPoly::int(r, -1) } else { LaurentPoly::zero(r) };
        &id + &(xi.comp(a) * &th[b])
    });
    out.push(ClaimResult::exact(
        "phi^2 = -I + theta (x) xi",
        "almost-contact/phi-square",
        phi2 == rhs,
        json!(phi2.sub(&rhs).to_text_rows()),
    ));

    let phi_xi = tps.apply(&phi, &xi);
    let theta_phi_zero = (0..dim).all(|b| {
        let col = VectorFieldSym::coord(r, dim, b);
        theta.eval_on(&[&tps.apply(&phi, &col)]).is_zero()
    });
    out.push(ClaimResult::exact(
        "phi(xi) = 0 and theta o phi = 0",
        "almost-contact/phi-square",
        phi_xi.is_zero() && theta_phi_zero,
        json!(phi_xi.to_string()),
    ));
    let rank = phi.rank();
    out.push(ClaimResult::exact(
        "rank(phi) = 2n",
        "almost-contact/phi-square",
        rank == 2 * tps.n,
        json!(rank),
    ));
    let images_ok = (1..=tps.n).all(|i| {
        tps.apply(&phi, &tps.xf(i)) == tps.pf(i) && tps.apply(&phi, &tps.pf(i)) == tps.xf(i).neg()
    });
    out.push(ClaimResult::exact(
        "phi(X_i) = P_i, phi(P_k) = -X_k",
        "almost-contact/phi-matrix",
        images_ok,
        Value::Null,
    ));

    let frame = tps.frame();
    let labels = tps.frame_labels();
    let mut printed_fail = Vec::new();
    let mut corrected_fail = Vec::new();
    for (a, x) in frame.iter().enumerate() {
        for (b, y) in frame.iter().enumerate() {
            let lhs = metric.inner(&tps.apply(&phi, x), &tps.apply(&phi, y));
            let g = metric.inner(x, y);
            let tt = &tps.theta_of(x) * &tps.theta_of(y);
            let printed = &(&(-&g) - &tt) - &lhs;
            let corrected = &(&(-&g) + &tt) - &lhs;
            if !printed.is_zero() {
                printed_fail.push(json!({"pair": [labels[a], labels[b]], "residual": printed.to_string()}));
            }
            if !corrected.is_zero() {
                corrected_fail.push(json!({"pair": [labels[a], labels[b]], "residual": corrected.to_string()}));
            }
        }
    }
    out.push(ClaimResult::exact(
        "G(phi X, phi Y) = -G(X,Y) + theta(X)theta(Y) on all frame pairs",
        "almost-contact/indefinite-compatibility",
        corrected_fail.is_empty(),
        json!(corrected_fail),
    ));
    // the printed sign fails exactly on (xi, xi); reported, not asserted
    let only_xi = printed_fail.len() == 1 && printed_fail[0]["pair"] == json!(["xi", "xi"]);
    out.push(ClaimResult::not_applicable(
        "G(phi X, phi Y) = -G(X,Y) - theta(X)theta(Y) as printed",
        "almost-contact/indefinite-compatibility",
        &format!(
            "printed sign fails on {} pair(s){}: {}",
            printed_fail.len(),
            if only_xi { " (only (xi, xi))" } else { "" },
            Value::Array(printed_fail.clone())
        ),
    ));
    // the classical law must fail on (X_1, P_1)
    let x1 = tps.xf(1);
    let p1 = tps.pf(1);
    let lhs = metric.inner(&tps.apply(&phi, &x1), &tps.apply(&phi, &p1));
    let classical = &metric.inner(&x1, &p1) - &(&tps.theta_of(&x1) * &tps.theta_of(&p1));
    out.push(ClaimResult::exact(
        "classical compatibility fails on (X1, P1)",
        "almost-contact/classical-counterexample",
        lhs != classical && lhs == LaurentPoly::int(r, -1) && metric.inner(&x1, &p1) == LaurentPoly::one(r),
        json!({"G(phiX1, phiP1)": lhs.to_string(), "G(X1,P1) - theta theta": classical.to_string()}),
    ));
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CatalogField {
    pub label: String,
    pub field: VectorFieldSym,
    /// `theta(X)`, the contact Hamiltonian in the `H = theta(X)` convention.
    pub hamiltonian: LaurentPoly,
    /// The Hamiltonian as listed with the algebra in the text.
    pub listed_hamiltonian: LaurentPoly,
}

/// `xi`, `A_i = x^i d/dx0 - d/dp_i`, `B_j = -d/dx^j`,
/// `Q^k_l = p_l d/dp_k - x^k d/dx^l`.
pub fn killing_catalog_tps(tps: &Tps) -> Vec<CatalogField> {
    let n = tps.n;
    let mut out = Vec::new();
    let mk = |label: String, field: VectorFieldSym, listed: LaurentPoly| CatalogField {
        hamiltonian: tps.theta_of(&field),
        label,
        field,
        listed_hamiltonian: listed,
    };
    out.push(mk("xi".into(), tps.xi(), LaurentPoly::one(tps.ring())));
    for i in 1..=n {
        let a = tps.xi().mul_fn(&tps.x(i)).sub(&tps.pf(i));
        out.push(mk(format!("A{i}"), a, tps.p(i)));
    }
    for j in 1..=n {
        out.push(mk(format!("B{j}"), tps.dxf(j).neg(), tps.x(j)));
    }
    for k in 1..=n {
        for l in 1..=n {
            let q = tps.pf(k).mul_fn(&tps.p(l)).sub(&tps.dxf(l).mul_fn(&tps.x(k)));
            out.push(mk(format!("Q{k}_{l}"), q, &tps.x(k) * &tps.p(l)));
        }
    }
    out
}

/// The generator `d/dp_i + x^i d/dx0` exactly as displayed with the algebra.
pub fn printed_a_field(tps: &Tps, i: usize) -> VectorFieldSym {
    tps.pf(i).add(&tps.xi().mul_fn(&tps.x(i)))
}

/// Expected brackets of the catalog: `[A_i, B_j] = d_ij xi`,
/// `[Q^k_l, A_i] = -d_il A_k`, `[Q^k_l, B_j] = d_kj B_l`,
/// `[Q^k_l, Q^r_s] = d_ks Q^r_l - d_rl Q^k_s`, everything else zero.
pub fn expected_structure_tps(n: usize) -> StructureConstants {
    let m = 1 + 2 * n + n * n;
    let ia = |i: usize| i;
    let ib = |j: usize| n + j;
    let iq = |k: usize, l: usize| 2 * n + (k - 1) * n + l;
    let mut c = vec![vec![vec![int(0); m]; m]; m];
    let mut set = |a: usize, b: usize, k: usize, v: Rational| {
        c[a][b][k] += v.clone();
        c[b][a][k] -= v;
    };
    for i in 1..=n {
        set(ia(i), ib(i), 0, int(1));
    }
    for k in 1..=n {
        for l in 1..=n {
            set(iq(k, l), ia(l), ia(k), int(-1));
            set(iq(k, l), ib(k), ib(l), int(1));
            for r in 1..=n {
                for s in 1..=n {
                    if (k, l) >= (r, s) {
                        continue;
                    }
                    if k == s {
                        set(iq(k, l), iq(r, s), iq(r, l), int(1));
                    }
                    if r == l {
                        set(iq(k, l), iq(r, s), iq(k, s), int(-1));
                    }
                }
            }
        }
    }
    c
}

/// Structure constants of the catalog compared with the expected table.
pub fn catalog_structure_check(tps: &Tps) -> Result<(bool, StructureConstants)> {
    let fields: Vec<VectorFieldSym> = killing_catalog_tps(tps).into_iter().map(|c| c.field).collect();
    let sc = structure_constants(&fields)?;
    Ok((sc == expected_structure_tps(tps.n), sc))
}

/// Contact condition: `theta ^ (d theta)^n` equals a nonzero constant times the
/// coordinate volume form.
pub fn contact_volume(tps: &Tps) -> Option<Rational> {
    let th = tps.theta();
    let top = th.wedge(&th.d().pow_wedge(tps.n));
    let all: Vec<usize> = (0..tps.dim()).collect();
    if top.terms().len() != 1 {
        return None;
    }
    top.coeff(&all).as_constant()
}

/// `d theta (P_i, X_j)` and friends on the contact distribution.
pub fn dtheta_gram(tps: &Tps) -> PolyMatrix {
    let w = tps.theta().d();
    let f: Vec<VectorFieldSym> = (1..=tps.n)
        .map(|i| tps.pf(i))
        .chain((1..=tps.n).map(|i| tps.xf(i)))
        .collect();
    PolyMatrix::from_fn(tps.ring(), f.len(), f.len(), |a, b| w.eval_on(&[&f[a], &f[b]]))
}

/// Solve `i_v d theta = 0`, `theta(v) = 1` over constant fields.
pub fn reeb_from_kernel(tps: &Tps) -> Option<VectorFieldSym> {
    let w = tps.theta().d();
    let dim = tps.dim();
    let mut rows = Vec::new();
    for a in 0..dim {
        let row: Option<Vec<Rational>> = (0..dim)
            .map(|b| {
                w.eval_on(&[&tps.coord(b), &tps.coord(a)]).as_constant()
            })
            .collect();
        rows.push(row?);
    }
    let k = crate::exactalg::kernel_exact(&QMatrix::from_dense(&rows, dim));
    if k.len() != 1 {
        return None;
    }
    let v = VectorFieldSym::new(
        k[0].iter().map(|c| LaurentPoly::constant(tps.ring(), c.clone())).collect(),
    );
    let t = tps.theta_of(&v).as_constant()?;
    if num::Zero::is_zero(&t) {
        return None;
    }
    Some(v.scale(&t.recip()))
}

/// Nonzero frame commutators as `(i, j, bracket)`.
pub fn frame_commutators(tps: &Tps) -> Vec<(usize, usize, VectorFieldSym)> {
    let f = tps.frame();
    let mut out = Vec::new();
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            let b = bracket(&f[i], &f[j]);
            if !b.is_zero() {
                out.push((i, j, b));
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ConstitutiveHypersurface {
    pub defining: LaurentPoly,
    pub generators: Vec<(String, VectorFieldSym)>,
    pub gibbs_duhem: Form,
}

/// `C = {x0 + sum p_l x^l = 0}` with generators `X_l` and `P_ij` of `D_C`.
pub fn constitutive_hypersurface(tps: &Tps) -> ConstitutiveHypersurface {
    let n = tps.n;
    let mut f = tps.x(0);
    for l in 1..=n {
        f += &(&tps.p(l) * &tps.x(l));
    }
    let mut generators = Vec::new();
    for l in 1..=n {
        generators.push((format!("X{l}"), tps.xf(l)));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let v = tps.pf(i).mul_fn(&tps.x(j)).sub(&tps.pf(j).mul_fn(&tps.x(i)));
            generators.push((format!("P{i}{j}"), v));
        }
    }
    let mut gd = Form::zero(tps.ring(), tps.dim());
    for i in 1..=n {
        gd = gd.add(&Form::dx(tps.ring(), tps.dim(), tps.ip(i)).mul_fn(&tps.x(i)));
    }
    ConstitutiveHypersurface {
        defining: f,
        generators,
        gibbs_duhem: gd,
    }
}

impl ConstitutiveHypersurface {
    pub fn contains(&self, point: &[Rational]) -> Result<bool> {
        Ok(num::Zero::is_zero(&self.defining.eval(point)?))
    }

    /// On the plane where every `x^i` vanishes the contact plane is the whole
    /// tangent space of the quadric.
    pub fn on_exceptional_plane(&self, tps: &Tps, point: &[Rational]) -> bool {
        (0..=tps.n).all(|i| num::Zero::is_zero(&point[tps.ix(i)]))
    }

    /// Tangency, horizontality and the Gibbs-Duhem pairing for each generator;
    /// residuals are exact polynomials that must vanish.
    pub fn generator_residuals(&self, tps: &Tps) -> Vec<(String, LaurentPoly, LaurentPoly, LaurentPoly)> {
        self.generators
            .iter()
            .map(|(l, v)| {
                (
                    l.clone(),
                    v.apply(&self.defining),
                    tps.theta_of(v),
                    self.gibbs_duhem.eval_on(&[v]),
                )
            })
            .collect()
    }
}

/// The `X_l` generator as printed with `+x^l d/dx0`.
pub fn printed_constitutive_x(tps: &Tps, l: usize) -> VectorFieldSym {
    tps.dxf(l).add(&tps.xi().mul_fn(&tps.x(l)))
}

/// Expected nonzero Christoffel symbols of the Mrugala metric, keyed by
/// `(upper, lower, lower)` with lower indices sorted.
pub fn expected_christoffel_tps(tps: &Tps) -> Vec<(usize, usize, usize, LaurentPoly)> {
    let n = tps.n;
    let r = tps.ring();
    let half = rat(1, 2);
    let mut m: std::collections::BTreeMap<(usize, usize, usize), LaurentPoly> = Default::default();
    let mut put = |a: usize, b: usize, c: usize, v: LaurentPoly| {
        let key = if b <= c { (a, b, c) } else { (a, c, b) };
        let e = m.entry(key).or_insert_with(|| LaurentPoly::zero(r));
        *e += &v;
    };
    for i in 1..=n {
        put(0, 0, tps.ix(i), tps.p(i).scale(&half));
        put(0, tps.ix(i), tps.ip(i), LaurentPoly::constant(r, half.clone()));
        put(tps.ip(i), 0, tps.ip(i), LaurentPoly::constant(r, half.clone()));
        put(tps.ix(i), 0, tps.ix(i), LaurentPoly::constant(r, -half.clone()));
        for j in 1..=n {
            if i <= j {
                put(0, tps.ix(i), tps.ix(j), &tps.p(i) * &tps.p(j));
            }
            // Gamma^{p_i}_{x^j p_k} = 1/2 d^i_k p_j
            put(tps.ip(i), tps.ix(j), tps.ip(i), tps.p(j).scale(&half));
            for k in j..=n {
                // Gamma^{x^i}_{x^j x^k} = -1/2 (d^i_j p_k + d^i_k p_j)
                let mut v = LaurentPoly::zero(r);
                if i == j {
                    v += &tps.p(k);
                }
                if i == k {
                    v += &tps.p(j);
                }
                put(tps.ix(i), tps.ix(j), tps.ix(k), v.scale(&-half.clone()));
            }
        }
    }
    m.into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|((a, b, c), v)| (a, b, c, v))
        .collect()
}

pub fn christoffel_matches(table: &ChristoffelTable, expected: &[(usize, usize, usize, LaurentPoly)]) -> (bool, Vec<Value>) {
    let got = table.nonzero();
    let mut diffs = Vec::new();
    let chart = table.chart();
    let key = |a: usize, b: usize, c: usize| format!("Gamma^{}_{{{} {}}}", chart[a], chart[b], chart[c]);
    let exp: std::collections::BTreeMap<_, _> = expected.iter().map(|(a, b, c, v)| ((*a, *b, *c), v.clone())).collect();
    let gotm: std::collections::BTreeMap<_, _> = got.iter().map(|(a, b, c, v)| ((*a, *b, *c), v.clone())).collect();
    for (k, v) in &exp {
        match gotm.get(k) {
            Some(g) if g == v => {}
            other => diffs.push(json!({"entry": key(k.0, k.1, k.2), "expected": v.to_string(),
                "computed": other.map(|g| g.to_string()).unwrap_or_else(|| "0".into())})),
        }
    }
    for (k, v) in &gotm {
        if !exp.contains_key(k) {
            diffs.push(json!({"entry": key(k.0, k.1, k.2), "expected": "0", "computed": v.to_string()}));
        }
    }
    (diffs.is_empty(), diffs)
}

/// Expected Ricci matrix: `R00 = -n/2`, `R_{0 x^i} = -n/2 p_i`,
/// `R_{p_i x^j} = 1/2 d_ij`, `R_{x^i x^j} = -n/2 p_i p_j`.
pub fn expected_ricci_tps(tps: &Tps) -> PolyMatrix {
    let n = tps.n;
    let r = tps.ring();
    let hn = rat(-(n as i64), 2);
    let mut m = PolyMatrix::zeros(r, tps.dim(), tps.dim());
    m.set(0, 0, LaurentPoly::constant(r, hn.clone()));
    for i in 1..=n {
        m.set(0, tps.ix(i), tps.p(i).scale(&hn));
        m.set(tps.ix(i), 0, tps.p(i).scale(&hn));
        m.set(tps.ip(i), tps.ix(i), LaurentPoly::constant(r, rat(1, 2)));
        m.set(tps.ix(i), tps.ip(i), LaurentPoly::constant(r, rat(1, 2)));
        for j in 1..=n {
            m.set(tps.ix(i), tps.ix(j), (&tps.p(i) * &tps.p(j)).scale(&hn));
        }
    }
    m
}

/// Gram matrix of the canonical frame.
pub fn frame_gram(tps: &Tps) -> Result<PolyMatrix> {
    Ok(gram_matrix(&tps.metric()?, &tps.frame()))
}

/// `L_X G` for a field, re-exported for reports.
pub fn lie_g(tps: &Tps, x: &VectorFieldSym) -> Result<PolyMatrix> {
    Ok(lie_derivative_metric(&tps.metric()?, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffgeo::{christoffel, is_killing, killing_solve, ricci_scalar, span_equal};

    fn t(n: usize) -> Tps {
        Tps::new(n).unwrap()
    }

    #[test]
    fn theta_values_on_frame() {
        let s = t(2);
        assert_eq!(s.theta_of(&s.xi()), LaurentPoly::one(s.ring()));
        assert!(s.theta_of(&s.xf(2)).is_zero());
        assert!(s.theta_of(&s.pf(1)).is_zero());
        assert_eq!(s.theta_of(&s.dxf(2)), s.p(2));
        assert!(Tps::new(0).is_err());
    }

    #[test]
    fn metric_matches_forms_and_inverse() {
        for n in 1..=3 {
            let s = t(n);
            let g = s.metric_matrix();
            assert_eq!(g, s.metric_from_forms());
            let inv = g.inverse().unwrap().to_poly(s.ring()).unwrap();
            assert_eq!(inv, s.metric_inverse_matrix());
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(g.det().unwrap(), LaurentPoly::int(s.ring(), sign));
        }
        let s = t(1);
        let p = s.p(1);
        let one = LaurentPoly::one(s.ring());
        let z = LaurentPoly::zero(s.ring());
        let expected = PolyMatrix::from_rows(
            s.ring(),
            vec![
                vec![one.clone(), z.clone(), p.clone()],
                vec![z.clone(), z.clone(), one.clone()],
                vec![p.clone(), one.clone(), &p * &p],
            ],
        )
        .unwrap();
        assert_eq!(s.metric_matrix(), expected);
    }

    #[test]
    fn frame_gram_is_constant() {
        let s = t(1);
        let g = frame_gram(&s).unwrap();
        let rows: Vec<Vec<String>> = g.to_text_rows();
        assert_eq!(rows, vec![vec!["1", "0", "0"], vec!["0", "0", "1"], vec!["0", "1", "0"]]);
    }

    #[test]
    fn split_is_standard_indefinite() {
        for n in 1..=3 {
            let s = t(n);
            let m = s.metric().unwrap();
            let (plus, minus) = signature_split(&s);
            assert_eq!((plus.len(), minus.len()), (n + 1, n));
            let gram = signature_gram(&m, &plus, &minus).unwrap();
            for (i, row) in gram.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let want = if i != j { 0 } else if i <= n { 1 } else { -1 };
                    assert_eq!(*v, want);
                }
            }
        }
    }

    #[test]
    fn light_cone_examples() {
        let s = t(1);
        let m = s.metric().unwrap();
        let pt = vec![rat(3, 7), rat(-2, 5), rat(11, 3)];
        assert_eq!(light_cone_test(&m, &s.xi(), &pt).unwrap(), LightCone::Positive);
        assert_eq!(light_cone_test(&m, &s.pf(1), &pt).unwrap(), LightCone::Null);
        let v = s.xi().add(&s.pf(1)).sub(&s.xf(1).scale(&rat(1, 2)));
        assert_eq!(light_cone_test(&m, &v, &pt).unwrap(), LightCone::Null);
        let w = s.pf(1).sub(&s.xf(1));
        assert_eq!(light_cone_test(&m, &w, &pt).unwrap(), LightCone::Negative);
    }

    #[test]
    fn compatibility_results() {
        for n in 1..=2 {
            let s = t(n);
            let res = compatibility_check(&s).unwrap();
            assert!(crate::report::all_pass(&res), "{res:#?}");
            let printed = res.iter().find(|r| r.claim.contains("as printed")).unwrap();
            assert!(printed.witness.as_str().unwrap().contains("1 pair(s) (only (xi, xi))"));
        }
    }

    #[test]
    fn catalog_is_killing_and_closes() {
        for n in 1..=2 {
            let s = t(n);
            let m = s.metric().unwrap();
            let cat = killing_catalog_tps(&s);
            assert_eq!(cat.len(), n * n + 2 * n + 1);
            for c in &cat {
                assert!(is_killing(&m, &c.field), "{}", c.label);
            }
            let (ok, _) = catalog_structure_check(&s).unwrap();
            assert!(ok);
            assert!(!is_killing(&m, &printed_a_field(&s, 1)));
        }
        let s = t(2);
        let cat = killing_catalog_tps(&s);
        let h: Vec<String> = cat.iter().map(|c| c.hamiltonian.to_string()).collect();
        assert_eq!(h[1], "x1");
        assert_eq!(h[3], "-p1");
    }

    #[test]
    fn killing_kernel_matches_catalog() {
        for n in 1..=2 {
            let s = t(n);
            let sol = killing_solve(&s.metric().unwrap(), 2);
            assert_eq!(sol.dimension(), n * n + 2 * n + 1);
            let cat: Vec<VectorFieldSym> = killing_catalog_tps(&s).into_iter().map(|c| c.field).collect();
            assert!(span_equal(&sol.basis, &cat));
        }
    }

    #[test]
    fn christoffel_and_ricci_tables() {
        for n in 1..=2 {
            let s = t(n);
            let m = s.metric().unwrap();
            let tab = christoffel(&m);
            let (ok, diffs) = christoffel_matches(&tab, &expected_christoffel_tps(&s));
            assert!(ok, "{diffs:?}");
            let curv = ricci_scalar(&m);
            assert_eq!(curv.ricci, expected_ricci_tps(&s));
            assert_eq!(curv.scalar_constant(), Some(rat(n as i64, 2)));
        }
    }

    #[test]
    fn contact_structure() {
        for n in 1..=3 {
            let s = t(n);
            let v = contact_volume(&s).unwrap();
            assert!(!num::Zero::is_zero(&v));
            assert_eq!(reeb_from_kernel(&s).unwrap(), s.xi());
            let w = dtheta_gram(&s);
            for a in 0..2 * n {
                for b in 0..2 * n {
                    let want = if b == a + n { 1 } else if a == b + n { -1 } else { 0 };
                    assert_eq!(w.get(a, b), &LaurentPoly::int(s.ring(), want));
                }
            }
            let br = frame_commutators(&s);
            assert_eq!(br.len(), n);
            for (i, j, b) in br {
                assert_eq!(j, i + n);
                assert_eq!(b, s.xi().neg());
            }
        }
    }

    #[test]
    fn constitutive_generators() {
        let s = t(1);
        let c = constitutive_hypersurface(&s);
        assert!(c.contains(&[int(-2), int(1), int(2)]).unwrap());
        assert!(c.on_exceptional_plane(&s, &[int(0), int(5), int(0)]));
        let s = t(2);
        let c = constitutive_hypersurface(&s);
        assert_eq!(c.generators.len(), 3);
        for (label, tan, hor, gd) in c.generator_residuals(&s) {
            assert!(tan.is_zero() && hor.is_zero() && gd.is_zero(), "{label}");
        }
        let bad = printed_constitutive_x(&s, 1);
        assert!(!s.theta_of(&bad).is_zero());
    }
}
