//! Legendre submanifolds `Sigma_phi` of `(P, theta)` generated by a potential
//! `phi(p_I, x^J)`: the surface point, the induced metric, the frames `Y_k`,
//! `Z_k`, the second fundamental form, homogeneity and stability.
//!
//! Ambient vectors use the chart order `(x0, p_1..p_n, x^1..x^n)`. The base
//! point `u` is indexed by `k = 0..n`: `u_k = p_k` for `k` in `I`, `x^k`
//! otherwise.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::autodiff::{seed_jets, DoubleDouble, Jet3, Real};
use crate::error::{GeoError, Result};
use crate::report::ClaimResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// `x0 = phi - p_i phi_i`, `p_j = -phi_j`, `x^i = phi_i`.
    Canonical,
    /// `x0 = phi`, `p_k = +phi_k` (partition must be `I` empty). Legendre for
    /// `dx0 - p_k dx^k`; the metric used is `2 dp.dx + (dx0 - p dx)^2`.
    Graph,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Canonical => "canonical",
            Convention::Graph => "graph",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ModelKind {
    /// `U(S, V) = (V - b)^(-R/c_V) e^(S/c_V) - a/V`; `paper_literal` flips the
    /// exponent to `+R/c_V`.
    VanDerWaals {
        a: f64,
        b: f64,
        r: f64,
        c_v: f64,
        paper_literal: bool,
    },
    /// `1/2 u^T Q u`.
    Quadratic { q: Vec<Vec<f64>> },
    /// `sum a_k u_k`.
    Linear { a: Vec<f64> },
    /// `sum c_k u_k^3`.
    Cubic { c: Vec<f64> },
    /// `x^1 g(x^2/x^1)` with `g(t) = t^2`.
    HomogeneousDemo,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PotentialModel {
    pub name: String,
    pub nvars: usize,
    /// `in_i[k]` is true when variable `k` is a momentum `p_k`.
    pub in_i: Vec<bool>,
    pub kind: ModelKind,
    pub convention: Convention,
    pub homogeneous_degree: Option<f64>,
}

impl PotentialModel {
    pub fn new(name: &str, nvars: usize, kind: ModelKind) -> Self {
        let homogeneous_degree = match &kind {
            ModelKind::VanDerWaals { .. } => None,
            ModelKind::Quadratic { .. } => Some(2.0),
            ModelKind::Linear { .. } | ModelKind::HomogeneousDemo => Some(1.0),
            ModelKind::Cubic { .. } => Some(3.0),
        };
        PotentialModel {
            name: name.to_string(),
            nvars,
            in_i: vec![false; nvars],
            kind,
            convention: Convention::Canonical,
            homogeneous_degree,
        }
    }

    pub fn with_partition(mut self, i_set: &[usize]) -> Result<Self> {
        let mut in_i = vec![false; self.nvars];
        for &i in i_set {
            if i == 0 || i > self.nvars {
                return Err(GeoError::Domain(format!("partition index {i} outside 1..{}", self.nvars)));
            }
            in_i[i - 1] = true;
        }
        self.in_i = in_i;
        Ok(self)
    }

    pub fn with_convention(mut self, c: Convention) -> Self {
        self.convention = c;
        self
    }

    pub fn i_set(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&k| self.in_i[k]).map(|k| k + 1).collect()
    }

    pub fn j_set(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&k| !self.in_i[k]).map(|k| k + 1).collect()
    }

    pub fn van_der_waals(a: f64, b: f64, r: f64, c_v: f64, paper_literal: bool) -> Self {
        Self::new(
            "van_der_waals",
            2,
            ModelKind::VanDerWaals {
                a,
                b,
                r,
                c_v,
                paper_literal,
            },
        )
    }

    pub fn ideal_gas_energy(r: f64, c_v: f64) -> Self {
        let mut m = Self::van_der_waals(0.0, 0.0, r, c_v, false);
        m.name = "ideal_gas_energy".into();
        m
    }

    pub fn quadratic(q: Vec<Vec<f64>>) -> Self {
        let n = q.len();
        Self::new("quadratic", n, ModelKind::Quadratic { q })
    }

    pub fn linear(a: Vec<f64>) -> Self {
        let n = a.len();
        Self::new("linear", n, ModelKind::Linear { a })
    }

    pub fn cubic(c: Vec<f64>) -> Self {
        let n = c.len();
        Self::new("cubic", n, ModelKind::Cubic { c })
    }

    pub fn homogeneous_demo() -> Self {
        Self::new("homogeneous_demo", 2, ModelKind::HomogeneousDemo)
    }

    /// Evaluates `phi` with any scalar type.
    pub fn eval<R: Real>(&self, u: &[R]) -> Result<R> {
        if u.len() != self.nvars {
            return Err(GeoError::DimensionMismatch {
                expected: self.nvars,
                got: u.len(),
            });
        }
        match &self.kind {
            ModelKind::VanDerWaals {
                a,
                b,
                r,
                c_v,
                paper_literal,
            } => {
                let expo = if *paper_literal { r / c_v } else { -r / c_v };
                let vb = u[1].add_c(-b);
                if vb.value() <= 0.0 {
                    return Err(GeoError::NumericDomain(format!("V = {} must exceed b = {b}", u[1].value())));
                }
                let mut out = vb.powf(expo)?.mul(&u[0].scale(1.0 / c_v).exp());
                if *a != 0.0 {
                    out = out.sub(&u[1].cst(*a).div(&u[1])?);
                }
                Ok(out)
            }
            ModelKind::Quadratic { q } => {
                let mut acc = u[0].cst(0.0);
                for k in 0..self.nvars {
                    for l in 0..self.nvars {
                        if q[k][l] != 0.0 {
                            acc = acc.add(&u[k].mul(&u[l]).scale(0.5 * q[k][l]));
                        }
                    }
                }
                Ok(acc)
            }
            ModelKind::Linear { a } => Ok(u.iter().zip(a).fold(u[0].cst(0.0), |acc, (x, c)| acc.add(&x.scale(*c)))),
            ModelKind::Cubic { c } => {
                let mut acc = u[0].cst(0.0);
                for (x, ck) in u.iter().zip(c) {
                    acc = acc.add(&x.mul(x).mul(x).scale(*ck));
                }
                Ok(acc)
            }
            ModelKind::HomogeneousDemo => {
                let t = u[1].div(&u[0])?;
                Ok(u[0].mul(&t.mul(&t)))
            }
        }
    }

    pub fn jet(&self, u: &[f64]) -> Result<Jet3> {
        self.eval(&seed_jets(u))
    }

    pub fn eval_dd(&self, u: &[DoubleDouble]) -> Result<DoubleDouble> {
        self.eval(u)
    }

    pub fn value(&self, u: &[f64]) -> Result<f64> {
        self.eval(u)
    }

    /// Deterministic points inside the model's natural domain.
    pub fn sample_domain(&self, count: usize, seed: u64) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| match &self.kind {
                ModelKind::VanDerWaals { b, .. } => vec![rng.gen_range(0.5..2.0), b + rng.gen_range(0.5..2.0)],
                ModelKind::HomogeneousDemo => vec![rng.gen_range(0.5..3.0), rng.gen_range(-2.0..2.0)],
                _ => (0..self.nvars).map(|_| rng.gen_range(-2.0..2.0)).collect(),
            })
            .collect()
    }

    pub fn describe(&self) -> Value {
        json!({
            "name": self.name,
            "nvars": self.nvars,
            "convention": self.convention.as_str(),
            "partition": {"I": self.i_set(), "J": self.j_set()},
            "homogeneous_degree": self.homogeneous_degree,
        })
    }
}

/// Built-in catalog at the default (unit) parameters.
pub fn catalog() -> Vec<PotentialModel> {
    vec![
        PotentialModel::van_der_waals(1.0, 1.0, 1.0, 1.5, false),
        PotentialModel::ideal_gas_energy(1.0, 1.5),
        PotentialModel::quadratic(vec![vec![2.0, 0.5], vec![0.5, -1.0]]),
        PotentialModel::linear(vec![1.5, -0.5]),
        PotentialModel::homogeneous_demo(),
    ]
}

/// JSON model description: `{name, convention, partition, parameters, model}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelFile {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub convention: Option<Convention>,
    #[serde(default)]
    pub partition: Option<PartitionSpec>,
    #[serde(default)]
    pub parameters: Map<String, Value>,
    pub model: String,
    #[serde(default)]
    pub paper_literal: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionSpec {
    #[serde(rename = "I", default)]
    pub i: Vec<usize>,
    #[serde(rename = "J", default)]
    pub j: Vec<usize>,
}

fn param_f64(p: &Map<String, Value>, key: &str, default: f64) -> Result<f64> {
    match p.get(key) {
        None => Ok(default),
        Some(v) => v
            .as_f64()
            .ok_or_else(|| GeoError::Parse(format!("parameters.{key}: expected a number"))),
    }
}

fn param_vec(p: &Map<String, Value>, key: &str) -> Result<Vec<f64>> {
    let v = p
        .get(key)
        .ok_or_else(|| GeoError::Parse(format!("parameters.{key}: missing")))?;
    serde_json::from_value(v.clone()).map_err(|e| GeoError::Parse(format!("parameters.{key}: {e}")))
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<ModelFile> {
        serde_json::from_str(text).map_err(|e| GeoError::Parse(format!("model file: {e}")))
    }

    pub fn build(&self) -> Result<PotentialModel> {
        let p = &self.parameters;
        let mut m = match self.model.as_str() {
            "van_der_waals" => PotentialModel::van_der_waals(
                param_f64(p, "a", 1.0)?,
                param_f64(p, "b", 1.0)?,
                param_f64(p, "R", 1.0)?,
                param_f64(p, "c_V", 1.5)?,
                self.paper_literal,
            ),
            "ideal_gas_energy" => PotentialModel::ideal_gas_energy(param_f64(p, "R", 1.0)?, param_f64(p, "c_V", 1.5)?),
            "quadratic" => {
                let v = p.get("Q").ok_or_else(|| GeoError::Parse("parameters.Q: missing".into()))?;
                let q: Vec<Vec<f64>> =
                    serde_json::from_value(v.clone()).map_err(|e| GeoError::Parse(format!("parameters.Q: {e}")))?;
                if q.is_empty() || q.iter().any(|r| r.len() != q.len()) {
                    return Err(GeoError::Parse("parameters.Q: expected a square matrix".into()));
                }
                PotentialModel::quadratic(q)
            }
            "linear" => PotentialModel::linear(param_vec(p, "a")?),
            "cubic" => PotentialModel::cubic(param_vec(p, "c")?),
            "homogeneous_demo" => PotentialModel::homogeneous_demo(),
            other => return Err(GeoError::Parse(format!("model: unknown catalog id '{other}'"))),
        };
        if m.nvars == 0 {
            return Err(GeoError::Parse("model has no variables".into()));
        }
        if let Some(name) = &self.name {
            m.name = name.clone();
        }
        if let Some(part) = &self.partition {
            let mut all: Vec<usize> = part.i.iter().chain(&part.j).copied().collect();
            all.sort_unstable();
            if all != (1..=m.nvars).collect::<Vec<_>>() {
                return Err(GeoError::Parse(format!(
                    "partition: I and J must split 1..{} without overlap",
                    m.nvars
                )));
            }
            m = m.with_partition(&part.i)?;
        }
        if let Some(c) = self.convention {
            if c == Convention::Graph && m.in_i.iter().any(|&b| b) {
                return Err(GeoError::Parse("convention: graph requires I empty".into()));
            }
            m = m.with_convention(c);
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurfacePoint {
    pub base: Vec<f64>,
    pub ambient: Vec<f64>,
    #[serde(skip)]
    pub jet: Jet3,
    pub convention: Convention,
    /// Relative residual of the contact form on the coordinate tangent vectors.
    pub theta_residual: f64,
}

fn n_of(model: &PotentialModel) -> usize {
    model.nvars
}

/// Point, first and second derivatives of the embedding `u -> (x0, p, x)`.
struct Embedding {
    point: Vec<f64>,
    d1: Vec<Vec<f64>>,
    d2: Vec<Vec<Vec<f64>>>,
}

fn embedding(model: &PotentialModel, u: &[f64], j: &Jet3) -> Embedding {
    let n = n_of(model);
    let d = 2 * n + 1;
    let (g, h, t) = (&j.grad, |a: usize, b: usize| j.hess(a, b), |a, b, c| j.third(a, b, c));
    let ii = &model.in_i;
    let mut point = vec![0.0; d];
    let mut d1 = vec![vec![0.0; d]; n];
    let mut d2 = vec![vec![vec![0.0; d]; n]; n];
    match model.convention {
        Convention::Canonical => {
            point[0] = j.value - (0..n).filter(|&i| ii[i]).map(|i| u[i] * g[i]).sum::<f64>();
            for k in 0..n {
                if ii[k] {
                    point[1 + k] = u[k];
                    point[1 + n + k] = g[k];
                } else {
                    point[1 + k] = -g[k];
                    point[1 + n + k] = u[k];
                }
            }
            for m in 0..n {
                d1[m][0] = if ii[m] { 0.0 } else { g[m] } - (0..n).filter(|&i| ii[i]).map(|i| u[i] * h(i, m)).sum::<f64>();
                for k in 0..n {
                    if ii[k] {
                        d1[m][1 + k] = if k == m { 1.0 } else { 0.0 };
                        d1[m][1 + n + k] = h(k, m);
                    } else {
                        d1[m][1 + k] = -h(k, m);
                        d1[m][1 + n + k] = if k == m { 1.0 } else { 0.0 };
                    }
                }
                for l in 0..n {
                    let sgn = if !ii[m] { 1.0 } else { 0.0 } - if ii[l] { 1.0 } else { 0.0 };
                    d2[m][l][0] = sgn * h(m, l) - (0..n).filter(|&i| ii[i]).map(|i| u[i] * t(i, m, l)).sum::<f64>();
                    for k in 0..n {
                        if ii[k] {
                            d2[m][l][1 + n + k] = t(k, m, l);
                        } else {
                            d2[m][l][1 + k] = -t(k, m, l);
                        }
                    }
                }
            }
        }
        Convention::Graph => {
            point[0] = j.value;
            for k in 0..n {
                point[1 + k] = g[k];
                point[1 + n + k] = u[k];
            }
            for m in 0..n {
                d1[m][0] = g[m];
                d1[m][1 + n + m] = 1.0;
                for k in 0..n {
                    d1[m][1 + k] = h(k, m);
                }
                for l in 0..n {
                    d2[m][l][0] = h(m, l);
                    for k in 0..n {
                        d2[m][l][1 + k] = t(k, m, l);
                    }
                }
            }
        }
    }
    Embedding { point, d1, d2 }
}

/// Contact form value on an ambient vector at `point`, with its absolute scale.
fn contact(conv: Convention, n: usize, point: &[f64], v: &[f64]) -> (f64, f64) {
    let s = if conv == Convention::Canonical { 1.0 } else { -1.0 };
    let mut val = v[0];
    let mut scale = v[0].abs();
    for k in 0..n {
        let term = s * point[1 + k] * v[1 + n + k];
        val += term;
        scale += term.abs();
    }
    (val, scale)
}

/// Ambient metric `2 dp.dx + c^2` where `c` is the convention's contact form.
pub fn ambient_metric(conv: Convention, n: usize, point: &[f64]) -> DMatrix<f64> {
    let d = 2 * n + 1;
    let s = if conv == Convention::Canonical { 1.0 } else { -1.0 };
    let mut c = vec![0.0; d];
    c[0] = 1.0;
    for k in 0..n {
        c[1 + n + k] = s * point[1 + k];
    }
    let mut g = DMatrix::from_fn(d, d, |a, b| c[a] * c[b]);
    for k in 0..n {
        g[(1 + k, 1 + n + k)] += 1.0;
        g[(1 + n + k, 1 + k)] += 1.0;
    }
    g
}

fn inner(g: &DMatrix<f64>, a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..a.len() {
        if a[i] == 0.0 {
            continue;
        }
        for j in 0..b.len() {
            s += a[i] * g[(i, j)] * b[j];
        }
    }
    s
}

pub fn surface_point(model: &PotentialModel, base: &[f64]) -> Result<SurfacePoint> {
    if model.convention == Convention::Graph && model.in_i.iter().any(|&b| b) {
        return Err(GeoError::Unsupported("graph convention requires I empty".into()));
    }
    let jet = model.jet(base)?;
    if !jet.value.is_finite() || jet.grad.iter().any(|x| !x.is_finite()) {
        return Err(GeoError::NumericDomain(format!("non-finite potential at {base:?}")));
    }
    let e = embedding(model, base, &jet);
    let n = model.nvars;
    let mut resid: f64 = 0.0;
    for v in &e.d1 {
        let (val, scale) = contact(model.convention, n, &e.point, v);
        resid = resid.max(val.abs() / scale.max(1.0));
    }
    Ok(SurfacePoint {
        base: base.to_vec(),
        ambient: e.point,
        jet,
        convention: model.convention,
        theta_residual: resid,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct InducedMetric {
    /// Gram of the pushed-forward coordinate frame under the ambient metric.
    pub pullback_metric: DMatrix<f64>,
    /// The block formula: `+2 phi_ii'` on I, `-2 phi_jj'` on J, zero mixed
    /// (all `+2 phi` for the graph convention).
    pub block_formula: DMatrix<f64>,
    pub weinhold_hessian: DMatrix<f64>,
    /// `max |pullback - block|`.
    pub max_route_diff: f64,
    /// Whether `pullback = +-2 Hessian` holds blockwise within `1e-10` relative.
    pub factor_two_ok: bool,
}

fn block_sign(model: &PotentialModel, k: usize, l: usize) -> f64 {
    match model.convention {
        Convention::Graph => 1.0,
        Convention::Canonical => match (model.in_i[k], model.in_i[l]) {
            (true, true) => 1.0,
            (false, false) => -1.0,
            _ => 0.0,
        },
    }
}

pub fn induced_metric(model: &PotentialModel, base: &[f64]) -> Result<InducedMetric> {
    let sp = surface_point(model, base)?;
    let n = model.nvars;
    let e = embedding(model, base, &sp.jet);
    let g = ambient_metric(model.convention, n, &e.point);
    let pull = DMatrix::from_fn(n, n, |k, l| inner(&g, &e.d1[k], &e.d1[l]));
    let hess = DMatrix::from_fn(n, n, |k, l| sp.jet.hess(k, l));
    let block = DMatrix::from_fn(n, n, |k, l| 2.0 * block_sign(model, k, l) * hess[(k, l)]);
    let diff = (&pull - &block).abs().max();
    let scale = hess.abs().max().max(1.0);
    let mut factor_two_ok = true;
    for k in 0..n {
        for l in 0..n {
            let s = block_sign(model, k, l);
            if s != 0.0 {
                factor_two_ok &= (pull[(k, l)] - 2.0 * s * hess[(k, l)]).abs() <= 1e-10 * scale;
            }
        }
    }
    Ok(InducedMetric {
        pullback_metric: pull,
        block_formula: block,
        weinhold_hessian: hess,
        max_route_diff: diff,
        factor_two_ok,
    })
}

/// Ambient frame of `P`: `xi`, `P_k`, `X_k = d/dx^k - p_k d/dx0`.
pub fn frame_xi(n: usize) -> Vec<f64> {
    let mut v = vec![0.0; 2 * n + 1];
    v[0] = 1.0;
    v
}

pub fn frame_p(n: usize, k: usize) -> Vec<f64> {
    let mut v = vec![0.0; 2 * n + 1];
    v[1 + k] = 1.0;
    v
}

pub fn frame_x(n: usize, point: &[f64], k: usize) -> Vec<f64> {
    let mut v = vec![0.0; 2 * n + 1];
    v[1 + n + k] = 1.0;
    v[0] = -point[1 + k];
    v
}

fn axpy(acc: &mut [f64], a: f64, v: &[f64]) {
    for (x, y) in acc.iter_mut().zip(v) {
        *x += a * y;
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Frames {
    pub v: Vec<Vec<f64>>,
    pub w: Vec<Vec<f64>>,
    /// `Y_k = V_k + phi_kl W_l`.
    pub y: Vec<Vec<f64>>,
    /// `Z_k = W_k - 1/2 phi^kl Y_l`.
    pub z: Vec<Vec<f64>>,
    /// Blockwise inverse `phi^kl`, mixed entries zero.
    pub phi_inv: DMatrix<f64>,
    /// `max |Y_k - d e / du_k|` against the pushed-forward coordinate frame.
    pub tangent_route_diff: f64,
    pub vw_table: DMatrix<f64>,
    pub yz_max: f64,
    pub z_gram: DMatrix<f64>,
    /// `|det|` of `(Y, Z, xi)` as a `(2n+1)`-square matrix.
    pub complement_det: f64,
}

fn blockwise_inverse(model: &PotentialModel, hess: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = model.nvars;
    let mut out = DMatrix::zeros(n, n);
    for want in [true, false] {
        let idx: Vec<usize> = (0..n).filter(|&k| model.in_i[k] == want).collect();
        if idx.is_empty() {
            continue;
        }
        let blk = DMatrix::from_fn(idx.len(), idx.len(), |a, b| hess[(idx[a], idx[b])]);
        let norm = blk.abs().max();
        if norm == 0.0 || (blk.clone() / norm).determinant().abs() <= 1e-10 {
            return Err(GeoError::DegenerateSurface);
        }
        let inv = blk.try_inverse().ok_or(GeoError::DegenerateSurface)?;
        for a in 0..idx.len() {
            for b in 0..idx.len() {
                out[(idx[a], idx[b])] = inv[(a, b)];
            }
        }
    }
    Ok(out)
}

pub fn frames(model: &PotentialModel, base: &[f64]) -> Result<Frames> {
    if model.convention != Convention::Canonical {
        return Err(GeoError::Unsupported("frames are defined for the canonical convention".into()));
    }
    let sp = surface_point(model, base)?;
    let n = model.nvars;
    let pt = &sp.ambient;
    let hess = DMatrix::from_fn(n, n, |k, l| sp.jet.hess(k, l));
    let phi_inv = blockwise_inverse(model, &hess)?;
    let v: Vec<Vec<f64>> = (0..n)
        .map(|k| if model.in_i[k] { frame_p(n, k) } else { frame_x(n, pt, k) })
        .collect();
    let w: Vec<Vec<f64>> = (0..n)
        .map(|k| {
            if model.in_i[k] {
                frame_x(n, pt, k)
            } else {
                frame_p(n, k).iter().map(|x| -x).collect()
            }
        })
        .collect();
    let y: Vec<Vec<f64>> = (0..n)
        .map(|k| {
            let mut acc = v[k].clone();
            for l in 0..n {
                axpy(&mut acc, hess[(k, l)], &w[l]);
            }
            acc
        })
        .collect();
    let z: Vec<Vec<f64>> = (0..n)
        .map(|k| {
            let mut acc = w[k].clone();
            for l in 0..n {
                axpy(&mut acc, -0.5 * phi_inv[(k, l)], &y[l]);
            }
            acc
        })
        .collect();
    let e = embedding(model, base, &sp.jet);
    let mut tangent_route_diff: f64 = 0.0;
    for k in 0..n {
        for a in 0..2 * n + 1 {
            tangent_route_diff = tangent_route_diff.max((y[k][a] - e.d1[k][a]).abs());
        }
    }
    let g = ambient_metric(Convention::Canonical, n, pt);
    let vw_table = DMatrix::from_fn(n, n, |k, l| inner(&g, &v[k], &w[l]));
    let mut yz_max: f64 = 0.0;
    for k in 0..n {
        for l in 0..n {
            yz_max = yz_max.max(inner(&g, &y[k], &z[l]).abs());
        }
        yz_max = yz_max.max(inner(&g, &y[k], &frame_xi(n)).abs());
    }
    let z_gram = DMatrix::from_fn(n, n, |k, l| inner(&g, &z[k], &z[l]));
    let cols: Vec<&Vec<f64>> = y.iter().chain(z.iter()).collect();
    let xi = frame_xi(n);
    let m = DMatrix::from_fn(2 * n + 1, 2 * n + 1, |a, c| if c < 2 * n { cols[c][a] } else { xi[a] });
    Ok(Frames {
        v,
        w,
        y,
        z,
        phi_inv,
        tangent_route_diff,
        vw_table,
        yz_max,
        z_gram,
        complement_det: m.determinant().abs(),
    })
}

/// Levi-Civita symbols `Gamma^a_{bc}` of the canonical ambient metric at a
/// point, from its analytic first derivatives.
pub fn ambient_christoffel(n: usize, point: &[f64]) -> Vec<Vec<Vec<f64>>> {
    let d = 2 * n + 1;
    let g = ambient_metric(Convention::Canonical, n, point);
    let ginv = g.try_inverse().expect("ambient metric is invertible");
    // dg[c][a][b] = d_c G_ab; only p-derivatives are nonzero
    let mut dg = vec![vec![vec![0.0; d]; d]; d];
    for c in 0..n {
        let pc = 1 + c;
        let xc = 1 + n + c;
        dg[pc][0][xc] = 1.0;
        dg[pc][xc][0] = 1.0;
        for j in 0..n {
            let xj = 1 + n + j;
            dg[pc][xc][xj] += point[1 + j];
            dg[pc][xj][xc] += point[1 + j];
        }
    }
    let mut gam = vec![vec![vec![0.0; d]; d]; d];
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                let mut s = 0.0;
                for e in 0..d {
                    let first = dg[b][e][c] + dg[c][e][b] - dg[e][b][c];
                    if first != 0.0 {
                        s += ginv[(a, e)] * first;
                    }
                }
                gam[a][b][c] = 0.5 * s;
            }
        }
    }
    gam
}

#[derive(Clone, Debug, PartialEq)]
pub struct SecondFundamentalForm {
    /// `coeff[l][k][s] = phi_lks = Y_k(phi_ls)`.
    pub coeff: Vec<Vec<Vec<f64>>>,
    /// `II(Y_k, Y_l) = phi_lks Z_s` as ambient vectors, indexed `[k][l]`.
    pub normals: Vec<Vec<Vec<f64>>>,
    /// `max |nabla_{Y_k} Y_l - 1/2 phi^sr phi_lks Y_r - phi_lks Z_s|`.
    pub decomposition_residual: f64,
    /// `max |II(Y_k, Y_l) - II(Y_l, Y_k)|`.
    pub symmetry_residual: f64,
    pub norm: f64,
}

pub fn second_fundamental_form(model: &PotentialModel, base: &[f64]) -> Result<SecondFundamentalForm> {
    let fr = frames(model, base)?;
    let sp = surface_point(model, base)?;
    let n = model.nvars;
    let d = 2 * n + 1;
    let e = embedding(model, base, &sp.jet);
    let gam = ambient_christoffel(n, &e.point);
    let coeff: Vec<Vec<Vec<f64>>> = (0..n)
        .map(|l| (0..n).map(|k| (0..n).map(|s| sp.jet.third(l, k, s)).collect()).collect())
        .collect();
    let mut normals = vec![vec![vec![0.0; d]; n]; n];
    let mut decomposition_residual: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for k in 0..n {
        for l in 0..n {
            // covariant derivative of the coordinate frame along the surface
            let mut nab = e.d2[k][l].clone();
            for a in 0..d {
                for b in 0..d {
                    if e.d1[k][b] == 0.0 {
                        continue;
                    }
                    for c in 0..d {
                        nab[a] += gam[a][b][c] * e.d1[k][b] * e.d1[l][c];
                    }
                }
            }
            let mut want = vec![0.0; d];
            let mut nv = vec![0.0; d];
            for s in 0..n {
                let c = coeff[l][k][s];
                axpy(&mut nv, c, &fr.z[s]);
                for r in 0..n {
                    axpy(&mut want, 0.5 * fr.phi_inv[(s, r)] * c, &fr.y[r]);
                }
            }
            axpy(&mut want, 1.0, &nv);
            for a in 0..d {
                scale = scale.max(nab[a].abs());
                decomposition_residual = decomposition_residual.max((nab[a] - want[a]).abs());
            }
            normals[k][l] = nv;
        }
    }
    let mut symmetry_residual: f64 = 0.0;
    let mut norm_sq = 0.0;
    for k in 0..n {
        for l in 0..n {
            for a in 0..d {
                symmetry_residual = symmetry_residual.max((normals[k][l][a] - normals[l][k][a]).abs());
            }
            for s in 0..n {
                norm_sq += coeff[l][k][s] * coeff[l][k][s];
            }
        }
    }
    Ok(SecondFundamentalForm {
        coeff,
        normals,
        decomposition_residual: decomposition_residual / scale,
        symmetry_residual,
        norm: norm_sq.sqrt(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
    Marginal,
}

impl Definiteness {
    /// Stability reading for energy-type potentials.
    pub fn stability(self) -> &'static str {
        match self {
            Definiteness::PositiveDefinite => "stable",
            Definiteness::Marginal => "marginal",
            _ => "unstable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stability {
    pub class: Definiteness,
    pub stability: &'static str,
    pub eigenvalues: Vec<f64>,
}

pub fn classify_hessian(h: &DMatrix<f64>) -> Stability {
    let tol = 1e-9 * h.norm();
    let mut ev: Vec<f64> = SymmetricEigen::new(h.clone()).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    let class = if ev.iter().any(|x| x.abs() <= tol) {
        Definiteness::Marginal
    } else if ev.iter().all(|&x| x > 0.0) {
        Definiteness::PositiveDefinite
    } else if ev.iter().all(|&x| x < 0.0) {
        Definiteness::NegativeDefinite
    } else {
        Definiteness::Indefinite
    };
    Stability {
        class,
        stability: class.stability(),
        eigenvalues: ev,
    }
}

pub fn stability_classify(model: &PotentialModel, base: &[f64]) -> Result<Stability> {
    Ok(classify_hessian(&induced_metric(model, base)?.weinhold_hessian))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomogeneityReport {
    pub degree: Option<f64>,
    pub scaling_residual: f64,
    pub constitutive_residual: Option<f64>,
    pub gibbs_duhem_residual: Option<f64>,
}

/// Relative constitutive residual `x0 + p.x` at a surface point.
pub fn constitutive_residual(n: usize, ambient: &[f64]) -> f64 {
    let mut s = ambient[0];
    let mut scale = ambient[0].abs();
    for k in 0..n {
        let t = ambient[1 + k] * ambient[1 + n + k];
        s += t;
        scale += t.abs();
    }
    s.abs() / scale.max(1.0)
}

/// `sum x^i dp_i` on the coordinate tangent vectors, relative.
pub fn gibbs_duhem_residual(model: &PotentialModel, base: &[f64]) -> Result<f64> {
    let sp = surface_point(model, base)?;
    let n = model.nvars;
    let e = embedding(model, base, &sp.jet);
    let mut worst: f64 = 0.0;
    for v in &e.d1 {
        let mut s = 0.0;
        let mut scale = 0.0;
        for k in 0..n {
            let t = sp.ambient[1 + n + k] * v[1 + k];
            s += t;
            scale += t.abs();
        }
        worst = worst.max(s.abs() / f64::max(scale, 1.0));
    }
    Ok(worst)
}

pub fn homogeneity_check(model: &PotentialModel, samples: &[Vec<f64>]) -> Result<HomogeneityReport> {
    let Some(d) = model.homogeneous_degree else {
        return Ok(HomogeneityReport {
            degree: None,
            scaling_residual: 0.0,
            constitutive_residual: None,
            gibbs_duhem_residual: None,
        });
    };
    let mut scaling: f64 = 0.0;
    let mut cons: f64 = 0.0;
    let mut gd: f64 = 0.0;
    for x in samples {
        let f = model.value(x)?;
        for lam in [0.5, 2.0, 3.0] {
            let xs: Vec<f64> = x.iter().map(|v| lam * v).collect();
            let fl = model.value(&xs)?;
            let want = lam.powf(d) * f;
            scaling = scaling.max((fl - want).abs() / want.abs().max(1.0));
        }
        if d == 1.0 {
            let sp = surface_point(model, x)?;
            cons = cons.max(constitutive_residual(model.nvars, &sp.ambient));
            gd = gd.max(gibbs_duhem_residual(model, x)?);
        }
    }
    Ok(HomogeneityReport {
        degree: Some(d),
        scaling_residual: scaling,
        constitutive_residual: (d == 1.0).then_some(cons),
        gibbs_duhem_residual: (d == 1.0).then_some(gd),
    })
}

/// One analysis record of the potential report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointAnalysis {
    pub point: Vec<f64>,
    pub ambient: Vec<f64>,
    pub metric: Vec<Vec<f64>>,
    pub eigenvalues: Vec<f64>,
    pub classification: Definiteness,
    #[serde(rename = "II_norm")]
    pub ii_norm: Option<f64>,
    pub gibbs_duhem_residual: f64,
    pub theta_residual: f64,
    pub metric_route_diff: f64,
    pub note: Option<String>,
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
}

pub fn analyze_point(model: &PotentialModel, base: &[f64]) -> Result<PointAnalysis> {
    let sp = surface_point(model, base)?;
    let im = induced_metric(model, base)?;
    let st = classify_hessian(&im.weinhold_hessian);
    let (ii_norm, note) = if model.convention == Convention::Canonical {
        match second_fundamental_form(model, base) {
            Ok(ii) => (Some(ii.norm), None),
            Err(GeoError::DegenerateSurface) => (None, Some("degenerate surface metric".to_string())),
            Err(e) => return Err(e),
        }
    } else {
        (None, Some("second fundamental form needs the canonical convention".to_string()))
    };
    Ok(PointAnalysis {
        point: base.to_vec(),
        ambient: sp.ambient.clone(),
        metric: rows(&im.pullback_metric),
        eigenvalues: st.eigenvalues,
        classification: st.class,
        ii_norm,
        gibbs_duhem_residual: gibbs_duhem_residual(model, base)?,
        theta_residual: sp.theta_residual,
        metric_route_diff: im.max_route_diff,
        note,
    })
}

/// Analyses in input order; points are processed in parallel.
pub fn analyze_points(model: &PotentialModel, points: &[Vec<f64>]) -> Vec<Result<PointAnalysis>> {
    points.par_iter().map(|p| analyze_point(model, p)).collect()
}

/// Cartesian grid from per-axis `(lo, hi, steps)`; the last axis varies fastest.
pub fn grid(axes: &[(f64, f64, usize)]) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::new()];
    for &(lo, hi, steps) in axes {
        let vals: Vec<f64> = (0..steps)
            .map(|i| if steps <= 1 { lo } else { lo + (hi - lo) * i as f64 / (steps - 1) as f64 })
            .collect();
        out = out
            .into_iter()
            .flat_map(|p| {
                vals.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(*v);
                    q
                })
            })
            .collect();
    }
    out
}

/// Largest relative deviation between jet derivatives through order 3 and
/// the finite-difference oracle, with the given absolute floor.
pub fn jet_vs_oracle(model: &PotentialModel, base: &[f64], floor: f64) -> Result<f64> {
    use crate::autodiff::fd_oracle;
    let j = model.jet(base)?;
    let n = model.nvars;
    let f = |x: &[DoubleDouble]| model.eval_dd(x);
    let mut worst: f64 = 0.0;
    let mut check = |jet_val: f64, multi: Vec<usize>| -> Result<()> {
        let e = fd_oracle(&f, base, &multi)?;
        worst = worst.max((jet_val - e.estimate).abs() / e.estimate.abs().max(floor));
        Ok(())
    };
    for a in 0..n {
        let mut m = vec![0; n];
        m[a] += 1;
        check(j.grad[a], m)?;
        for b in a..n {
            let mut m = vec![0; n];
            m[a] += 1;
            m[b] += 1;
            check(j.hess(a, b), m)?;
            for c in b..n {
                let mut m = vec![0; n];
                m[a] += 1;
                m[b] += 1;
                m[c] += 1;
                check(j.third(a, b, c), m)?;
            }
        }
    }
    Ok(worst)
}

/// The numeric verification suite over the catalog.
pub fn catalog_suite(points_per_model: usize) -> Result<Vec<ClaimResult>> {
    let mut out = Vec::new();
    let models = catalog();
    let mut theta_worst: f64 = 0.0;
    let mut route_worst: f64 = 0.0;
    let mut factor_ok = true;
    for (mi, m) in models.iter().enumerate() {
        for p in m.sample_domain(points_per_model, 100 + mi as u64) {
            theta_worst = theta_worst.max(surface_point(m, &p)?.theta_residual);
            let im = induced_metric(m, &p)?;
            route_worst = route_worst.max(im.max_route_diff / im.weinhold_hessian.abs().max().max(1.0));
            factor_ok &= im.factor_two_ok;
        }
    }
    out.push(ClaimResult::numeric(
        "theta pulls back to zero on every catalog surface",
        "legendre/surface-point",
        theta_worst < 1e-12,
        json!({"max_relative_residual": theta_worst, "points_per_model": points_per_model}),
    ));
    out.push(ClaimResult::numeric(
        "induced metric: Gram of the tangent frame equals the block formula",
        "legendre/induced-metric",
        route_worst < 1e-10,
        json!({"max_abs_diff": route_worst}),
    ));
    out.push(ClaimResult::numeric(
        "pullback metric = +-2 Hessian blockwise",
        "legendre/induced-metric",
        factor_ok,
        Value::Null,
    ));

    let graph = PotentialModel::quadratic(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).with_convention(Convention::Graph);
    let gm = induced_metric(&graph, &[0.7, -1.3])?;
    let graph_ok = (gm.pullback_metric.clone() - DMatrix::identity(2, 2) * 2.0).abs().max() < 1e-12
        && (gm.weinhold_hessian.clone() - DMatrix::identity(2, 2)).abs().max() < 1e-12;
    out.push(ClaimResult::numeric(
        "graph convention: pullback = 2 delta while the Hessian is delta",
        "legendre/weinhold",
        graph_ok,
        json!({"pullback": rows(&gm.pullback_metric)}),
    ));

    let quad = &models[2];
    let mut ii_worst: f64 = 0.0;
    let mut yz_worst: f64 = 0.0;
    let mut decomp_worst: f64 = 0.0;
    let mut comp_min = f64::INFINITY;
    for p in quad.sample_domain(points_per_model, 7) {
        let ii = second_fundamental_form(quad, &p)?;
        let fr = frames(quad, &p)?;
        ii_worst = ii_worst.max(ii.norm);
        yz_worst = yz_worst.max(fr.yz_max);
        decomp_worst = decomp_worst.max(ii.decomposition_residual);
        comp_min = comp_min.min(fr.complement_det);
    }
    out.push(ClaimResult::numeric(
        "quadratic potentials are totally geodesic (II = 0)",
        "legendre/second-fundamental-form",
        ii_worst < 1e-12,
        json!({"max_II_norm": ii_worst}),
    ));
    out.push(ClaimResult::numeric(
        "G(Y_k, Z_l) = G(Y_k, xi) = 0 and (Y, Z, xi) spans the tangent space",
        "legendre/frames",
        yz_worst < 1e-10 && comp_min > 1e-8,
        json!({"max_abs_inner": yz_worst, "min_abs_det": comp_min}),
    ));

    let vdw = &models[0];
    let fd = jet_vs_oracle(vdw, &[1.0, 2.0], 1e-10)?;
    let mut fd_random: f64 = 0.0;
    for p in vdw.sample_domain(20, 11) {
        fd_random = fd_random.max(jet_vs_oracle(vdw, &p, 1e-10)?);
    }
    out.push(ClaimResult::numeric(
        "van der Waals jets agree with the finite-difference oracle through order 3",
        "legendre/van-der-waals",
        fd < 1e-7 && fd_random < 1e-7,
        json!({"at_(1,2)": fd, "max_over_20_points": fd_random}),
    ));
    let ii = second_fundamental_form(vdw, &[1.0, 2.0])?;
    out.push(ClaimResult::numeric(
        "II(Y_k, Y_l) = phi_lks Z_s matches nabla_Y Y decomposed in (Y, Z)",
        "legendre/second-fundamental-form",
        ii.decomposition_residual < 1e-9 && decomp_worst < 1e-9 && ii.symmetry_residual < 1e-9,
        json!({"vdw_residual": ii.decomposition_residual, "quadratic_residual": decomp_worst}),
    ));

    let demo = &models[4];
    let hr = homogeneity_check(demo, &demo.sample_domain(points_per_model, 5))?;
    let cons = hr.constitutive_residual.unwrap_or(f64::INFINITY);
    let gd = hr.gibbs_duhem_residual.unwrap_or(f64::INFINITY);
    out.push(ClaimResult::numeric(
        "degree-one potential: x0 + p.x = 0 and Gibbs-Duhem on the tangent frame",
        "legendre/homogeneity",
        hr.scaling_residual < 1e-12 && cons < 1e-12 && gd < 1e-12,
        serde_json::to_value(&hr).expect("report serializes"),
    ));
    let vh = homogeneity_check(vdw, &[])?;
    out.push(ClaimResult::not_applicable(
        "homogeneity of the van der Waals energy in (S, V)",
        "legendre/homogeneity",
        if vh.degree.is_none() { "no declared degree" } else { "unexpected degree" },
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_potential_surface() {
        let m = PotentialModel::linear(vec![0.0, 0.0]);
        let sp = surface_point(&m, &[1.5, -2.0]).unwrap();
        assert_eq!(sp.ambient, vec![0.0, 0.0, 0.0, 1.5, -2.0]);
    }

    #[test]
    fn half_square_surface() {
        let m = PotentialModel::quadratic(vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        let sp = surface_point(&m, &[1.0, 2.0]).unwrap();
        assert_eq!(sp.ambient, vec![2.5, -1.0, -2.0, 1.0, 2.0]);
        let im = induced_metric(&m, &[1.0, 2.0]).unwrap();
        assert!((im.pullback_metric.clone() + DMatrix::identity(2, 2) * 2.0).abs().max() < 1e-14);
    }

    #[test]
    fn mixed_partition_block_zero() {
        // phi = p1 x2, I = {1}
        let m = PotentialModel::quadratic(vec![vec![0.0, 1.0], vec![1.0, 0.0]])
            .with_partition(&[1])
            .unwrap();
        let im = induced_metric(&m, &[0.3, 1.7]).unwrap();
        assert!(im.pullback_metric.abs().max() < 1e-14);
        assert!(im.max_route_diff < 1e-14);
        assert_eq!(im.weinhold_hessian[(0, 1)], 1.0);
    }

    #[test]
    fn vw_table_signs() {
        let m = PotentialModel::quadratic(vec![vec![2.0, 0.3, 0.1], vec![0.3, 1.0, 0.0], vec![0.1, 0.0, -3.0]])
            .with_partition(&[1])
            .unwrap();
        let fr = frames(&m, &[0.4, -0.2, 0.9]).unwrap();
        let want = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, -1.0]);
        assert!((fr.vw_table.clone() - want).abs().max() < 1e-14);
        assert!(fr.tangent_route_diff < 1e-14);
        assert!(fr.yz_max < 1e-12);
    }

    #[test]
    fn normal_frame_when_i_empty() {
        let q = vec![vec![2.0, 0.5], vec![0.5, 1.0]];
        let m = PotentialModel::quadratic(q.clone());
        let fr = frames(&m, &[0.2, 0.4]).unwrap();
        let inv = DMatrix::from_row_slice(2, 2, &[2.0, 0.5, 0.5, 1.0]).try_inverse().unwrap();
        let pt = surface_point(&m, &[0.2, 0.4]).unwrap().ambient;
        for j in 0..2 {
            // Z_j = -1/2 (P_j + phi^{jj'} X_j')
            let mut want = frame_p(2, j);
            for k in 0..2 {
                axpy(&mut want, inv[(j, k)], &frame_x(2, &pt, k));
            }
            for a in 0..5 {
                assert!((fr.z[j][a] + 0.5 * want[a]).abs() < 1e-14);
            }
        }
        assert!(fr.yz_max < 1e-14);
    }

    #[test]
    fn cubic_second_fundamental_form() {
        let m = PotentialModel::cubic(vec![1.0]);
        let ii = second_fundamental_form(&m, &[1.0]).unwrap();
        assert_eq!(ii.coeff[0][0][0], 6.0);
        assert!(ii.decomposition_residual < 1e-12);
    }

    #[test]
    fn stability_examples() {
        let m = PotentialModel::quadratic(vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert_eq!(stability_classify(&m, &[0.1, 0.2]).unwrap().class, Definiteness::PositiveDefinite);
        let h = PotentialModel::quadratic(vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        let s = stability_classify(&h, &[0.1, 0.2]).unwrap();
        assert_eq!(s.class, Definiteness::Indefinite);
        assert!((s.eigenvalues[0] + 1.0).abs() < 1e-14 && (s.eigenvalues[1] - 1.0).abs() < 1e-14);
        let demo = PotentialModel::homogeneous_demo();
        assert_eq!(stability_classify(&demo, &[1.0, 0.5]).unwrap().class, Definiteness::Marginal);
        assert!(matches!(frames(&demo, &[1.0, 0.5]), Err(GeoError::DegenerateSurface)));
    }

    #[test]
    fn vdw_spinodal_located_by_scan() {
        let m = PotentialModel::van_der_waals(1.0, 1.0, 1.0, 1.5, false);
        let pts = grid(&[(-3.0, 0.0, 13), (1.2, 3.0, 13)]);
        let hit = pts.iter().find(|p| {
            let h = induced_metric(&m, p).unwrap().weinhold_hessian;
            h.determinant() < 0.0
        });
        let p = hit.expect("a point with det Hess < 0");
        assert_eq!(stability_classify(&m, p).unwrap().class, Definiteness::Indefinite);
    }

    #[test]
    fn temperature_is_energy_slope() {
        let m = PotentialModel::van_der_waals(1.0, 1.0, 1.0, 1.5, false).with_convention(Convention::Graph);
        let sp = surface_point(&m, &[1.0, 2.0]).unwrap();
        let f = |x: &[DoubleDouble]| m.eval_dd(x);
        let t = crate::autodiff::fd_oracle(&f, &[1.0, 2.0], &[1, 0]).unwrap();
        assert!((sp.ambient[1] - t.estimate).abs() < 1e-10 * t.estimate.abs());
        assert!(sp.theta_residual < 1e-15);
    }

    #[test]
    fn numeric_christoffel_matches_exact() {
        let tps = crate::tps::Tps::new(2).unwrap();
        let table = crate::diffgeo::christoffel(&tps.metric().unwrap());
        let pt = [0.0, 2.0, -3.0, 0.0, 0.0];
        let gam = ambient_christoffel(2, &pt);
        for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    let exact = table.get(a, b, c).eval_f64(&pt);
                    assert!((gam[a][b][c] - exact).abs() < 1e-14, "{a}{b}{c}");
                }
            }
        }
    }

    #[test]
    fn model_file_parsing() {
        let f = ModelFile::parse(
            r#"{"name":"vdw","convention":"canonical","partition":{"I":[],"J":[1,2]},
                "parameters":{"a":1,"b":1,"R":1,"c_V":1.5},"model":"van_der_waals"}"#,
        )
        .unwrap();
        let m = f.build().unwrap();
        assert_eq!(m.nvars, 2);
        assert!(ModelFile::parse("{\"model\": 3").is_err());
        let bad = ModelFile::parse(r#"{"model":"linear","parameters":{"a":[1,2]},"partition":{"I":[1],"J":[1]}}"#)
            .unwrap();
        assert!(bad.build().is_err());
        assert!(ModelFile::parse(r#"{"model":"nope"}"#).unwrap().build().is_err());
    }

    #[test]
    fn suite_passes() {
        let r = catalog_suite(30).unwrap();
        assert!(crate::report::all_pass(&r), "{r:#?}");
    }
}
