//! The Heisenberg group `H_n` of unitriangular matrices `g(a, b, c)`, its
//! exponential map and the diffeomorphism `chi: H_n -> P` carrying the contact
//! form and the metric to right-invariant structures.

use num::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::diffgeo::{bracket, express_in, gram_matrix, ChartMap, Form, MetricSpec, VectorFieldSym};
use crate::exactalg::rational::{serde_text, serde_text_vec};
use crate::exactalg::{int, rat, LaurentPoly, PolyMatrix, Rational, Ring, RingRef};
use crate::error::{GeoError, Result};
use crate::report::ClaimResult;
use crate::tps::{killing_catalog_tps, Tps};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeisElement {
    #[serde(with = "serde_text_vec")]
    pub a: Vec<Rational>,
    #[serde(with = "serde_text_vec")]
    pub b: Vec<Rational>,
    #[serde(with = "serde_text")]
    pub c: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeisAlgElement {
    #[serde(with = "serde_text_vec")]
    pub a: Vec<Rational>,
    #[serde(with = "serde_text_vec")]
    pub b: Vec<Rational>,
    #[serde(with = "serde_text")]
    pub z: Rational,
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(GeoError::DimensionMismatch { expected, got });
    }
    Ok(())
}

impl HeisElement {
    pub fn new(a: Vec<Rational>, b: Vec<Rational>, c: Rational) -> Result<Self> {
        check_len(a.len(), b.len())?;
        Ok(HeisElement { a, b, c })
    }

    pub fn identity(n: usize) -> Self {
        HeisElement {
            a: vec![Rational::zero(); n],
            b: vec![Rational::zero(); n],
            c: Rational::zero(),
        }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// `(a + a1, b + b1, c + c1 + <a, b1>)`.
    pub fn multiply(&self, o: &HeisElement) -> Result<HeisElement> {
        check_len(self.n(), o.n())?;
        Ok(HeisElement {
            a: self.a.iter().zip(&o.a).map(|(x, y)| x + y).collect(),
            b: self.b.iter().zip(&o.b).map(|(x, y)| x + y).collect(),
            c: &self.c + &o.c + dot(&self.a, &o.b),
        })
    }

    pub fn inverse(&self) -> HeisElement {
        HeisElement {
            a: self.a.iter().map(|x| -x).collect(),
            b: self.b.iter().map(|x| -x).collect(),
            c: -&self.c + dot(&self.a, &self.b),
        }
    }

    /// `log(a, b, c) = (a, b, c - 1/2 <a, b>)`.
    pub fn log(&self) -> HeisAlgElement {
        HeisAlgElement {
            a: self.a.clone(),
            b: self.b.clone(),
            z: &self.c - dot(&self.a, &self.b) * rat(1, 2),
        }
    }

    pub fn to_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.n();
        let mut m = identity_matrix(n + 2);
        for i in 0..n {
            m[0][1 + i] = self.a[i].clone();
            m[1 + i][n + 1] = self.b[i].clone();
        }
        m[0][n + 1] = self.c.clone();
        m
    }

    pub fn from_matrix(m: &[Vec<Rational>]) -> Result<Self> {
        let d = m.len();
        if d < 2 {
            return Err(GeoError::Domain("matrix too small".into()));
        }
        let n = d - 2;
        for i in 0..d {
            for j in 0..d {
                let structural = i == 0 && j >= 1 || j == n + 1 && i >= 1;
                let want = if i == j { int(1) } else { Rational::zero() };
                if !structural && m[i][j] != want || (i == n + 1 && j == n + 1 && m[i][j] != int(1)) {
                    return Err(GeoError::Domain(format!("entry ({i},{j}) breaks the Heisenberg form")));
                }
            }
        }
        Ok(HeisElement {
            a: (0..n).map(|i| m[0][1 + i].clone()).collect(),
            b: (0..n).map(|i| m[1 + i][n + 1].clone()).collect(),
            c: m[0][n + 1].clone(),
        })
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("element serializes")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let e: HeisElement = serde_json::from_value(v.clone()).map_err(|e| GeoError::Parse(e.to_string()))?;
        check_len(e.a.len(), e.b.len())?;
        Ok(e)
    }
}

impl HeisAlgElement {
    pub fn new(a: Vec<Rational>, b: Vec<Rational>, z: Rational) -> Result<Self> {
        check_len(a.len(), b.len())?;
        Ok(HeisAlgElement { a, b, z })
    }

    /// `(a, b, z + 1/2 <a, b>)`.
    pub fn exp(&self) -> HeisElement {
        HeisElement {
            a: self.a.clone(),
            b: self.b.clone(),
            c: &self.z + dot(&self.a, &self.b) * rat(1, 2),
        }
    }

    pub fn to_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.a.len();
        let mut m = vec![vec![Rational::zero(); n + 2]; n + 2];
        for i in 0..n {
            m[0][1 + i] = self.a[i].clone();
            m[1 + i][n + 1] = self.b[i].clone();
        }
        m[0][n + 1] = self.z.clone();
        m
    }

    /// `I + M + M^2/2`, exact because `M^3 = 0`.
    pub fn exp_series(&self) -> Vec<Vec<Rational>> {
        let m = self.to_matrix();
        let m2 = matmul(&m, &m);
        let d = m.len();
        let mut out = identity_matrix(d);
        for i in 0..d {
            for j in 0..d {
                out[i][j] += &m[i][j] + &m2[i][j] * rat(1, 2);
            }
        }
        out
    }
}

pub fn identity_matrix(d: usize) -> Vec<Vec<Rational>> {
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { int(1) } else { Rational::zero() }).collect())
        .collect()
}

pub fn matmul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let (r, k, c) = (a.len(), b.len(), b[0].len());
    (0..r)
        .map(|i| {
            (0..c)
                .map(|j| (0..k).map(|t| &a[i][t] * &b[t][j]).sum())
                .collect()
        })
        .collect()
}

pub fn multiply(g: &HeisElement, g1: &HeisElement) -> Result<HeisElement> {
    g.multiply(g1)
}

pub fn exp(x: &HeisAlgElement) -> HeisElement {
    x.exp()
}

/// `chi(g(a, b, c)) = (x0 = -c, p = b, x = a)` in the chart order `(x0, p, x)`.
pub fn chi(g: &HeisElement) -> Vec<Rational> {
    let mut m = vec![-g.c.clone()];
    m.extend(g.b.iter().cloned());
    m.extend(g.a.iter().cloned());
    m
}

pub fn chi_inv(point: &[Rational]) -> Result<HeisElement> {
    if point.len() % 2 == 0 {
        return Err(GeoError::DimensionMismatch {
            expected: point.len() + 1,
            got: point.len(),
        });
    }
    let n = (point.len() - 1) / 2;
    Ok(HeisElement {
        a: point[n + 1..].to_vec(),
        b: point[1..=n].to_vec(),
        c: -point[0].clone(),
    })
}

/// Left action `T_g = chi o L_g o chi^{-1}` on `P`.
pub fn left_action(g: &HeisElement, point: &[Rational]) -> Result<Vec<Rational>> {
    Ok(chi(&g.multiply(&chi_inv(point)?)?))
}

/// Closed form `(x0 - c - <a, p>, p + b, x + a)`.
pub fn left_action_closed(g: &HeisElement, point: &[Rational]) -> Vec<Rational> {
    let n = g.n();
    let p = &point[1..=n];
    let mut out = vec![&point[0] - &g.c - dot(&g.a, p)];
    out.extend(p.iter().zip(&g.b).map(|(x, y)| x + y));
    out.extend(point[n + 1..].iter().zip(&g.a).map(|(x, y)| x + y));
    out
}

/// Symbolic chart `(a1..an, b1..bn, c)` on the group with the maps to and from `P`.
pub struct HeisChart {
    pub n: usize,
    pub ring: RingRef,
    pub tps: Tps,
    pub chi: ChartMap,
    pub chi_inv: ChartMap,
}

impl HeisChart {
    pub fn new(n: usize) -> Result<Self> {
        let tps = Tps::new(n)?;
        let mut vars: Vec<(String, bool)> = (1..=n).map(|i| (format!("a{i}"), false)).collect();
        vars.extend((1..=n).map(|i| (format!("b{i}"), false)));
        vars.push(("c".into(), false));
        let ring = Ring::new(&vars);
        let v = |i: usize| LaurentPoly::var(&ring, i);
        let mut images = vec![LaurentPoly::zero(&ring); tps.dim()];
        images[0] = -v(2 * n);
        for i in 1..=n {
            images[tps.ip(i)] = v(n + i - 1);
            images[tps.ix(i)] = v(i - 1);
        }
        let chi = ChartMap::new(&ring, 2 * n + 1, tps.ring(), tps.dim(), images)?;
        let mut inv = vec![LaurentPoly::zero(tps.ring()); 2 * n + 1];
        for i in 1..=n {
            inv[i - 1] = tps.x(i);
            inv[n + i - 1] = tps.p(i);
        }
        inv[2 * n] = -tps.x(0);
        let chi_inv = ChartMap::new(tps.ring(), tps.dim(), &ring, 2 * n + 1, inv)?;
        Ok(HeisChart {
            n,
            ring,
            tps,
            chi,
            chi_inv,
        })
    }

    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    pub fn a(&self, i: usize) -> LaurentPoly {
        LaurentPoly::var(&self.ring, i - 1)
    }

    pub fn b(&self, j: usize) -> LaurentPoly {
        LaurentPoly::var(&self.ring, self.n + j - 1)
    }

    fn d_a(&self, i: usize) -> VectorFieldSym {
        VectorFieldSym::coord(&self.ring, self.dim(), i - 1)
    }

    fn d_b(&self, j: usize) -> VectorFieldSym {
        VectorFieldSym::coord(&self.ring, self.dim(), self.n + j - 1)
    }

    fn d_c(&self) -> VectorFieldSym {
        VectorFieldSym::coord(&self.ring, self.dim(), 2 * self.n)
    }

    /// Right-invariant fields (generators of left translations).
    pub fn xi_z(&self) -> VectorFieldSym {
        self.d_c()
    }

    pub fn xi_a(&self, i: usize) -> VectorFieldSym {
        self.d_a(i).add(&self.d_c().mul_fn(&self.b(i)))
    }

    pub fn xi_b(&self, j: usize) -> VectorFieldSym {
        self.d_b(j)
    }

    /// Left-invariant fields (generators of right translations).
    pub fn eta_c(&self) -> VectorFieldSym {
        self.d_c()
    }

    pub fn eta_a(&self, i: usize) -> VectorFieldSym {
        self.d_a(i)
    }

    pub fn eta_b(&self, j: usize) -> VectorFieldSym {
        self.d_b(j).add(&self.d_c().mul_fn(&self.a(j)))
    }

    pub fn push(&self, v: &VectorFieldSym) -> Result<VectorFieldSym> {
        self.chi.pushforward(v, &self.chi_inv)
    }

    /// `theta_H = chi* theta`.
    pub fn theta_h(&self) -> Result<Form> {
        self.chi.pullback_form(&self.tps.theta())
    }

    /// `G_H = chi* G`.
    pub fn metric_h(&self) -> Result<MetricSpec> {
        MetricSpec::new("heisenberg", self.chi.pullback_sym(&self.tps.metric_matrix())?)
    }

    pub fn right_frame(&self) -> Vec<VectorFieldSym> {
        let mut f = vec![self.xi_z()];
        f.extend((1..=self.n).map(|i| self.xi_a(i)));
        f.extend((1..=self.n).map(|j| self.xi_b(j)));
        f
    }
}

/// The three groups of generators through the pushforward and the contact
/// and metric structures on the group.
pub fn invariant_fields_and_checks(n: usize) -> Result<Vec<ClaimResult>> {
    let h = HeisChart::new(n)?;
    let t = &h.tps;
    let mut out = Vec::new();

    let mut bad = Vec::new();
    if h.push(&h.xi_z())? != t.xi().neg() {
        bad.push(json!("xi_Z"));
    }
    for i in 1..=n {
        if h.push(&h.xi_a(i))? != t.xf(i) {
            bad.push(json!(format!("xi_A{i}")));
        }
        if h.push(&h.xi_b(i))? != t.pf(i) {
            bad.push(json!(format!("xi_B{i}")));
        }
    }
    out.push(ClaimResult::exact(
        "chi_*(xi_Z) = -d/dx0, chi_*(xi_A_i) = X_i, chi_*(xi_B_j) = P_j",
        "heisenberg/right-invariant-pushforward",
        bad.is_empty(),
        json!(bad),
    ));

    let th = h.theta_h()?;
    let mut want = Form::dx(&h.ring, h.dim(), 2 * n).neg();
    for i in 1..=n {
        want = want.add(&Form::dx(&h.ring, h.dim(), i - 1).mul_fn(&h.b(i)));
    }
    out.push(ClaimResult::exact(
        "theta_H = chi* theta = -dc + b_i da^i",
        "heisenberg/contact-form",
        th == want,
        json!(th.to_string()),
    ));
    let reeb = h.xi_z().neg();
    let reeb_ok = th.eval_on(&[&reeb]) == LaurentPoly::one(&h.ring)
        && th.d().interior(&reeb).is_zero()
        && h.push(&reeb)? == t.xi();
    out.push(ClaimResult::exact(
        "Reeb field of theta_H is -d/dc and maps to xi",
        "heisenberg/contact-form",
        reeb_ok,
        Value::Null,
    ));

    let mut lie_bad = Vec::new();
    let mut etas = vec![("eta_C".to_string(), h.eta_c())];
    for i in 1..=n {
        etas.push((format!("eta_A{i}"), h.eta_a(i)));
    }
    for j in 1..=n {
        etas.push((format!("eta_B{j}"), h.eta_b(j)));
    }
    for (label, e) in &etas {
        let l = th.lie_derivative(e);
        if !l.is_zero() {
            lie_bad.push(json!({"field": label, "value": l.to_string()}));
        }
    }
    out.push(ClaimResult::exact(
        "L_eta theta_H = 0 for every left-invariant generator",
        "heisenberg/right-invariance",
        lie_bad.is_empty(),
        json!(lie_bad),
    ));

    let gh = h.metric_h()?;
    let gram = gram_matrix(&gh, &h.right_frame());
    let constant = (0..gram.rows()).all(|a| (0..gram.cols()).all(|b| gram.get(a, b).is_constant()));
    out.push(ClaimResult::exact(
        "Gram matrix of G_H in (xi_C, xi_A, xi_B) is constant",
        "heisenberg/right-invariant-metric",
        constant,
        json!(gram.to_text_rows()),
    ));

    // left-invariant generators: computed images and Killing span membership
    let killing: Vec<VectorFieldSym> = killing_catalog_tps(t).into_iter().map(|c| c.field).collect();
    let mut pushed = Vec::new();
    let mut in_span = true;
    let mut images_ok = h.push(&h.eta_c())? == t.xi().neg();
    for (label, e) in &etas {
        let v = h.push(e)?;
        in_span &= express_in(&killing, &v).is_some();
        pushed.push(json!({"field": label, "image": v.to_string()}));
    }
    for i in 1..=n {
        images_ok &= h.push(&h.eta_a(i))? == t.dxf(i);
        let want_b = t.pf(i).sub(&t.xi().mul_fn(&t.x(i)));
        images_ok &= h.push(&h.eta_b(i))? == want_b;
    }
    out.push(ClaimResult::exact(
        "chi_*(eta_C) = -xi, chi_*(eta_A_i) = d/dx^i, chi_*(eta_B_j) = d/dp_j - x^j d/dx0",
        "heisenberg/left-invariant-pushforward",
        images_ok,
        json!(pushed),
    ));
    out.push(ClaimResult::exact(
        "images of the left-invariant generators lie in the Killing algebra of G",
        "heisenberg/nilradical",
        in_span,
        Value::Null,
    ));
    let printed_b = t.pf(1).add(&t.xi().mul_fn(&t.x(1)));
    out.push(ClaimResult::not_applicable(
        "printed images xi and d/dp_j + x^j d/dx0",
        "heisenberg/left-invariant-pushforward",
        &format!(
            "computed images differ by sign in the xi and x^j d/dx0 terms; printed d/dp_1 + x^1 d/dx0 is Killing: {}",
            crate::diffgeo::is_killing(&t.metric()?, &printed_b)
        ),
    ));

    let mut comm_ok = true;
    for i in 1..=n {
        for j in 1..=n {
            let b = h.push(&bracket(&h.xi_a(i), &h.xi_b(j)))?;
            let want = bracket(&t.xf(i), &t.pf(j));
            comm_ok &= b == want;
            comm_ok &= want == if i == j { t.xi() } else { VectorFieldSym::zero(t.ring(), t.dim()) };
        }
    }
    out.push(ClaimResult::exact(
        "[xi_A_i, xi_B_j] pushes forward to [X_i, P_j] = d_ij xi",
        "heisenberg/right-invariant-pushforward",
        comm_ok,
        Value::Null,
    ));
    Ok(out)
}

/// Group axioms, exponential against the series and log, chi round trips and
/// the closed-form left action on the given samples.
pub fn group_checks(samples: &[(HeisElement, HeisElement, HeisElement)]) -> Result<Vec<ClaimResult>> {
    let mut assoc = true;
    let mut inv = true;
    let mut ident = true;
    let mut matrix = true;
    let mut exp_ok = true;
    let mut log_ok = true;
    let mut chi_ok = true;
    let mut action_ok = true;
    for (g, h, k) in samples {
        let n = g.n();
        let e = HeisElement::identity(n);
        assoc &= g.multiply(h)?.multiply(k)? == g.multiply(&h.multiply(k)?)?;
        inv &= g.multiply(&g.inverse())? == e && g.inverse().multiply(g)? == e;
        ident &= g.multiply(&e)? == *g && e.multiply(g)? == *g;
        matrix &= HeisElement::from_matrix(&matmul(&g.to_matrix(), &h.to_matrix()))? == g.multiply(h)?;
        let x = HeisAlgElement::new(g.a.clone(), g.b.clone(), g.c.clone())?;
        exp_ok &= HeisElement::from_matrix(&x.exp_series())? == x.exp();
        log_ok &= x.exp().log() == x && g.log().exp() == *g;
        chi_ok &= chi_inv(&chi(g))? == *g;
        let m = chi(k);
        action_ok &= left_action(g, &m)? == left_action_closed(g, &m);
    }
    let count = samples.len();
    let w = json!({ "samples": count });
    Ok(vec![
        ClaimResult::exact("associativity", "heisenberg/group", assoc, w.clone()),
        ClaimResult::exact("g g^-1 = g^-1 g = e", "heisenberg/group", inv, w.clone()),
        ClaimResult::exact("identity element", "heisenberg/group", ident, w.clone()),
        ClaimResult::exact("product agrees with matrix multiplication", "heisenberg/group", matrix, w.clone()),
        ClaimResult::exact("exp equals the series I + M + M^2/2", "heisenberg/exponential", exp_ok, w.clone()),
        ClaimResult::exact("log o exp = id and exp o log = id", "heisenberg/exponential", log_ok, w.clone()),
        ClaimResult::exact("chi_inv o chi = id", "heisenberg/chi", chi_ok, w.clone()),
        ClaimResult::exact("left action matches (x0 - c - <a,p>, p + b, x + a)", "heisenberg/left-action", action_ok, w),
    ])
}

/// Deterministic rational samples of group elements.
pub fn sample_elements(n: usize, count: usize, seed: u64) -> Vec<(HeisElement, HeisElement, HeisElement)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut q = move || rat(rng.gen_range(-30..=30), rng.gen_range(1..=9));
    let mut elem = move || HeisElement {
        a: (0..n).map(|_| q()).collect(),
        b: (0..n).map(|_| q()).collect(),
        c: q(),
    };
    (0..count).map(|_| (elem(), elem(), elem())).collect()
}

pub fn gram_of_frame(n: usize) -> Result<PolyMatrix> {
    let h = HeisChart::new(n)?;
    Ok(gram_matrix(&h.metric_h()?, &h.right_frame()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_pass;

    fn q(v: i64) -> Rational {
        int(v)
    }

    #[test]
    fn product_example() {
        let g = HeisElement::new(vec![q(1)], vec![q(2)], q(0)).unwrap();
        let h = HeisElement::new(vec![q(3)], vec![q(4)], q(0)).unwrap();
        let gh = g.multiply(&h).unwrap();
        assert_eq!(gh, HeisElement::new(vec![q(4)], vec![q(6)], q(4)).unwrap());
        assert!(g.multiply(&HeisElement::identity(2)).is_err());
    }

    #[test]
    fn exp_example() {
        let x = HeisAlgElement::new(vec![q(2)], vec![q(3)], q(0)).unwrap();
        assert_eq!(x.exp().c, q(3));
        assert_eq!(HeisAlgElement::new(vec![q(0)], vec![q(0)], q(0)).unwrap().exp(), HeisElement::identity(1));
    }

    #[test]
    fn chi_example() {
        let g = HeisElement::new(vec![q(1), q(2)], vec![q(3), q(4)], q(5)).unwrap();
        assert_eq!(chi(&g), vec![q(-5), q(3), q(4), q(1), q(2)]);
        assert_eq!(chi_inv(&chi(&g)).unwrap(), g);
    }

    #[test]
    fn json_round_trip() {
        let g = HeisElement::new(vec![rat(1, 2)], vec![q(-3)], rat(7, 3)).unwrap();
        let v = g.to_json();
        assert_eq!(v, json!({"a": ["1/2"], "b": ["-3"], "c": "7/3"}));
        assert_eq!(HeisElement::from_json(&v).unwrap(), g);
        assert!(HeisElement::from_json(&json!({"a": ["1"], "b": [], "c": "0"})).is_err());
    }

    #[test]
    fn sampled_group_checks() {
        for n in 1..=3 {
            let r = group_checks(&sample_elements(n, 40, n as u64)).unwrap();
            assert!(all_pass(&r), "{r:#?}");
        }
    }

    #[test]
    fn invariant_fields() {
        for n in 1..=2 {
            let r = invariant_fields_and_checks(n).unwrap();
            assert!(all_pass(&r), "{r:#?}");
        }
        let g = gram_of_frame(1).unwrap();
        assert_eq!(g.to_text_rows(), vec![vec!["1", "0", "0"], vec!["0", "0", "1"], vec!["0", "1", "0"]]);
    }
}
