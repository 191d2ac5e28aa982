//! Verification suites: one function per acceptance criterion, the grouped
//! `verify-all` run, and the tampered-metric negative control.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::diffgeo::{
    christoffel, curvature_from_table, killing_solve, riemann_transform, sectional, sectional_parts, span_equal,
    trace_form, ChristoffelTable, MetricSpec, VectorFieldSym,
};
use crate::error::{GeoError, Result};
use crate::exactalg::{int, rat, rational, LaurentPoly, Rational};
use crate::report::ClaimResult;
use crate::sympl::{self, Sympl};
use crate::tps::{self, Tps};
use crate::{heisenberg, legendre};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Tps,
    Sympl,
}

impl Space {
    pub fn max_n(self) -> usize {
        match self {
            Space::Tps => 4,
            Space::Sympl => 3,
        }
    }

    pub fn algebra_dim(self, n: usize) -> usize {
        match self {
            Space::Tps => n * n + 2 * n + 1,
            Space::Sympl => (n + 2) * (n + 2) - 1,
        }
    }
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Rational points in `dim` coordinates with nonzero entries.
pub fn rational_points(dim: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    let num: i64 = rng.gen_range(1..=25) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    rat(num, rng.gen_range(1..=9))
                })
                .collect()
        })
        .collect()
}

/// The Mrugala metric with the sign of `G_00` flipped.
pub fn tampered_metric(t: &Tps) -> Result<MetricSpec> {
    let mut g = t.metric_matrix();
    let flipped = -g.get(0, 0).clone();
    g.set(0, 0, flipped);
    MetricSpec::new("tampered", g)
}

pub fn det_tps(n: usize) -> Result<ClaimResult> {
    let t = Tps::new(n)?;
    let d = t.metric_matrix().det()?;
    Ok(ClaimResult::exact(
        format!("det G = (-1)^n, n = {n}"),
        "mrugala/determinant",
        d == LaurentPoly::int(t.ring(), sign(n)),
        json!(d.to_string()),
    ))
}

pub fn det_sympl(n: usize) -> Result<ClaimResult> {
    let s = Sympl::new(n)?;
    let d = s.metric_matrix().det()?;
    Ok(ClaimResult::exact(
        format!("det G~ = (-1)^(n+1), n = {n}"),
        "symplectization/determinant",
        d == LaurentPoly::int(s.ring(), sign(n + 1)),
        json!(d.to_string()),
    ))
}

fn christoffel_claim(label: &str, anchor: &str, table: &ChristoffelTable, expected: &[(usize, usize, usize, LaurentPoly)]) -> ClaimResult {
    let (ok, diffs) = tps::christoffel_matches(table, expected);
    ClaimResult::exact(
        label.to_string(),
        anchor,
        ok,
        if ok { json!({"nonzero": table.nonzero().len()}) } else { json!(diffs) },
    )
}

/// Frame element of `P`: `xi`, `P_i` or `X_i` (1-based index).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameVec {
    Xi,
    P(usize),
    X(usize),
}

impl FrameVec {
    fn field(self, t: &Tps) -> VectorFieldSym {
        match self {
            FrameVec::Xi => t.xi(),
            FrameVec::P(i) => t.pf(i),
            FrameVec::X(i) => t.xf(i),
        }
    }

    fn label(self) -> String {
        match self {
            FrameVec::Xi => "xi".into(),
            FrameVec::P(i) => format!("P{i}"),
            FrameVec::X(i) => format!("X{i}"),
        }
    }

    pub fn all(n: usize) -> Vec<FrameVec> {
        let mut v = vec![FrameVec::Xi];
        v.extend((1..=n).map(FrameVec::P));
        v.extend((1..=n).map(FrameVec::X));
        v
    }
}

fn delta(i: usize, j: usize) -> Rational {
    if i == j {
        int(1)
    } else {
        int(0)
    }
}

/// The curvature transformation table `R(A, B) C` on the frame.
pub fn expected_curvature_action(t: &Tps, a: FrameVec, b: FrameVec, c: FrameVec) -> VectorFieldSym {
    use FrameVec::*;
    let zero = VectorFieldSym::zero(t.ring(), t.dim());
    let q = rat(1, 4);
    let h = rat(1, 2);
    match (a, b) {
        (Xi, Xi) => zero,
        (Xi, P(i)) => match c {
            Xi => t.pf(i).scale(&q),
            P(_) => zero,
            X(j) => t.xi().scale(&(-&q * delta(i, j))),
        },
        (Xi, X(i)) => match c {
            Xi => t.xf(i).scale(&q),
            P(j) => t.xi().scale(&(-&q * delta(i, j))),
            X(_) => zero,
        },
        (P(i), P(j)) => match c {
            X(k) => t.pf(j).scale(&(&q * delta(i, k))).sub(&t.pf(i).scale(&(&q * delta(j, k)))),
            _ => zero,
        },
        (P(i), X(j)) => match c {
            Xi => zero,
            P(k) => t.pf(i).scale(&(&q * delta(j, k))).add(&t.pf(k).scale(&(&h * delta(i, j)))),
            X(k) => t.xf(j).scale(&(-&q * delta(i, k))).sub(&t.xf(k).scale(&(&h * delta(i, j)))),
        },
        (X(i), X(j)) => match c {
            P(k) => t.xf(j).scale(&(&q * delta(i, k))).sub(&t.xf(i).scale(&(&q * delta(j, k)))),
            _ => zero,
        },
        (x, y) => expected_curvature_action(t, y, x, c).neg(),
    }
}

fn curvature_table_claim(t: &Tps, table: &ChristoffelTable) -> ClaimResult {
    let frame = FrameVec::all(t.n);
    let mut bad = Vec::new();
    let mut checked = 0usize;
    for &a in &frame {
        for &b in &frame {
            for &c in &frame {
                let got = riemann_transform(table, &a.field(t), &b.field(t), &c.field(t));
                checked += 1;
                if got != expected_curvature_action(t, a, b, c) {
                    bad.push(json!({
                        "R": format!("R({},{}){}", a.label(), b.label(), c.label()),
                        "computed": got.to_json(),
                    }));
                }
            }
        }
    }
    ClaimResult::exact(
        format!("curvature transformation table on all frame triples, n = {}", t.n),
        "levi-civita/curvature-table",
        bad.is_empty(),
        if bad.is_empty() { json!({"triples": checked}) } else { json!(bad) },
    )
}

/// Christoffel, trace form, Ricci, scalar and the curvature table of `metric`
/// compared with the closed forms for the Mrugala metric.
pub fn tps_curvature_with(t: &Tps, metric: &MetricSpec) -> Result<Vec<ClaimResult>> {
    let n = t.n;
    let table = christoffel(metric);
    let mut out = vec![christoffel_claim(
        &format!("Christoffel symbols of G equal the seven-family table, n = {n}"),
        "levi-civita/christoffel-table",
        &table,
        &tps::expected_christoffel_tps(t),
    )];
    let tr = trace_form(&table);
    out.push(ClaimResult::exact(
        format!("trace form Gamma^b_ab = 0, n = {n}"),
        "levi-civita/trace-form",
        tr.iter().all(|c| c.is_zero()),
        json!(tr.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
    ));
    let curv = curvature_from_table(metric, &table);
    out.push(ClaimResult::exact(
        format!("Ricci tensor of G equals the closed form, n = {n}"),
        "curvature/ricci",
        curv.ricci == tps::expected_ricci_tps(t) && curv.ricci == curv.ricci_contracted,
        json!(curv.ricci.to_text_rows()),
    ));
    let scalar = curv.scalar_constant();
    out.push(ClaimResult::exact(
        format!("scalar curvature of G = n/2, n = {n}"),
        "curvature/scalar",
        scalar == Some(rat(n as i64, 2)),
        json!({"scalar": scalar.map(|s| rational::to_text(&s)).unwrap_or_else(|| curv.scalar.to_string())}),
    ));
    out.push(curvature_table_claim(t, &table));
    Ok(out)
}

pub fn tps_curvature(n: usize) -> Result<Vec<ClaimResult>> {
    let t = Tps::new(n)?;
    tps_curvature_with(&t, &t.metric()?)
}

/// Sectional curvatures on coordinate planes at random rational points.
pub fn tps_sectional(n: usize, points: usize, seed: u64) -> Result<Vec<ClaimResult>> {
    let t = Tps::new(n)?;
    let m = t.metric()?;
    let table = christoffel(&m);
    let pts = rational_points(t.dim(), points, seed);
    let mut out = Vec::new();

    let mut bad = Vec::new();
    for i in 1..=n {
        let (a, b) = (t.pf(i), t.dxf(i));
        for p in &pts {
            let k = sectional(&m, &table, p, &a, &b)?;
            if k != rat(3, 4) {
                bad.push(json!({"i": i, "value": rational::to_text(&k)}));
            }
        }
    }
    out.push(ClaimResult::exact(
        format!("K(P_i, d/dx^i) = 3/4 at {points} random points, n = {n}"),
        "sectional/p-x-plane",
        bad.is_empty(),
        if bad.is_empty() { json!({"value": "3/4"}) } else { json!(bad) },
    ));

    // the four "zero" planes are null planes: numerator and |A^B|^2 both vanish
    let mut planes: Vec<(String, VectorFieldSym, VectorFieldSym)> = Vec::new();
    for i in 1..=n {
        planes.push((format!("(xi,P{i})"), t.xi(), t.pf(i)));
        planes.push((format!("(xi,d/dx{i})"), t.xi(), t.dxf(i)));
        for j in 1..=n {
            if i != j {
                planes.push((format!("(P{i},P{j})"), t.pf(i), t.pf(j)));
                planes.push((format!("(d/dx{i},d/dx{j})"), t.dxf(i), t.dxf(j)));
            }
        }
    }
    let mut bad = Vec::new();
    for (label, a, b) in &planes {
        for p in pts.iter().take(10) {
            let parts = sectional_parts(&m, &table, p, a, b)?;
            let err = sectional(&m, &table, p, a, b);
            let zero_num = num::Zero::is_zero(&parts.numerator);
            let zero_den = num::Zero::is_zero(&parts.denominator);
            if !(zero_num && zero_den && matches!(err, Err(GeoError::DegeneratePlane { .. }))) {
                bad.push(json!({"plane": label, "numerator": rational::to_text(&parts.numerator),
                                "denominator": rational::to_text(&parts.denominator)}));
            }
        }
    }
    out.push(ClaimResult::exact(
        format!("zero cases (xi,P), (xi,d/dx), (P,P), (d/dx,d/dx): numerator 0 on a null plane, n = {n}"),
        "sectional/zero-cases",
        bad.is_empty(),
        if bad.is_empty() { json!({"planes": planes.len(), "numerator": "0", "abs_wedge_sq": "0"}) } else { json!(bad) },
    ));

    if n >= 2 {
        let mut ok = true;
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    ok &= matches!(sectional(&m, &table, &pts[0], &t.pf(i), &t.dxf(j)), Err(GeoError::DegeneratePlane { .. }));
                }
            }
        }
        out.push(ClaimResult::exact(
            format!("(P_i, d/dx^j), i != j is a degenerate plane, n = {n}"),
            "sectional/degenerate",
            ok,
            json!("degenerate plane error"),
        ));
    }
    Ok(out)
}

pub struct KillingReport {
    pub dimension: usize,
    pub expected: usize,
    pub results: Vec<ClaimResult>,
}

pub fn killing_report(space: Space, n: usize, degree: u32) -> Result<KillingReport> {
    if degree == 0 {
        return Err(GeoError::Domain("degree must be at least 1".into()));
    }
    let expected = space.algebra_dim(n);
    let mut results = Vec::new();
    let (sol, catalog, anchor) = match space {
        Space::Tps => {
            let t = Tps::new(n)?;
            let sol = killing_solve(&t.metric()?, degree);
            let cat: Vec<VectorFieldSym> = tps::killing_catalog_tps(&t).into_iter().map(|c| c.field).collect();
            let (ok, _) = tps::catalog_structure_check(&t)?;
            results.push(ClaimResult::exact(
                "catalog brackets close with the expected structure constants",
                "killing/brackets",
                ok,
                Value::Null,
            ));
            (sol, cat, "killing/algebra")
        }
        Space::Sympl => {
            let s = Sympl::new(n)?;
            let sol = killing_solve(&s.metric()?, degree);
            let cat: Vec<VectorFieldSym> =
                sympl::killing_catalog_sympl(&s)?.into_iter().map(|c| c.field).collect();
            results.extend(sympl::catalog_checks(&s)?);
            results.extend(sympl::sl_isomorphism_check(&s)?);
            (sol, cat, "symplectization/killing")
        }
    };
    let dim = sol.dimension();
    results.insert(
        0,
        ClaimResult::exact(
            format!("Killing kernel dimension at degree {degree} = {expected}, n = {n}"),
            anchor,
            dim == expected,
            json!({"dimension": dim, "unknowns": sol.unknowns, "equations": sol.equations}),
        ),
    );
    results.insert(
        1,
        ClaimResult::exact(
            "kernel span equals the catalog span",
            anchor,
            span_equal(&sol.basis, &catalog),
            json!({"catalog_size": catalog.len()}),
        ),
    );
    Ok(KillingReport {
        dimension: dim,
        expected,
        results,
    })
}

/// Everything `curvature --space S --n N` reports.
pub fn curvature_suite(space: Space, n: usize) -> Result<Vec<ClaimResult>> {
    if n == 0 || n > space.max_n() {
        return Err(GeoError::Domain(format!("n must be in 1..={} for this space", space.max_n())));
    }
    Ok(match space {
        Space::Tps => {
            let mut r = vec![det_tps(n)?];
            r.extend(tps_curvature(n)?);
            r.extend(tps_sectional(n, 100, 4 + n as u64)?);
            r
        }
        Space::Sympl => {
            let mut r = vec![det_sympl(n)?];
            r.extend(sympl_curvature(n)?);
            r
        }
    })
}

/// Christoffel table, Einstein condition and the derived Einstein factor.
pub fn sympl_curvature(n: usize) -> Result<Vec<ClaimResult>> {
    let s = Sympl::new(n)?;
    let m = s.metric()?;
    let table = christoffel(&m);
    let mut out = vec![christoffel_claim(
        &format!("Christoffel symbols of G~ equal the closed-form table, n = {n}"),
        "symplectization/christoffel",
        &table,
        &sympl::expected_christoffel_sympl(&s),
    )];
    out.extend(sympl::einstein_check(&s)?);
    let curv = curvature_from_table(&m, &table);
    let mut factor = None;
    'find: for i in 0..s.dim() {
        for j in 0..s.dim() {
            let g = m.g().get(i, j);
            if !g.is_zero() {
                factor = curv.ricci.get(i, j).div_exact(g).ok().and_then(|q| q.as_constant());
                break 'find;
            }
        }
    }
    let ok = factor.as_ref().is_some_and(|c| curv.ricci.sub(&m.g().scale(c)).is_zero() && *c == rat(n as i64 + 2, 2));
    out.push(ClaimResult::exact(
        format!("Einstein factor c with Ric = c G~ is (n+2)/2, n = {n}"),
        "symplectization/einstein",
        ok,
        json!({"einstein_factor": factor.map(|c| rational::to_text(&c))}),
    ));
    Ok(out)
}

pub fn heisenberg_suite(n: usize, triples: usize) -> Result<Vec<ClaimResult>> {
    let mut out = heisenberg::group_checks(&heisenberg::sample_elements(n, triples, 40 + n as u64))?;
    out.extend(heisenberg::invariant_fields_and_checks(n)?);
    Ok(out)
}

pub fn projective_suite(n: usize) -> Result<Vec<ClaimResult>> {
    let mut out = sympl::hyperbolic_rotation(n)?;
    out.extend(sympl::projective_symbolic(n)?);
    out.push(sympl::projective_numeric(n, &sympl::sample_points(n, 50, 21))?);
    Ok(out)
}

/// Ideal-gas states on `pV = RT` with `R = 8314/1000` and one state off it.
pub fn ideal_gas_claims() -> Vec<ClaimResult> {
    let r = rat(8314, 1000);
    let states: Vec<(Rational, Rational, Rational)> = [(300, 2), (450, 5), (273, 1)]
        .iter()
        .map(|&(t, v)| {
            let t = int(t);
            let v = int(v);
            let p = &r * &t / &v;
            (t, p, v)
        })
        .collect();
    let on = sympl::ideal_gas_check(&r, &states);
    let off = sympl::ideal_gas_check(&r, &[(int(300), int(1), int(1))]);
    vec![
        on,
        ClaimResult::exact(
            "a state off pV = RT is rejected",
            "projectivization/ideal-gas",
            !off.passed(),
            off.witness,
        ),
    ]
}

/// Runs the Mrugala curvature suite on a metric with one flipped sign; the
/// claim passes when that produces at least one failure.
pub fn negative_control(n: usize) -> Result<Vec<ClaimResult>> {
    let t = Tps::new(n)?;
    let bad = tampered_metric(&t)?;
    let res = tps_curvature_with(&t, &bad)?;
    let fails: Vec<&ClaimResult> = res.iter().filter(|r| !r.passed()).collect();
    let witness = json!({
        "tampered_entry": "G[x0][x0] = -1",
        "failures": fails.len(),
        "failed_claims": fails.iter().map(|r| r.claim.clone()).collect::<Vec<_>>(),
        "first_witness": fails.first().map(|r| r.witness.clone()),
    });
    Ok(vec![ClaimResult::exact(
        format!("sign flip in G is detected by the curvature suites, n = {n}"),
        "plumbing",
        !fails.is_empty(),
        witness,
    )])
}

fn guard(label: &str, r: Result<Vec<ClaimResult>>) -> Vec<ClaimResult> {
    r.unwrap_or_else(|e| {
        vec![ClaimResult::exact(
            format!("{label}: suite error"),
            "plumbing",
            false,
            json!(e.to_string()),
        )]
    })
}

/// The claims behind acceptance criterion `k` (1..=11).
pub fn criterion(k: u8) -> Result<Vec<ClaimResult>> {
    let mut out = Vec::new();
    match k {
        1 => {
            for n in 1..=4 {
                out.push(det_tps(n)?);
            }
            for n in 1..=3 {
                out.push(det_sympl(n)?);
            }
        }
        2 => {
            for n in 1..=3 {
                let t = Tps::new(n)?;
                out.push(tps_curvature_with(&t, &t.metric()?)?.remove(0));
            }
            for n in 1..=2 {
                out.push(sympl_curvature(n)?.remove(0));
            }
        }
        3 => {
            for n in 1..=3 {
                out.extend(tps_curvature(n)?.into_iter().skip(1));
            }
        }
        4 => {
            for n in 1..=3 {
                out.extend(tps_sectional(n, 100, 4 + n as u64)?);
            }
        }
        5 => {
            for n in 1..=3 {
                out.extend(killing_report(Space::Tps, n, 2)?.results);
            }
        }
        6 => {
            for n in 1..=2 {
                out.extend(sympl_curvature(n)?.into_iter().skip(1));
                out.extend(killing_report(Space::Sympl, n, 2)?.results);
            }
        }
        7 => {
            for n in 1..=2 {
                out.extend(sympl::nijenhuis_check(n)?);
            }
        }
        8 => {
            for n in 1..=3 {
                out.extend(heisenberg_suite(n, 200)?);
            }
        }
        9 => out.extend(legendre::catalog_suite(100)?),
        10 => {
            for n in 1..=2 {
                out.extend(projective_suite(n)?);
            }
            out.extend(sympl::cell_checks(2)?);
            out.extend(ideal_gas_claims());
        }
        11 => {
            for n in 1..=2 {
                out.extend(negative_control(n)?);
            }
        }
        _ => return Err(GeoError::Domain(format!("no criterion {k}"))),
    }
    Ok(out)
}

pub const GROUPS: [&str; 6] = ["tps", "sympl", "heisenberg", "legendre", "projective", "negative-control"];

fn tps_group(n_max: usize) -> Result<Vec<ClaimResult>> {
    let mut out = Vec::new();
    for n in 1..=n_max.min(4) {
        out.push(det_tps(n)?);
    }
    for n in 1..=n_max.min(3) {
        let t = Tps::new(n)?;
        out.extend(tps_curvature_with(&t, &t.metric()?)?);
        out.extend(tps_sectional(n, 100, 4 + n as u64)?);
        out.extend(killing_report(Space::Tps, n, 2)?.results);
        out.extend(tps::compatibility_check(&t)?);
    }
    Ok(out)
}

fn sympl_group(n_max: usize) -> Result<Vec<ClaimResult>> {
    let mut out = Vec::new();
    for n in 1..=n_max.min(3) {
        out.push(det_sympl(n)?);
    }
    for n in 1..=n_max.min(2) {
        out.extend(sympl_curvature(n)?);
        out.extend(killing_report(Space::Sympl, n, 2)?.results);
        out.extend(sympl::nijenhuis_check(n)?);
        out.extend(sympl::embed_and_pullback(n)?);
        out.extend(sympl::frame_relations(&Sympl::new(n)?)?);
        out.extend(sympl::affine_symplecto(n)?);
    }
    Ok(out)
}

fn projective_group(n_max: usize) -> Result<Vec<ClaimResult>> {
    let mut out = Vec::new();
    for n in 1..=n_max.min(2) {
        out.extend(projective_suite(n)?);
    }
    out.extend(sympl::cell_checks(2)?);
    out.extend(ideal_gas_claims());
    for n in 1..=n_max.min(2) {
        let ((plus, minus, zero), ok) = sympl::quadric_signature(n)?;
        out.push(ClaimResult::exact(
            format!("quadric signature ({}, {}, 0), n = {n}", n + 1, n + 1),
            "projectivization/quadric",
            ok && (plus, minus, zero) == (n + 1, n + 1, 0),
            json!([plus, minus, zero]),
        ));
    }
    Ok(out)
}

pub fn run_group(name: &str, n_max: usize) -> Vec<ClaimResult> {
    let r = match name {
        "tps" => tps_group(n_max),
        "sympl" => sympl_group(n_max),
        "heisenberg" => (1..=n_max.min(3)).try_fold(Vec::new(), |mut acc, n| {
            acc.extend(heisenberg_suite(n, 200)?);
            Ok(acc)
        }),
        "legendre" => legendre::catalog_suite(100),
        "projective" => projective_group(n_max),
        "negative-control" => (1..=n_max.min(2)).try_fold(Vec::new(), |mut acc, n| {
            acc.extend(negative_control(n)?);
            Ok(acc)
        }),
        other => Err(GeoError::Domain(format!("unknown suite {other}"))),
    };
    guard(name, r)
}

/// Runs the selected groups in parallel; results keep the fixed group order.
pub fn verify_all(n_max: usize, only: &[String]) -> Vec<ClaimResult> {
    let selected: Vec<&str> = GROUPS
        .iter()
        .copied()
        .filter(|g| only.is_empty() || only.iter().any(|o| o == g))
        .collect();
    selected
        .par_iter()
        .map(|g| run_group(g, n_max))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_pass;

    #[test]
    fn curvature_table_n1() {
        let r = tps_curvature(1).unwrap();
        assert!(all_pass(&r), "{r:#?}");
    }

    #[test]
    fn sectional_n2() {
        let r = tps_sectional(2, 5, 1).unwrap();
        assert!(all_pass(&r), "{r:#?}");
        assert_eq!(r.len(), 3);
    }

    #[test]
    fn tamper_is_caught() {
        let r = negative_control(1).unwrap();
        assert!(all_pass(&r));
        assert!(r[0].witness["failures"].as_u64().unwrap() >= 1);
    }

    #[test]
    fn einstein_factor_reported() {
        let r = sympl_curvature(1).unwrap();
        assert!(all_pass(&r), "{r:#?}");
        assert_eq!(r.last().unwrap().witness["einstein_factor"], "3/2");
    }

    #[test]
    fn killing_dims() {
        assert_eq!(killing_report(Space::Tps, 2, 2).unwrap().dimension, 9);
        assert_eq!(killing_report(Space::Tps, 1, 3).unwrap().dimension, 4);
        assert_eq!(killing_report(Space::Sympl, 1, 2).unwrap().dimension, 8);
        assert!(killing_report(Space::Tps, 1, 0).is_err());
    }
}
