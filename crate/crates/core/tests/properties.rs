//! Property tests for the invariants: ring laws, exact linear algebra,
//! brackets and forms, Killing closure, jets and the Heisenberg group.

use proptest::prelude::*;

use tpsgeo::autodiff::{fd_oracle, seed_jets, DoubleDouble, Jet3, Real};
use tpsgeo::diffgeo::{bracket, is_killing, Form, VectorFieldSym};
use tpsgeo::exactalg::{kernel_exact, rat, LaurentPoly, PolyMatrix, QMatrix, Rational, Ring, RingRef};
use tpsgeo::heisenberg::{self, HeisAlgElement, HeisElement};
use tpsgeo::legendre::{self, PotentialModel};
use tpsgeo::tps::{self, Tps};
use tpsgeo::Result;

fn ring() -> RingRef {
    // a, b may carry negative exponents; c is polynomial
    Ring::new(&[("a", true), ("b", true), ("c", false)])
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-2i32..=2, -2i32..=2, 0i32..=2), small_rat()), 0..5).prop_map(|terms| {
        LaurentPoly::from_terms(&ring(), terms.into_iter().map(|((x, y, z), c)| (vec![x, y, z], c))).unwrap()
    })
}

// a point where every invertible symbol is nonzero
fn point() -> impl Strategy<Value = Vec<Rational>> {
    (nonzero_rat(), nonzero_rat(), small_rat()).prop_map(|(a, b, c)| vec![a, b, c])
}

fn same(p: &LaurentPoly, q: &LaurentPoly) -> bool {
    // compare on the common ring by subtraction, which is insensitive to ring identity
    (p - q).is_zero()
}

fn poly_in(r: &RingRef, dim: usize) -> impl Strategy<Value = LaurentPoly> {
    let r = r.clone();
    prop::collection::vec((prop::collection::vec(0i32..=2, dim), small_rat()), 0..4)
        .prop_map(move |terms| LaurentPoly::from_terms(&r, terms).unwrap())
}

fn field_in(r: &RingRef, dim: usize) -> impl Strategy<Value = VectorFieldSym> {
    prop::collection::vec(poly_in(r, dim), dim).prop_map(VectorFieldSym::new)
}

fn poly_ring3() -> RingRef {
    Ring::new(&[("u", false), ("v", false), ("w", false)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(f in poly(), g in poly(), h in poly()) {
        prop_assert!(same(&(&f + &g), &(&g + &f)));
        prop_assert!(same(&(&f * &g), &(&g * &f)));
        prop_assert!(same(&(&(&f * &g) * &h), &(&f * &(&g * &h))));
        prop_assert!(same(&(&f * &(&g + &h)), &(&(&f * &g) + &(&f * &h))));
        prop_assert!((&f - &f).is_zero());
        prop_assert!(same(&(&f * &LaurentPoly::one(&ring())), &f));
        // stored terms never carry zero coefficients
        prop_assert!((&f * &g).terms().values().all(|c| *c != rat(0, 1)));
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in poly(), g in poly(), pt in point()) {
        let (fv, gv) = (f.eval(&pt).unwrap(), g.eval(&pt).unwrap());
        prop_assert_eq!((&f * &g).eval(&pt).unwrap(), &fv * &gv);
        prop_assert_eq!((&f + &g).eval(&pt).unwrap(), &fv + &gv);
    }

    #[test]
    fn partials_obey_leibniz(f in poly(), g in poly(), i in 0usize..3) {
        let lhs = (&f * &g).partial(i);
        let rhs = &(&f.partial(i) * &g) + &(&f * &g.partial(i));
        prop_assert!(same(&lhs, &rhs));
        // mixed partials commute
        prop_assert!(same(&f.partial(0).partial(1), &f.partial(1).partial(0)));
    }

    #[test]
    fn det_is_multiplicative(a in prop::collection::vec(small_rat(), 9), b in prop::collection::vec(small_rat(), 9)) {
        let r = ring();
        let m = |v: &Vec<Rational>| PolyMatrix::from_fn(&r, 3, 3, |i, j| LaurentPoly::constant(&r, v[3 * i + j].clone()));
        let (ma, mb) = (m(&a), m(&b));
        let lhs = ma.mul(&mb).unwrap().det().unwrap();
        let rhs = &ma.det().unwrap() * &mb.det().unwrap();
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn symbolic_inverse_is_an_inverse(p in poly(), q in poly(), pt in point()) {
        // [[a, p], [0, b]] is invertible over Laurent polynomials for any p
        let r = ring();
        let mut m = PolyMatrix::identity(&r, 3);
        m.set(0, 0, r.var("a"));
        m.set(1, 1, r.var("b"));
        m.set(0, 1, p);
        m.set(1, 2, q);
        let inv = m.inverse_poly().unwrap();
        let prod = m.mul(&inv).unwrap().eval(&pt).unwrap();
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                prop_assert_eq!(x.clone(), rat((i == j) as i64, 1));
            }
        }
    }

    #[test]
    fn kernel_vectors_annihilate(rows in prop::collection::vec(prop::collection::vec(small_rat(), 5), 1..5)) {
        let m = QMatrix::from_dense(&rows, 5);
        let k = kernel_exact(&m);
        prop_assert_eq!(k.len() + m.rank(), 5);
        for v in &k {
            for row in &rows {
                let dot: Rational = row.iter().zip(v).map(|(a, b)| a * b).sum();
                prop_assert_eq!(dot, rat(0, 1));
            }
        }
    }

    #[test]
    fn bracket_is_a_lie_bracket(
        x in field_in(&poly_ring3(), 3),
        y in field_in(&poly_ring3(), 3),
        z in field_in(&poly_ring3(), 3),
        f in poly_in(&poly_ring3(), 3),
    ) {
        prop_assert!(bracket(&x, &y).add(&bracket(&y, &x)).is_zero());
        let jacobi = bracket(&x, &bracket(&y, &z))
            .add(&bracket(&y, &bracket(&z, &x)))
            .add(&bracket(&z, &bracket(&x, &y)));
        prop_assert!(jacobi.is_zero());
        // [X, Y] f = X(Y f) - Y(X f)
        let lhs = bracket(&x, &y).apply(&f);
        let rhs = &x.apply(&y.apply(&f)) - &y.apply(&x.apply(&f));
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn exterior_derivative_squares_to_zero(cs in prop::collection::vec(poly_in(&poly_ring3(), 3), 3), x in field_in(&poly_ring3(), 3)) {
        let w = Form::one_form(&cs);
        prop_assert!(w.d().d().is_zero());
        // Cartan: L_X w = i_X dw + d(i_X w)
        let cartan = w.d().interior(&x).add(&w.interior(&x).d());
        prop_assert!(w.lie_derivative(&x).sub(&cartan).is_zero());
    }

    #[test]
    fn catalog_combinations_are_killing(n in 1usize..=2, coeffs in prop::collection::vec(small_rat(), 9)) {
        let t = Tps::new(n).unwrap();
        let m = t.metric().unwrap();
        let cat = tps::killing_catalog_tps(&t);
        let mut v = VectorFieldSym::zero(t.ring(), t.dim());
        for (c, f) in coeffs.iter().zip(&cat) {
            v = v.add(&f.field.scale(c));
        }
        prop_assert!(is_killing(&m, &v));
        // so is their bracket with any catalog member
        prop_assert!(is_killing(&m, &bracket(&v, &cat[0].field)));
    }

    #[test]
    fn metric_frame_gram_is_constant(n in 1usize..=3, pt in prop::collection::vec(nonzero_rat(), 7)) {
        let t = Tps::new(n).unwrap();
        let m = t.metric().unwrap();
        let frame = t.frame();
        let pt = &pt[..t.dim()];
        for (i, a) in frame.iter().enumerate() {
            for (j, b) in frame.iter().enumerate() {
                let g = m.inner(a, b);
                prop_assert!(g.is_constant());
                prop_assert_eq!(g.eval(pt).unwrap(), m.inner(b, a).eval(pt).unwrap());
                // xi unit, P_i and X_i paired with weight 1, everything else orthogonal
                let expect = if i == 0 && j == 0 {
                    1
                } else if i > 0 && j > 0 && i != j && (i as i64 - j as i64).unsigned_abs() as usize == n {
                    1
                } else {
                    0
                };
                prop_assert_eq!(g.eval(pt).unwrap(), rat(expect, 1));
            }
        }
    }
}

fn heis_element(n: usize) -> impl Strategy<Value = HeisElement> {
    (prop::collection::vec(small_rat(), n), prop::collection::vec(small_rat(), n), small_rat())
        .prop_map(|(a, b, c)| HeisElement::new(a, b, c).unwrap())
}

fn heis_triple() -> impl Strategy<Value = (HeisElement, HeisElement, HeisElement)> {
    (1usize..=3).prop_flat_map(|n| (heis_element(n), heis_element(n), heis_element(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn heisenberg_group_axioms((g, h, k) in heis_triple()) {
        let n = g.n();
        let e = HeisElement::identity(n);
        let gh = g.multiply(&h).unwrap();
        prop_assert_eq!(gh.multiply(&k).unwrap(), g.multiply(&h.multiply(&k).unwrap()).unwrap());
        prop_assert_eq!(g.multiply(&e).unwrap(), g.clone());
        prop_assert_eq!(g.multiply(&g.inverse()).unwrap(), e.clone());
        // the product agrees with matrix multiplication
        prop_assert_eq!(gh.to_matrix(), heisenberg::matmul(&g.to_matrix(), &h.to_matrix()));
        prop_assert_eq!(HeisElement::from_matrix(&g.to_matrix()).unwrap(), g.clone());
        // exp and log are inverse; exp equals the truncated series
        prop_assert_eq!(g.log().exp(), g.clone());
        let x: HeisAlgElement = g.log();
        prop_assert_eq!(x.exp().to_matrix(), x.exp_series());
        // the left action is the group law read through the chart
        let pt = heisenberg::chi(&h);
        prop_assert_eq!(heisenberg::left_action(&g, &pt).unwrap(), heisenberg::chi(&gh));
        prop_assert_eq!(heisenberg::left_action_closed(&g, &pt), heisenberg::chi(&gh));
        prop_assert_eq!(HeisElement::from_json(&g.to_json()).unwrap(), g);
    }
}

// A smooth test function built only from the Real operations.
fn wobble<R: Real>(x: &[R]) -> Result<R> {
    let a = x[0].mul(&x[1]).exp();
    let b = x[2].mul(&x[2]).add_c(2.0).ln()?;
    let c = x[0].mul(&x[0]).add_c(1.0);
    let d = x[1].add_c(3.0).powf(1.5)?;
    Ok(a.mul(&b).div(&c)?.add(&d.mul(&x[2])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn jet_derivatives_are_symmetric(p in prop::collection::vec(-1.0f64..1.0, 3)) {
        let j: Jet3 = wobble(&seed_jets(&p)).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                prop_assert_eq!(j.hess(a, b).to_bits(), j.hess(b, a).to_bits());
                for c in 0..3 {
                    let t = j.third(a, b, c).to_bits();
                    prop_assert_eq!(t, j.third(b, a, c).to_bits());
                    prop_assert_eq!(t, j.third(c, b, a).to_bits());
                    prop_assert_eq!(t, j.third(a, c, b).to_bits());
                }
            }
        }
        // the jet composes through derivative tuples, so the value may differ in the last ulp
        let v = wobble(&p).unwrap();
        prop_assert!((j.value - v).abs() <= 1e-14 * v.abs().max(1.0));
    }

    #[test]
    fn jet_matches_finite_differences(p in prop::collection::vec(-1.0f64..1.0, 3)) {
        let j: Jet3 = wobble(&seed_jets(&p)).unwrap();
        let f = |x: &[DoubleDouble]| wobble(x);
        let close = |got: f64, multi: [usize; 3]| -> std::result::Result<(), TestCaseError> {
            let est = fd_oracle(&f, &p, &multi).unwrap();
            let tol = 1e-7 * est.estimate.abs().max(1.0);
            prop_assert!((got - est.estimate).abs() < tol, "{multi:?}: jet {got} oracle {}", est.estimate);
            Ok(())
        };
        for a in 0..3 {
            let mut m = [0; 3];
            m[a] += 1;
            close(j.grad[a], m)?;
            for b in a..3 {
                let mut m2 = m;
                m2[b] += 1;
                close(j.hess(a, b), m2)?;
                for c in b..3 {
                    let mut m3 = m2;
                    m3[c] += 1;
                    close(j.third(a, b, c), m3)?;
                }
            }
        }
    }

    #[test]
    fn legendre_surfaces_kill_theta(q in prop::collection::vec(-3.0f64..3.0, 3), p in prop::collection::vec(-2.0f64..2.0, 2), part in 0usize..3) {
        let m = PotentialModel::quadratic(vec![vec![q[0], q[1]], vec![q[1], q[2]]]);
        let i_set: Vec<usize> = match part { 0 => vec![], 1 => vec![1], _ => vec![1, 2] };
        let m = m.with_partition(&i_set).unwrap();
        if let Ok(sp) = legendre::surface_point(&m, &p) {
            prop_assert!(sp.theta_residual < 1e-12);
        }
        let vdw = legendre::catalog().remove(0);
        let base = vec![0.5 + (p[0] + 2.0) / 3.0, 1.5 + (p[1] + 2.0) / 3.0];
        let sp = legendre::surface_point(&vdw, &base).unwrap();
        prop_assert!(sp.theta_residual < 1e-12);
        let im = legendre::induced_metric(&vdw, &base).unwrap();
        prop_assert!(im.max_route_diff < 1e-10);
        prop_assert!(im.factor_two_ok);
    }
}
