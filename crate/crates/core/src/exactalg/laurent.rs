//! Multivariate Laurent polynomials with exact rational coefficients.
//!
//! Negative exponents are allowed only on symbols flagged invertible.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{self, Rational};
use crate::error::{GeoError, Result};

/// Ordered symbol list shared by all polynomials of one chart.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    names: Vec<String>,
    invertible: Vec<bool>,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[(S, bool)]) -> RingRef {
        Arc::new(Ring {
            names: vars.iter().map(|(s, _)| s.as_ref().to_string()).collect(),
            invertible: vars.iter().map(|(_, b)| *b).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_invertible(&self, i: usize) -> bool {
        self.invertible[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    pub fn var(self: &Arc<Self>, name: &str) -> LaurentPoly {
        let i = self
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown symbol {name}"));
        LaurentPoly::var(self, i)
    }

    /// Union ring: own symbols first, then the other ring's new symbols.
    pub fn union(self: &Arc<Self>, other: &Arc<Self>) -> Result<RingRef> {
        if Arc::ptr_eq(self, other) || **self == **other {
            return Ok(self.clone());
        }
        let mut names = self.names.clone();
        let mut inv = self.invertible.clone();
        for (i, s) in other.names.iter().enumerate() {
            match self.index_of(s) {
                Some(j) => {
                    if inv[j] != other.invertible[i] {
                        return Err(GeoError::Domain(format!(
                            "symbol {s} has conflicting invertibility"
                        )));
                    }
                }
                None => {
                    names.push(s.clone());
                    inv.push(other.invertible[i]);
                }
            }
        }
        Ok(Arc::new(Ring {
            names,
            invertible: inv,
        }))
    }
}

pub type Exponents = Vec<i32>;

#[derive(Clone, Debug)]
pub struct LaurentPoly {
    ring: RingRef,
    terms: BTreeMap<Exponents, Rational>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring)
            && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl LaurentPoly {
    pub fn zero(ring: &RingRef) -> Self {
        LaurentPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(vec![0; ring.len()], c);
        p
    }

    pub fn int(ring: &RingRef, c: i64) -> Self {
        Self::constant(ring, rational::int(c))
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::int(ring, 1)
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        let mut e = vec![0; ring.len()];
        e[i] = 1;
        let mut p = Self::zero(ring);
        p.add_term(e, rational::one());
        p
    }

    pub fn monomial(ring: &RingRef, exps: Exponents, coeff: Rational) -> Result<Self> {
        check_exponents(ring, &exps)?;
        let mut p = Self::zero(ring);
        p.add_term(exps, coeff);
        Ok(p)
    }

    pub fn from_terms<I>(ring: &RingRef, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            check_exponents(ring, &e)?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// `var^k`, `k` may be negative for invertible symbols.
    pub fn var_pow(ring: &RingRef, i: usize, k: i32) -> Result<Self> {
        let mut e = vec![0; ring.len()];
        e[i] = k;
        Self::monomial(ring, e, rational::one())
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Rational> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&k| k == 0))
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(rational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Lexicographically largest exponent tuple and its coefficient.
    pub fn leading(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        LaurentPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn coeff(&self, e: &[i32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(rational::zero)
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        if k < 0 {
            return self.inv_monomial()?.pow(-k);
        }
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        Ok(acc)
    }

    /// Inverse of a single-term polynomial whose symbols are all invertible.
    pub fn inv_monomial(&self) -> Result<Self> {
        if !self.is_monomial() {
            return Err(GeoError::Domain(format!("cannot invert non-monomial {self}")));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let ne: Exponents = e.iter().map(|k| -k).collect();
        check_exponents(&self.ring, &ne)?;
        Self::monomial(&self.ring, ne, c.recip())
    }

    /// Partial derivative with respect to the symbol at index `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            let k = e[i];
            if k == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(ne, c * rational::int(k as i64));
        }
        out
    }

    pub fn partial_by_name(&self, name: &str) -> Result<Self> {
        let i = self
            .ring
            .index_of(name)
            .ok_or_else(|| GeoError::Domain(format!("unknown symbol {name}")))?;
        Ok(self.partial(i))
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ring.len() {
            return Err(GeoError::DimensionMismatch {
                expected: self.ring.len(),
                got: point.len(),
            });
        }
        let mut acc = rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, x) in e.iter().zip(point) {
                if *k == 0 {
                    continue;
                }
                if *k < 0 && x.is_zero() {
                    return Err(GeoError::Domain("negative power of zero".into()));
                }
                t *= num::pow::Pow::pow(x, *k);
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = rational::to_f64(c);
                for (k, x) in e.iter().zip(point) {
                    if *k != 0 {
                        t *= x.powi(*k);
                    }
                }
                t
            })
            .sum()
    }

    /// Substitute symbol `i` by `images[i]`; all images share one target ring.
    /// A negative power requires a monomial image.
    pub fn substitute(&self, images: &[LaurentPoly]) -> Result<LaurentPoly> {
        if images.len() != self.ring.len() {
            return Err(GeoError::DimensionMismatch {
                expected: self.ring.len(),
                got: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => {
                return Ok(LaurentPoly {
                    ring: self.ring.clone(),
                    terms: self.terms.clone(),
                })
            }
        };
        let mut cache: BTreeMap<(usize, i32), LaurentPoly> = BTreeMap::new();
        let mut out = LaurentPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut t = LaurentPoly::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let f = match cache.get(&(i, k)) {
                    Some(f) => f.clone(),
                    None => {
                        let f = images[i].pow(k)?;
                        cache.insert((i, k), f.clone());
                        f
                    }
                };
                t = &t * &f;
            }
            out += &t;
        }
        Ok(out)
    }

    /// Re-express in a ring containing all of this polynomial's symbols.
    pub fn align(&self, target: &RingRef) -> Result<LaurentPoly> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        let map: Vec<usize> = (0..self.ring.len())
            .map(|i| {
                target.index_of(self.ring.name(i)).ok_or_else(|| {
                    GeoError::Domain(format!("symbol {} missing in target", self.ring.name(i)))
                })
            })
            .collect::<Result<_>>()?;
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, k) in e.iter().enumerate() {
                ne[map[i]] = *k;
            }
            check_exponents(target, &ne)?;
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Exact quotient `self / d`; fails when `d` does not divide.
    pub fn div_exact(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        assert!(same_ring(&self.ring, &d.ring), "ring mismatch");
        if d.is_zero() {
            return Err(GeoError::Domain("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        if d.is_monomial() {
            if let Ok(inv) = d.inv_monomial() {
                return Ok(self * &inv);
            }
        }
        let nv = self.ring.len();
        let bound = |p: &LaurentPoly| {
            let mut lo = vec![i32::MAX; nv];
            let mut hi = vec![i32::MIN; nv];
            for e in p.terms.keys() {
                for i in 0..nv {
                    lo[i] = lo[i].min(e[i]);
                    hi[i] = hi[i].max(e[i]);
                }
            }
            (lo, hi)
        };
        let (plo, phi) = bound(self);
        let (dlo, dhi) = bound(d);
        let (dle, dlc) = d.leading().unwrap();
        let not_div = || GeoError::Domain("inexact polynomial division".into());
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.ring);
        while let Some((re, rc)) = rem.leading() {
            let qe: Exponents = re.iter().zip(dle).map(|(a, b)| a - b).collect();
            for i in 0..nv {
                if qe[i] < plo[i] - dhi[i] || qe[i] > phi[i] - dlo[i] {
                    return Err(not_div());
                }
                if qe[i] < 0 && !self.ring.is_invertible(i) {
                    return Err(not_div());
                }
            }
            let qc = rc / dlc;
            let mut t = Self::zero(&self.ring);
            t.add_term(qe, qc);
            rem -= &(&t * d);
            quot += &t;
        }
        Ok(quot)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        let mut out = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| {
                    serde_json::json!({ "exponents": e, "coeff": rational::to_text(c) })
                })
                .collect(),
        )
    }

    pub fn from_json(ring: &RingRef, v: &serde_json::Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| GeoError::Parse("polynomial must be a list of terms".into()))?;
        let mut p = Self::zero(ring);
        for t in arr {
            let e: Exponents = serde_json::from_value(t["exponents"].clone())
                .map_err(|e| GeoError::Parse(e.to_string()))?;
            if e.len() != ring.len() {
                return Err(GeoError::DimensionMismatch {
                    expected: ring.len(),
                    got: e.len(),
                });
            }
            let c = rational::parse(
                t["coeff"]
                    .as_str()
                    .ok_or_else(|| GeoError::Parse("coeff must be a string".into()))?,
            )?;
            check_exponents(ring, &e)?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

fn check_exponents(ring: &RingRef, e: &[i32]) -> Result<()> {
    if e.len() != ring.len() {
        return Err(GeoError::DimensionMismatch {
            expected: ring.len(),
            got: e.len(),
        });
    }
    for (i, &k) in e.iter().enumerate() {
        if k < 0 && !ring.is_invertible(i) {
            return Err(GeoError::Domain(format!(
                "negative exponent on non-invertible symbol {}",
                ring.name(i)
            )));
        }
    }
    Ok(())
}

/// Fallible arithmetic with name-based alignment of differing rings.
pub fn poly_arith(a: &LaurentPoly, b: &LaurentPoly, op: PolyOp) -> Result<LaurentPoly> {
    let ring = a.ring.union(&b.ring)?;
    let a = a.align(&ring)?;
    let b = b.align(&ring)?;
    Ok(match op {
        PolyOp::Add => &a + &b,
        PolyOp::Sub => &a - &b,
        PolyOp::Mul => &a * &b,
    })
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c.clone());
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch");
        let mut out = LaurentPoly::zero(&self.ring);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Mul<&Rational> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &Rational) -> LaurentPoly {
        self.scale(rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.map_coeffs(|c| -c.clone())
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k != 0)
                .map(|(i, k)| {
                    if *k == 1 {
                        self.ring.name(i).to_string()
                    } else {
                        format!("{}^{}", self.ring.name(i), k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", rational::to_text(&a))?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", rational::to_text(&a), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    fn ring() -> RingRef {
        Ring::new(&[("p1", true), ("p2", true), ("x1", false)])
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let p = r.var("p1");
        let x = r.var("x1");
        let lhs = &(&p + &x) * &(&p - &x);
        let rhs = &(&p * &p) - &(&x * &x);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn invertible_symbol_cancels() {
        let r = ring();
        let p = r.var("p1");
        let pinv = LaurentPoly::var_pow(&r, 0, -1).unwrap();
        assert_eq!(&p * &pinv, LaurentPoly::one(&r));
    }

    #[test]
    fn additive_identity() {
        let r = ring();
        let pp = &r.var("p1") * &r.var("p2");
        assert_eq!(&pp + &LaurentPoly::zero(&r), pp);
    }

    #[test]
    fn negative_exponent_on_plain_symbol_rejected() {
        let r = ring();
        assert!(LaurentPoly::var_pow(&r, 2, -1).is_err());
        assert!(r.var("x1").inv_monomial().is_err());
    }

    #[test]
    fn partial_rules() {
        let r = ring();
        let p1 = r.var("p1");
        let p2 = r.var("p2");
        assert_eq!((&p1 * &p2).partial(0), p2);
        assert!(LaurentPoly::int(&r, 7).partial(1).is_zero());
        let inv = LaurentPoly::var_pow(&r, 0, -1).unwrap();
        let want = -LaurentPoly::var_pow(&r, 0, -2).unwrap();
        assert_eq!(inv.partial(0), want);
        assert!(p1.partial_by_name("y").is_err());
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let p = r.var("p1");
        let x = r.var("x1");
        let a = &(&p + &x) * &(&(&p * &p) - &LaurentPoly::int(&r, 3));
        assert_eq!(a.div_exact(&(&p + &x)).unwrap(), &(&p * &p) - &LaurentPoly::int(&r, 3));
        assert!(a.div_exact(&(&p - &x)).is_err());
        let lp = LaurentPoly::var_pow(&r, 0, -2).unwrap();
        let b = &lp * &(&p + &x);
        assert_eq!(b.div_exact(&(&p + &x)).unwrap(), lp);
    }

    #[test]
    fn substitution_and_alignment() {
        let r = ring();
        let s = Ring::new(&[("lam", true), ("p1", true), ("p2", true), ("x1", false)]);
        let lam = s.var("lam");
        let imgs = vec![
            &lam * &s.var("p1"),
            &lam * &s.var("p2"),
            &lam.inv_monomial().unwrap() * &s.var("x1"),
        ];
        let f = &r.var("p1") * &r.var("x1");
        assert_eq!(f.substitute(&imgs).unwrap(), f.align(&s).unwrap());
        let inv = LaurentPoly::var_pow(&r, 0, -1).unwrap();
        let bad = vec![&s.var("p1") + &s.var("p2"), s.var("p2"), s.var("x1")];
        assert!(inv.substitute(&bad).is_err());
    }

    #[test]
    fn poly_arith_aligns_by_name() {
        let a = Ring::new(&[("p1", true)]);
        let b = Ring::new(&[("x1", false), ("p1", true)]);
        let s = poly_arith(&a.var("p1"), &b.var("x1"), PolyOp::Mul).unwrap();
        assert_eq!(s.num_terms(), 1);
        assert_eq!(s.ring().len(), 2);
    }

    #[test]
    fn eval_and_display() {
        let r = ring();
        let f = &(&r.var("p1") * &r.var("x1")).scale(&rat(1, 2)) - &LaurentPoly::int(&r, 2);
        assert_eq!(f.eval(&[int(2), int(5), int(3)]).unwrap(), int(1));
        assert_eq!(f.to_string(), "1/2*p1*x1 - 2");
        let g = LaurentPoly::var_pow(&r, 0, -1).unwrap();
        assert!(g.eval(&[int(0), int(1), int(1)]).is_err());
        let js = f.to_json();
        assert_eq!(LaurentPoly::from_json(&r, &js).unwrap(), f);
    }
}
