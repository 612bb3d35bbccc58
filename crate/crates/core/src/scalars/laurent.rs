//! Sparse Laurent polynomials in `t, s, r` over the Gaussian rationals, with
//! exact division and a multivariate gcd (recursive primitive PRS).
//!
//! Monomials are units in the Laurent ring, so "gcd" here means the gcd of
//! the polynomial parts with all monomial content stripped, made monic with
//! respect to the lexicographic order on `(e_t, e_s, e_r)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::gauss::GaussianRational;

pub type Exps = [i32; 3];

pub const VAR_NAMES: [&str; 3] = ["t", "s", "r"];

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exps, GaussianRational>,
}

fn add_exps(a: &Exps, b: &Exps) -> Exps {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub_exps(a: &Exps, b: &Exps) -> Exps {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn monomial(e: Exps, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// The variable with index `v` (0 = t, 1 = s, 2 = r).
    pub fn var(v: usize) -> Self {
        let mut e = [0; 3];
        e[v] = 1;
        Self::monomial(e, GaussianRational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Exps, GaussianRational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&[0, 0, 0])
                .is_some_and(|c| *c == GaussianRational::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&[0, 0, 0]))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<GaussianRational> {
        if self.is_zero() {
            Some(GaussianRational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    /// Largest term in lexicographic exponent order.
    pub fn leading(&self) -> Option<(&Exps, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, e: Exps, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiply by the monomial with exponents `e`.
    pub fn shift(&self, e: &Exps) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (add_exps(k, e), v.clone())).collect(),
        }
    }

    /// Componentwise minimum exponent (the monomial content).
    pub fn min_exps(&self) -> Exps {
        let mut m = [i32::MAX; 3];
        for e in self.terms.keys() {
            for v in 0..3 {
                m[v] = m[v].min(e[v]);
            }
        }
        if self.terms.is_empty() {
            [0; 3]
        } else {
            m
        }
    }

    pub fn max_exps(&self) -> Exps {
        let mut m = [i32::MIN; 3];
        for e in self.terms.keys() {
            for v in 0..3 {
                m[v] = m[v].max(e[v]);
            }
        }
        if self.terms.is_empty() {
            [0; 3]
        } else {
            m
        }
    }

    /// Strip monomial content and divide by the leading coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let m = self.min_exps();
        let p = self.shift(&[-m[0], -m[1], -m[2]]);
        let lc = p.leading().map(|(_, c)| c.clone()).expect("nonzero");
        p.scale(&lc.inv().expect("nonzero leading coefficient"))
    }

    /// Degree in variable `v` (largest exponent).
    fn deg(&self, v: usize) -> i32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    fn vars(&self) -> [bool; 3] {
        let lo = self.min_exps();
        let hi = self.max_exps();
        [lo[0] != hi[0], lo[1] != hi[1], lo[2] != hi[2]]
    }

    /// Coefficient of `v^d`, as a polynomial in the remaining variables.
    fn coeff_in(&self, v: usize, d: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[v] == d)
                .map(|(e, c)| {
                    let mut e = *e;
                    e[v] = 0;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    fn coeffs_in(&self, v: usize) -> BTreeMap<i32, Self> {
        let mut out: BTreeMap<i32, Self> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2[v] = 0;
            out.entry(e[v]).or_default().terms.insert(e2, c.clone());
        }
        out
    }

    /// Exact quotient `self / other`, or `None` when `other` does not divide.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if other.is_monomial() {
            let (e, c) = other.leading().unwrap();
            let inv = c.inv().unwrap();
            return Some(self.shift(&[-e[0], -e[1], -e[2]]).scale(&inv));
        }
        let ma = self.min_exps();
        let mb = other.min_exps();
        let a = self.shift(&[-ma[0], -ma[1], -ma[2]]);
        let b = other.shift(&[-mb[0], -mb[1], -mb[2]]);
        let bound = sub_exps(&a.max_exps(), &b.max_exps());
        if bound.iter().any(|&x| x < 0) {
            return None;
        }
        let (eb, cb) = b.leading().map(|(e, c)| (*e, c.clone())).unwrap();
        let cb_inv = cb.inv().unwrap();
        let mut rem = a;
        let mut quot = Self::zero();
        while let Some((er, cr)) = rem.leading().map(|(e, c)| (*e, c.clone())) {
            let e = sub_exps(&er, &eb);
            if e.iter().zip(&bound).any(|(&x, &hi)| x < 0 || x > hi) {
                return None;
            }
            let c = &cr * &cb_inv;
            let term = Self::monomial(e, c);
            rem = &rem - &(&term * &b);
            quot.add_term(e, &term.terms[&e]);
        }
        Some(quot.shift(&sub_exps(&ma, &mb)))
    }

    /// Monic gcd with monomial content removed. `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        // monomials are units
        if (a.is_monomial() && !b.is_zero()) || (b.is_monomial() && !a.is_zero()) {
            return Self::one();
        }
        gcd_rec(&a.normalized(), &b.normalized())
    }

    pub fn eval(&self, vals: &[Complex64; 3]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let (re, im) = c.to_f64_pair();
            let mut term = Complex64::new(re, im);
            for v in 0..3 {
                if e[v] != 0 {
                    term *= vals[v].powi(e[v]);
                }
            }
            acc += term;
        }
        acc
    }

    /// Sum of absolute values of the evaluated terms (scale for tolerances).
    pub fn eval_abs_scale(&self, vals: &[Complex64; 3]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let (re, im) = c.to_f64_pair();
            let mut term = Complex64::new(re, im).norm();
            for v in 0..3 {
                if e[v] != 0 {
                    term *= vals[v].norm().powi(e[v]);
                }
            }
            acc += term;
        }
        acc
    }
}

fn content_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let mut g = LaurentPoly::zero();
    for c in p.coeffs_in(v).values() {
        g = gcd_rec(&g, &c.normalized());
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let c = content_in(p, v);
    p.exact_div(&c).expect("content divides").normalized()
}

/// Pseudo-remainder of `a` by `b` as polynomials in `v`.
fn prem(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let db = b.deg(v);
    let lb = b.coeff_in(v, db);
    let mut a = a.clone();
    while !a.is_zero() && a.deg(v) >= db {
        let da = a.deg(v);
        let la = a.coeff_in(v, da);
        let mut shift = [0; 3];
        shift[v] = da - db;
        a = &(&lb * &a) - &(&la * &b.shift(&shift));
        // the gcd only matters up to units, so keep coefficients small
        if let Some((_, c)) = a.leading() {
            let inv = c.inv().unwrap();
            a = a.scale(&inv);
        }
    }
    a
}

/// Euclid in one variable over the coefficient field.
fn univariate_gcd(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let mut a = a.normalized();
    let mut b = b.normalized();
    if a.deg(v) < b.deg(v) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let db = b.deg(v);
        let lb_inv = b.coeff_in(v, db).constant_value().unwrap().inv().unwrap();
        let mut r = a.clone();
        while !r.is_zero() && r.deg(v) >= db {
            let dr = r.deg(v);
            let lr = r.coeff_in(v, dr).constant_value().unwrap();
            let mut e = [0; 3];
            e[v] = dr - db;
            r = &r - &b.shift(&e).scale(&(&lr * &lb_inv));
        }
        a = b;
        b = r.normalized();
    }
    a.normalized()
}

/// Substitute integers for every variable except `v`.
fn specialize(p: &LaurentPoly, v: usize, pt: &[i64; 3]) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (e, c) in &p.terms {
        let mut x = c.clone();
        for w in (0..3).filter(|&w| w != v) {
            let base = GaussianRational::from_int(pt[w]);
            for _ in 0..e[w] {
                x = &x * &base;
            }
        }
        let mut ev = [0; 3];
        ev[v] = e[v];
        out.add_term(ev, &x);
    }
    out
}

/// True when some specialization proves `gcd(a, b)` has no `v`-dependence.
///
/// Valid points keep the top and bottom `v`-coefficients of `a` nonzero, so
/// the image of any common factor keeps its `v`-span.
fn coprime_in(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> bool {
    const POINTS: [[i64; 3]; 4] = [[2, 3, 5], [3, 5, 7], [-2, 7, 3], [5, -3, 2]];
    let (lo, hi) = (a.min_exps()[v], a.max_exps()[v]);
    for pt in POINTS {
        let sa = specialize(a, v, &pt);
        let ok = [lo, hi].iter().all(|&d| !sa.coeff_in(v, d).is_zero());
        if ok {
            return !univariate_gcd(&sa, &specialize(b, v, &pt), v).vars()[v];
        }
    }
    false
}

fn gcd_rec(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    let a = a.normalized();
    let b = b.normalized();
    if a.is_one() || b.is_one() {
        return LaurentPoly::one();
    }
    if a == b {
        return a;
    }
    let va = a.vars();
    let vb = b.vars();
    for v in 0..3 {
        if va[v] && !vb[v] {
            return gcd_rec(&content_in(&a, v), &b);
        }
        if vb[v] && !va[v] {
            return gcd_rec(&a, &content_in(&b, v));
        }
    }
    let present: Vec<usize> = (0..3).filter(|&v| va[v]).collect();
    if present.len() == 1 {
        return univariate_gcd(&a, &b, present[0]);
    }
    if present.iter().all(|&v| coprime_in(&a, &b, v)) {
        return LaurentPoly::one();
    }
    if a.exact_div(&b).is_some() {
        return b;
    }
    if b.exact_div(&a).is_some() {
        return a;
    }
    let v = *present
        .iter()
        .min_by_key(|&&v| a.deg(v).max(b.deg(v)))
        .unwrap();
    let ca = content_in(&a, v);
    let cb = content_in(&b, v);
    let c = gcd_rec(&ca, &cb);
    let mut pa = a.exact_div(&ca).unwrap().normalized();
    let mut pb = b.exact_div(&cb).unwrap().normalized();
    if pa.deg(v) < pb.deg(v) {
        std::mem::swap(&mut pa, &mut pb);
    }
    loop {
        let r = prem(&pa, &pb, v);
        if r.is_zero() {
            break;
        }
        let r = primitive_part(&r, v);
        if r.deg(v) == 0 {
            pb = LaurentPoly::one();
            break;
        }
        pa = pb;
        pb = r;
    }
    (&c * &pb).normalized()
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(add_exps(ea, eb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

/// Writes a power of `t` in the `q` notation: `t^2 -> q`, `t^-3 -> q^(-3/2)`.
pub(crate) fn fmt_t_power(e: i32) -> String {
    if e % 2 == 0 {
        match e / 2 {
            1 => "q".to_string(),
            n => format!("q^{n}"),
        }
    } else {
        format!("q^({e}/2)")
    }
}

pub(crate) fn fmt_monomial(e: &Exps) -> Vec<String> {
    let mut parts = Vec::new();
    if e[0] != 0 {
        parts.push(fmt_t_power(e[0]));
    }
    for v in 1..3 {
        match e[v] {
            0 => {}
            1 => parts.push(VAR_NAMES[v].to_string()),
            n => parts.push(format!("{}^{}", VAR_NAMES[v], n)),
        }
    }
    parts
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono = fmt_monomial(e);
            let (neg, mag) = if c.is_real() && c.re < num_rational::BigRational::zero() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let cstr = mag.to_string();
            if mono.is_empty() {
                write!(f, "{cstr}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", cstr, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> LaurentPoly {
        LaurentPoly::var(0)
    }
    fn s() -> LaurentPoly {
        LaurentPoly::var(1)
    }
    fn c(n: i64) -> LaurentPoly {
        LaurentPoly::constant(GaussianRational::from_int(n))
    }
    fn pw(p: &LaurentPoly, n: u32) -> LaurentPoly {
        (0..n).fold(LaurentPoly::one(), |acc, _| &acc * p)
    }

    #[test]
    fn exact_division_detects_non_divisors() {
        let a = &(&t() - &c(1)) * &(&s() + &t());
        assert_eq!(a.exact_div(&(&t() - &c(1))).unwrap(), &s() + &t());
        assert!(a.exact_div(&(&t() + &c(1))).is_none());
    }

    #[test]
    fn gcd_of_products_recovers_common_factor() {
        let g = &(&s() * &pw(&t(), 4)) + &c(1);
        let x = &(&t() * &t()) - &c(1);
        let y = &(&s() * &s()) + &t();
        let a = &g * &x;
        let b = &g * &y;
        assert_eq!(LaurentPoly::gcd(&a, &b), g.normalized());
    }

    #[test]
    fn univariate_gcd_difference_of_squares() {
        let a = &pw(&t(), 4) - &c(1);
        let b = &pw(&t(), 2) - &c(1);
        assert_eq!(LaurentPoly::gcd(&a, &b), b);
    }

    #[test]
    fn monomials_are_units() {
        let a = pw(&t(), 3).shift(&[0, 2, 0]);
        let b = &s() + &c(2);
        assert!(LaurentPoly::gcd(&a, &b).is_one());
    }
}
