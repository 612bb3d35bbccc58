//! The commutative Cartan part of `Û_q(m2)`: Laurent polynomials in `K = q^H`
//! localized at `D_k = q^k K + q^{-k} K^{-1}`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::scalars::Scalar;

/// `num(K) / prod_k D_k^{m_k}`, reduced so that no `D_k` in the denominator
/// divides the numerator.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CartanFraction {
    num: BTreeMap<i32, Scalar>,
    den: BTreeMap<i32, u32>,
}

type KPoly = BTreeMap<i32, Scalar>;

fn kpoly_add(a: &mut KPoly, e: i32, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let v = a.entry(e).or_insert_with(Scalar::zero);
    *v = &*v + c;
    if v.is_zero() {
        a.remove(&e);
    }
}

fn kpoly_mul(a: &KPoly, b: &KPoly) -> KPoly {
    let mut out = KPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            kpoly_add(&mut out, ea + eb, &(ca * cb));
        }
    }
    out
}

/// `D_k = q^k K + q^{-k} K^{-1}`.
fn d_poly(k: i32) -> KPoly {
    let mut p = KPoly::new();
    p.insert(1, Scalar::q_pow(k as i64));
    p.insert(-1, Scalar::q_pow(-(k as i64)));
    p
}

/// True when `n` is visibly nonzero at a root `K = ±i q^{-k}` of `D_k`,
/// evaluated at a fixed generic point. A vanishing or non-finite value
/// proves nothing and returns false.
fn misses_root(n: &KPoly, k: i32) -> bool {
    let pt = [Complex64::new(1.23, 0.17), Complex64::new(0.61, -0.42), Complex64::new(1.37, 0.29)];
    let mut vals = Vec::with_capacity(n.len());
    for (e, c) in n {
        let d = c.denom().eval(&pt);
        if d.norm() < 1e-6 * c.denom().eval_abs_scale(&pt) {
            return false;
        }
        vals.push((*e, c.numer().eval(&pt) / d));
    }
    let root = pt[0].powi(-2 * k);
    [Complex64::i(), -Complex64::i()].iter().any(|u| {
        let kk = u * root;
        let (mut sum, mut scale) = (Complex64::new(0.0, 0.0), 0.0);
        for (e, v) in &vals {
            let term = v * kk.powi(*e);
            sum += term;
            scale += term.norm();
        }
        sum.is_finite() && scale.is_finite() && sum.norm() > 1e-6 * scale
    })
}

/// Exact division of a Laurent polynomial in `K` by `D_k`, if it divides.
fn div_by_d(n: &KPoly, k: i32) -> Option<KPoly> {
    if misses_root(n, k) {
        return None;
    }
    let lo = *n.keys().next()?;
    // n / D_k = K^{lo+1} * P / (q^k K^2 + q^{-k}),  P = n K^{-lo}
    let mut p: BTreeMap<i32, Scalar> = n.iter().map(|(e, c)| (e - lo, c.clone())).collect();
    let lead = Scalar::q_pow(k as i64);
    let lead_inv = Scalar::q_pow(-(k as i64));
    let tail = Scalar::q_pow(-(k as i64));
    let mut quot = KPoly::new();
    while let Some((d, c)) = p.iter().next_back().map(|(d, c)| (*d, c.clone())) {
        if d < 2 {
            return None;
        }
        let qc = &c * &lead_inv;
        kpoly_add(&mut p, d, &-(&qc * &lead));
        kpoly_add(&mut p, d - 2, &-(&qc * &tail));
        kpoly_add(&mut quot, d - 2, &qc);
    }
    Some(quot.into_iter().map(|(e, c)| (e + lo + 1, c)).collect())
}

impl CartanFraction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::k_pow_scaled(0, c)
    }

    /// `c K^n`.
    pub fn k_pow_scaled(n: i32, c: Scalar) -> Self {
        let mut num = KPoly::new();
        kpoly_add(&mut num, n, &c);
        Self {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn k_pow(n: i32) -> Self {
        Self::k_pow_scaled(n, Scalar::one())
    }

    /// `D_k` itself.
    pub fn d(k: i32) -> Self {
        Self {
            num: d_poly(k),
            den: BTreeMap::new(),
        }
    }

    /// `G_k = D_k^{-1}`.
    pub fn g(k: i32) -> Self {
        Self {
            num: Self::one().num,
            den: BTreeMap::from([(k, 1)]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn numerator(&self) -> impl Iterator<Item = (&i32, &Scalar)> {
        self.num.iter()
    }

    pub fn denominator(&self) -> impl Iterator<Item = (&i32, &u32)> {
        self.den.iter()
    }

    fn reduce(mut num: KPoly, mut den: BTreeMap<i32, u32>) -> Self {
        if num.is_empty() {
            return Self::zero();
        }
        for (k, m) in den.iter_mut() {
            while *m > 0 {
                match div_by_d(&num, *k) {
                    Some(q) => {
                        num = q;
                        *m -= 1;
                    }
                    None => break,
                }
            }
        }
        den.retain(|_, m| *m > 0);
        Self { num, den }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut lcm = self.den.clone();
        for (k, m) in &other.den {
            let e = lcm.entry(*k).or_insert(0);
            *e = (*e).max(*m);
        }
        let lift = |x: &Self| -> KPoly {
            let mut n = x.num.clone();
            for (k, m) in &lcm {
                let have = x.den.get(k).copied().unwrap_or(0);
                for _ in have..*m {
                    n = kpoly_mul(&n, &d_poly(*k));
                }
            }
            n
        };
        let mut num = lift(self);
        for (e, c) in lift(other) {
            kpoly_add(&mut num, e, &c);
        }
        Self::reduce(num, lcm)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.iter().map(|(e, v)| (*e, v * c)).collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let num = kpoly_mul(&self.num, &other.num);
        let mut den = self.den.clone();
        for (k, m) in &other.den {
            *den.entry(*k).or_insert(0) += m;
        }
        Self::reduce(num, den)
    }

    /// Substitute `K -> q^n K`; sends `D_k` to `D_{k+n}`.
    pub fn shift(&self, n: i32) -> Self {
        if n == 0 {
            return self.clone();
        }
        Self {
            num: self
                .num
                .iter()
                .map(|(e, c)| (*e, c * &Scalar::q_pow((n as i64) * (*e as i64))))
                .collect(),
            den: self.den.iter().map(|(k, m)| (k + n, *m)).collect(),
        }
    }

    /// Monomial expansion `(c, K-exponent, G factors)` used for printing.
    pub fn expanded_terms(&self) -> Vec<(Scalar, i32, Vec<(i32, u32)>)> {
        let g: Vec<(i32, u32)> = self.den.iter().map(|(k, m)| (*k, *m)).collect();
        self.num
            .iter()
            .rev()
            .map(|(e, c)| (c.clone(), *e, g.clone()))
            .collect()
    }
}

impl fmt::Display for CartanFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut labels = Vec::new();
        for (c, e, g) in self.expanded_terms() {
            labels.push((super::m2::cartan_label(e, &g), c));
        }
        super::format_terms(f, labels.iter().map(|(l, c)| (l.clone(), c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_times_d_is_one() {
        for k in -3..=3 {
            assert_eq!(CartanFraction::g(k).mul(&CartanFraction::d(k)), CartanFraction::one());
        }
    }

    #[test]
    fn shift_moves_index() {
        assert_eq!(CartanFraction::g(0).shift(1), CartanFraction::g(1));
        assert_eq!(CartanFraction::d(2).shift(-1), CartanFraction::d(1));
    }

    #[test]
    fn distinct_denominators_do_not_cancel() {
        let x = CartanFraction::g(0).mul(&CartanFraction::d(1));
        assert_eq!(x.denominator().count(), 1);
        let back = x.mul(&CartanFraction::d(0));
        assert_eq!(back, CartanFraction::d(1));
    }

    #[test]
    fn sums_share_canonical_storage() {
        // G_0 K + G_0 K^-1 = G_0 (K + K^-1) = 1
        let a = CartanFraction::g(0).mul(&CartanFraction::k_pow(1));
        let b = CartanFraction::g(0).mul(&CartanFraction::k_pow(-1));
        assert_eq!(a.add(&b), CartanFraction::one());
    }
}
