//! `Û_q(m2)`: generated by `K = q^H`, `K^{-1}`, `E`, `F` and `G_k = D_k^{-1}`
//! with `K E K^{-1} = q E`, `K F K^{-1} = q^{-1} F`, `EF = FE`,
//! `G_k E = E G_{k+1}`, `G_k F = F G_{k-1}`.
//!
//! Elements are kept in the canonical form `sum F^a E^b phi_{a,b}(K)` where
//! `phi_{a,b}` is a [`CartanFraction`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use super::cartan::CartanFraction;
use super::rewrite::{RewriteSystem, Rule, WordComb};
use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// Letters of the free algebra over `Û_q(m2)` generators, in normal-word order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum M2Gen {
    F,
    E,
    K,
    Kinv,
    G(i32),
}

impl fmt::Display for M2Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            M2Gen::F => f.write_str("F"),
            M2Gen::E => f.write_str("E"),
            M2Gen::K => f.write_str("K"),
            M2Gen::Kinv => f.write_str("Kinv"),
            M2Gen::G(k) => write!(f, "G[{k}]"),
        }
    }
}

/// `F^a E^b` exponents.
pub type FeKey = (u32, u32);

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct M2Element {
    terms: BTreeMap<FeKey, CartanFraction>,
}

pub(crate) fn cartan_label(k_exp: i32, g: &[(i32, u32)]) -> String {
    let mut parts = Vec::new();
    match k_exp {
        0 => {}
        1 => parts.push("K".to_string()),
        -1 => parts.push("Kinv".to_string()),
        n if n > 0 => parts.push(format!("K^{n}")),
        n => parts.push(format!("Kinv^{}", -n)),
    }
    for (k, m) in g {
        if *m == 1 {
            parts.push(format!("G[{k}]"));
        } else {
            parts.push(format!("G[{k}]^{m}"));
        }
    }
    parts.join(" ")
}

impl M2Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::term((0, 0), CartanFraction::scalar(c))
    }

    pub fn term(key: FeKey, phi: CartanFraction) -> Self {
        let mut out = Self::zero();
        out.add_term(key, &phi);
        out
    }

    pub fn cartan(phi: CartanFraction) -> Self {
        Self::term((0, 0), phi)
    }

    pub fn generator(g: M2Gen) -> Self {
        match g {
            M2Gen::F => Self::term((1, 0), CartanFraction::one()),
            M2Gen::E => Self::term((0, 1), CartanFraction::one()),
            M2Gen::K => Self::cartan(CartanFraction::k_pow(1)),
            M2Gen::Kinv => Self::cartan(CartanFraction::k_pow(-1)),
            M2Gen::G(k) => Self::cartan(CartanFraction::g(k)),
        }
    }

    pub fn e() -> Self {
        Self::generator(M2Gen::E)
    }
    pub fn f() -> Self {
        Self::generator(M2Gen::F)
    }
    pub fn k() -> Self {
        Self::generator(M2Gen::K)
    }
    pub fn kinv() -> Self {
        Self::generator(M2Gen::Kinv)
    }
    pub fn g(k: i32) -> Self {
        Self::generator(M2Gen::G(k))
    }

    /// `D_k = q^k K + q^{-k} K^{-1}`.
    pub fn d(k: i32) -> Self {
        Self::cartan(CartanFraction::d(k))
    }

    fn add_term(&mut self, key: FeKey, phi: &CartanFraction) {
        if phi.is_zero() {
            return;
        }
        let merged = match self.terms.get(&key) {
            Some(old) => old.add(phi),
            None => phi.clone(),
        };
        if merged.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, merged);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FeKey, &CartanFraction)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (k, phi) in &self.terms {
            out.add_term(*k, &phi.scale(c));
        }
        out
    }

    pub fn commutator(a: &Self, b: &Self) -> Self {
        &(a * b) - &(b * a)
    }

    /// `q^{1/2} a b - q^{-1/2} b a`.
    pub fn q_commutator(a: &Self, b: &Self) -> Self {
        &(a * b).scale(&Scalar::t_pow(1)) - &(b * a).scale(&Scalar::t_pow(-1))
    }
}

impl Add<&M2Element> for &M2Element {
    type Output = M2Element;
    fn add(self, rhs: &M2Element) -> M2Element {
        let mut out = self.clone();
        for (k, phi) in &rhs.terms {
            out.add_term(*k, phi);
        }
        out
    }
}

impl Sub<&M2Element> for &M2Element {
    type Output = M2Element;
    fn sub(self, rhs: &M2Element) -> M2Element {
        self + &(-rhs)
    }
}

impl Neg for &M2Element {
    type Output = M2Element;
    fn neg(self) -> M2Element {
        self.scale(&-Scalar::one())
    }
}

impl Mul<&M2Element> for &M2Element {
    type Output = M2Element;
    /// `F^a E^b phi(K) * F^c E^d chi(K) = F^{a+c} E^{b+d} phi(q^{d-c} K) chi(K)`.
    fn mul(self, rhs: &M2Element) -> M2Element {
        let mut out = M2Element::zero();
        for ((a, b), phi) in &self.terms {
            for ((c, d), chi) in &rhs.terms {
                let shift = *d as i32 - *c as i32;
                out.add_term((a + c, b + d), &phi.shift(shift).mul(chi));
            }
        }
        out
    }
}

impl fmt::Display for M2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut labels = Vec::new();
        for ((a, b), phi) in &self.terms {
            let mut fe = Vec::new();
            match a {
                0 => {}
                1 => fe.push("F".to_string()),
                n => fe.push(format!("F^{n}")),
            }
            match b {
                0 => {}
                1 => fe.push("E".to_string()),
                n => fe.push(format!("E^{n}")),
            }
            for (c, e, g) in phi.expanded_terms() {
                let mut parts = fe.clone();
                let cl = cartan_label(e, &g);
                if !cl.is_empty() {
                    parts.push(cl);
                }
                let label = if parts.is_empty() {
                    "1".to_string()
                } else {
                    parts.join(" ")
                };
                labels.push((label, c));
            }
        }
        super::format_terms(f, labels.iter().map(|(l, c)| (l.clone(), c)))
    }
}

/// Normal form of a free word combination over the `Û_q(m2)` generators.
pub fn nf_m2hat(x: &WordComb<M2Gen>) -> Result<M2Element> {
    nf_m2hat_capped(x, super::rewrite::DEFAULT_MAX_WORD_LEN)
}

pub fn nf_m2hat_capped(x: &WordComb<M2Gen>, max_len: usize) -> Result<M2Element> {
    let len = x.max_len();
    if len > max_len {
        return Err(Error::ResourceLimit {
            what: format!("word length {len}"),
            limit: max_len,
        });
    }
    Ok(eval_words(x))
}

/// Evaluate words by canonical multiplication.
pub fn eval_words(x: &WordComb<M2Gen>) -> M2Element {
    let mut out = M2Element::zero();
    for (w, c) in x.terms() {
        let mut acc = M2Element::scalar(c.clone());
        for l in w {
            acc = &acc * &M2Element::generator(*l);
        }
        out = &out + &acc;
    }
    out
}

fn rule(a: M2Gen, b: M2Gen, rhs: Vec<(Vec<M2Gen>, Scalar)>) -> Rule<M2Gen> {
    Rule {
        lhs: (a, b),
        rhs: WordComb::from_terms(rhs),
    }
}

/// Two-letter ordering rules of `Û_q(m2)` for `G_k` with `|k| <= k_max + 3`;
/// overlaps are enumerated over `|k| <= k_max` so every resolution stays in range.
///
/// The localization relation `G_k D_k = 1` is not a two-letter rule; it is
/// imposed by [`CartanFraction`] reduction on the commutative part.
pub fn m2hat_system(k_max: i32) -> RewriteSystem<M2Gen> {
    use M2Gen::*;
    let one = Scalar::one();
    let mut rules = vec![
        rule(E, F, vec![(vec![F, E], one.clone())]),
        rule(K, F, vec![(vec![F, K], Scalar::q_pow(-1))]),
        rule(K, E, vec![(vec![E, K], Scalar::q())]),
        rule(Kinv, F, vec![(vec![F, Kinv], Scalar::q())]),
        rule(Kinv, E, vec![(vec![E, Kinv], Scalar::q_pow(-1))]),
        rule(K, Kinv, vec![(vec![], one.clone())]),
        rule(Kinv, K, vec![(vec![], one.clone())]),
    ];
    let range = k_max + 3;
    for k in -range..=range {
        rules.push(rule(G(k), F, vec![(vec![F, G(k - 1)], one.clone())]));
        rules.push(rule(G(k), E, vec![(vec![E, G(k + 1)], one.clone())]));
        rules.push(rule(G(k), K, vec![(vec![K, G(k)], one.clone())]));
        rules.push(rule(G(k), Kinv, vec![(vec![Kinv, G(k)], one.clone())]));
        for j in -range..k {
            rules.push(rule(G(k), G(j), vec![(vec![G(j), G(k)], one.clone())]));
        }
    }
    let mut letters = vec![F, E, K, Kinv];
    letters.extend((-k_max..=k_max).map(G));
    RewriteSystem::new("Û_q(m2)", rules, letters).expect("rules decrease the order")
}

/// Check `G_k D_k = D_k G_k = 1` and compatibility of the localization with
/// the `E`, `F` shifts, for `|k| <= k_max`. Returns the failing `k`.
pub fn check_localization(k_max: i32) -> Vec<i32> {
    let mut bad = Vec::new();
    for k in -k_max..=k_max {
        let g = M2Element::g(k);
        let d = M2Element::d(k);
        let ok = &g * &d == M2Element::one()
            && &d * &g == M2Element::one()
            && &g * &M2Element::e() == &M2Element::e() * &M2Element::g(k + 1)
            && &g * &M2Element::f() == &M2Element::f() * &M2Element::g(k - 1)
            && &M2Element::k() * &g == &g * &M2Element::k()
            && &M2Element::kinv() * &g == &g * &M2Element::kinv();
        if !ok {
            bad.push(k);
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_e_is_q_e_k() {
        let lhs = &M2Element::k() * &M2Element::e();
        let rhs = (&M2Element::e() * &M2Element::k()).scale(&Scalar::q());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn g0_e_is_e_g1() {
        assert_eq!(&M2Element::g(0) * &M2Element::e(), &M2Element::e() * &M2Element::g(1));
    }

    #[test]
    fn e_f_commute() {
        assert!(M2Element::commutator(&M2Element::e(), &M2Element::f()).is_zero());
    }

    #[test]
    fn g0_times_k_plus_kinv_is_one() {
        let x = &M2Element::g(0) * &(&M2Element::k() + &M2Element::kinv());
        assert_eq!(x, M2Element::one());
    }

    #[test]
    fn system_is_confluent_and_matches_canonical_product() {
        let sys = m2hat_system(2);
        assert!(sys.check_confluence().is_empty());
        use M2Gen::*;
        let w = WordComb::word(vec![G(1), E, Kinv, F, K, G(-1), E]);
        let via_rules = eval_words(&sys.reduce(&w));
        assert_eq!(via_rules, eval_words(&w));
        assert!(check_localization(3).is_empty());
    }
}
