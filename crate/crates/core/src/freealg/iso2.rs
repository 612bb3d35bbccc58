//! `U_q(iso2)`: generators `I, T1, T2` with
//! `q^{1/2} I T2 - q^{-1/2} T2 I = T1`, `q^{1/2} T1 I - q^{-1/2} I T1 = T2`,
//! `q^{1/2} T2 T1 - q^{-1/2} T1 T2 = 0`, and PBW basis `T1^j T2^k I^l`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::{One, Zero};

use super::rewrite::{RewriteSystem, Rule, WordComb};
use crate::error::Result;
use crate::scalars::Scalar;

/// Generators, declared in PBW order (`T1` leftmost, `I` rightmost).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Iso2Gen {
    T1,
    T2,
    I,
}

impl fmt::Display for Iso2Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Iso2Gen::T1 => "T1",
            Iso2Gen::T2 => "T2",
            Iso2Gen::I => "I",
        })
    }
}

/// `T1^j T2^k I^l`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Iso2Monomial {
    pub j: u32,
    pub k: u32,
    pub l: u32,
}

impl Iso2Monomial {
    pub fn new(j: u32, k: u32, l: u32) -> Self {
        Self { j, k, l }
    }

    pub fn degree(&self) -> u32 {
        self.j + self.k + self.l
    }

    pub fn word(&self) -> Vec<Iso2Gen> {
        let mut w = vec![Iso2Gen::T1; self.j as usize];
        w.extend(std::iter::repeat_n(Iso2Gen::T2, self.k as usize));
        w.extend(std::iter::repeat_n(Iso2Gen::I, self.l as usize));
        w
    }

    /// Inverse of [`word`](Self::word); `None` if the word is not PBW-ordered.
    pub fn from_word(w: &[Iso2Gen]) -> Option<Self> {
        if w.windows(2).any(|p| p[0] > p[1]) {
            return None;
        }
        let count = |g| w.iter().filter(|&&x| x == g).count() as u32;
        Some(Self::new(count(Iso2Gen::T1), count(Iso2Gen::T2), count(Iso2Gen::I)))
    }
}

/// Printing order: total degree, then higher `T1` power first, then higher `T2` power.
impl Ord for Iso2Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(other.j.cmp(&self.j))
            .then(other.k.cmp(&self.k))
    }
}

impl PartialOrd for Iso2Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Iso2Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("T1", self.j), ("T2", self.k), ("I", self.l)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                n => parts.push(format!("{name}^{n}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

fn rule(a: Iso2Gen, b: Iso2Gen, rhs: Vec<(Vec<Iso2Gen>, Scalar)>) -> Rule<Iso2Gen> {
    Rule {
        lhs: (a, b),
        rhs: WordComb::from_terms(rhs),
    }
}

use Iso2Gen::{I, T1, T2};

/// The three oriented rules solving the defining relations for the
/// out-of-order products `I T2`, `I T1`, `T2 T1`.
pub fn iso2_rules() -> Vec<Rule<Iso2Gen>> {
    vec![
        rule(I, T2, vec![(vec![T2, I], Scalar::t_pow(-2)), (vec![T1], Scalar::t_pow(-1))]),
        rule(I, T1, vec![(vec![T1, I], Scalar::t_pow(2)), (vec![T2], -Scalar::t_pow(1))]),
        rule(T2, T1, vec![(vec![T1, T2], Scalar::t_pow(-2))]),
    ]
}

pub fn iso2_system() -> RewriteSystem<Iso2Gen> {
    RewriteSystem::new("U_q(iso2)", iso2_rules(), vec![T1, T2, I]).expect("rules decrease the order")
}

/// Variant with `T2 T1 -> T1 T2`, which is not confluent.
pub fn broken_iso2_system() -> RewriteSystem<Iso2Gen> {
    let mut rules = iso2_rules();
    rules[2] = rule(T2, T1, vec![(vec![T1, T2], Scalar::one())]);
    RewriteSystem::new("U_q(iso2) with T2 T1 -> T1 T2", rules, vec![T1, T2, I])
        .expect("rules decrease the order")
}

fn shared_system() -> &'static RewriteSystem<Iso2Gen> {
    static SYS: OnceLock<RewriteSystem<Iso2Gen>> = OnceLock::new();
    SYS.get_or_init(iso2_system)
}

/// An element of `U_q(iso2)` in the PBW basis.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Iso2Element {
    terms: BTreeMap<Iso2Monomial, Scalar>,
}

impl Iso2Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::term(Iso2Monomial::default(), c)
    }

    pub fn generator(g: Iso2Gen) -> Self {
        Self::term(Iso2Monomial::from_word(&[g]).unwrap(), Scalar::one())
    }

    pub fn i_gen() -> Self {
        Self::generator(I)
    }

    pub fn t1() -> Self {
        Self::generator(T1)
    }

    pub fn t2() -> Self {
        Self::generator(T2)
    }

    pub fn term(m: Iso2Monomial, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(m, &c);
        out
    }

    pub fn from_terms<It: IntoIterator<Item = (Iso2Monomial, Scalar)>>(it: It) -> Self {
        let mut out = Self::zero();
        for (m, c) in it {
            out.add_term(m, &c);
        }
        out
    }

    fn add_term(&mut self, m: Iso2Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Scalar::zero);
        *e = &*e + c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Iso2Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Iso2Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Iso2Monomial::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, v)| (*m, v * c)))
    }

    pub fn to_words(&self) -> WordComb<Iso2Gen> {
        WordComb::from_terms(self.terms.iter().map(|(m, c)| (m.word(), c.clone())))
    }

    /// Read back a combination of PBW-ordered words.
    pub fn from_normal_words(x: &WordComb<Iso2Gen>) -> Self {
        Self::from_terms(x.terms().map(|(w, c)| {
            (
                Iso2Monomial::from_word(w).expect("normal words are PBW-ordered"),
                c.clone(),
            )
        }))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `q^{1/2} a b - q^{-1/2} b a`.
    pub fn q_commutator(a: &Self, b: &Self) -> Self {
        &(a * b).scale(&Scalar::t_pow(1)) - &(b * a).scale(&Scalar::t_pow(-1))
    }

    pub fn commutator(a: &Self, b: &Self) -> Self {
        &(a * b) - &(b * a)
    }
}

/// Normal form of a free word combination over `{I, T1, T2}`.
pub fn nf_iso2(x: &WordComb<Iso2Gen>) -> Result<Iso2Element> {
    nf_iso2_with(shared_system(), x)
}

pub fn nf_iso2_with(sys: &RewriteSystem<Iso2Gen>, x: &WordComb<Iso2Gen>) -> Result<Iso2Element> {
    Ok(Iso2Element::from_normal_words(&sys.normal_form(x)?))
}

/// `T1' = q^{-1/2} I T2 - q^{1/2} T2 I`.
pub fn t1_prime() -> Iso2Element {
    let i = Iso2Element::i_gen();
    let t2 = Iso2Element::t2();
    &(&i * &t2).scale(&Scalar::t_pow(-1)) - &(&t2 * &i).scale(&Scalar::t_pow(1))
}

/// `C_q = (T1 T1' + T1' T1)/2 + (q + q^{-1}) T2^2 / 2`, reduced to PBW form.
pub fn casimir_from_definition() -> Iso2Element {
    let t1 = Iso2Element::t1();
    let t2 = Iso2Element::t2();
    let tp = t1_prime();
    let half = Scalar::from_ratio(1, 2);
    let sym = (&(&t1 * &tp) + &(&tp * &t1)).scale(&half);
    let qq = &(&Scalar::q() + &Scalar::q_pow(-1)) * &half;
    &sym + &(&t2 * &t2).scale(&qq)
}

/// `q^{-1} T1^2 + q T2^2 + q^{-3/2}(1 - q^2) T1 T2 I`.
pub fn casimir_pbw() -> Iso2Element {
    Iso2Element::from_terms([
        (Iso2Monomial::new(2, 0, 0), Scalar::q_pow(-1)),
        (Iso2Monomial::new(0, 2, 0), Scalar::q()),
        (
            Iso2Monomial::new(1, 1, 1),
            &Scalar::t_pow(-3) * &(&Scalar::one() - &Scalar::q_pow(2)),
        ),
    ])
}

impl Add<&Iso2Element> for &Iso2Element {
    type Output = Iso2Element;
    fn add(self, rhs: &Iso2Element) -> Iso2Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub<&Iso2Element> for &Iso2Element {
    type Output = Iso2Element;
    fn sub(self, rhs: &Iso2Element) -> Iso2Element {
        self + &(-rhs)
    }
}

impl Neg for &Iso2Element {
    type Output = Iso2Element;
    fn neg(self) -> Iso2Element {
        self.scale(&-Scalar::one())
    }
}

impl Mul<&Iso2Element> for &Iso2Element {
    type Output = Iso2Element;
    fn mul(self, rhs: &Iso2Element) -> Iso2Element {
        let words = self.to_words().concat(&rhs.to_words());
        Iso2Element::from_normal_words(&shared_system().reduce(&words))
    }
}

impl fmt::Display for Iso2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::format_terms(f, self.terms.iter().map(|(m, c)| (m.to_string(), c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_t2_rule_solves_first_relation() {
        let i = Iso2Element::i_gen();
        let t2 = Iso2Element::t2();
        let prod = &i * &t2;
        let expected = Iso2Element::from_terms([
            (Iso2Monomial::new(0, 1, 1), Scalar::q_pow(-1)),
            (Iso2Monomial::new(1, 0, 0), Scalar::t_pow(-1)),
        ]);
        assert_eq!(prod, expected);
        // substitute back into q^{1/2} I T2 - q^{-1/2} T2 I
        assert_eq!(Iso2Element::q_commutator(&i, &t2), Iso2Element::t1());
    }

    #[test]
    fn t2_t1_q_commutes() {
        let prod = &Iso2Element::t2() * &Iso2Element::t1();
        assert_eq!(prod, Iso2Element::term(Iso2Monomial::new(1, 1, 0), Scalar::q_pow(-1)));
    }

    #[test]
    fn second_relation_holds() {
        let r = Iso2Element::q_commutator(&Iso2Element::t1(), &Iso2Element::i_gen());
        assert_eq!(r, Iso2Element::t2());
    }

    #[test]
    fn broken_system_has_conflicts() {
        assert!(iso2_system().check_confluence().is_empty());
        let conflicts = broken_iso2_system().check_confluence();
        assert!(conflicts.iter().any(|o| o.word == vec![I, T2, T1]));
    }

    #[test]
    fn printing_order_matches_degree_then_t1() {
        let c = casimir_pbw();
        let keys: Vec<_> = c.terms().map(|(m, _)| *m).collect();
        assert_eq!(
            keys,
            vec![
                Iso2Monomial::new(2, 0, 0),
                Iso2Monomial::new(0, 2, 0),
                Iso2Monomial::new(1, 1, 1)
            ]
        );
    }
}
