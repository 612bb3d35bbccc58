//! Oriented rewrite systems with two-letter left-hand sides over a totally
//! ordered alphabet, reduction to normal words, and overlap (diamond) checks.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// Default cap on word length accepted by the normal-form entry points.
pub const DEFAULT_MAX_WORD_LEN: usize = 64;

pub trait Letter: Clone + Ord + fmt::Debug + fmt::Display + Send + Sync {}
impl<T: Clone + Ord + fmt::Debug + fmt::Display + Send + Sync> Letter for T {}

/// A finite linear combination of words with scalar coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WordComb<L: Letter> {
    terms: BTreeMap<Vec<L>, Scalar>,
}

impl<L: Letter> Default for WordComb<L> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<L: Letter> WordComb<L> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Vec::new())
    }

    pub fn word(w: Vec<L>) -> Self {
        Self::term(w, Scalar::one())
    }

    pub fn letter(l: L) -> Self {
        Self::word(vec![l])
    }

    pub fn term(w: Vec<L>, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(w, &c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<L>, Scalar)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (w, c) in it {
            out.add_term(w, &c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<L>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Vec<L>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&w) {
            Some(v) => {
                *v = &*v + c;
                v.is_zero()
            }
            None => {
                self.terms.insert(w.clone(), c.clone());
                false
            }
        };
        if remove {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, v)| (w.clone(), v * c)))
    }

    /// Concatenation product.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut w = a.clone();
                w.extend(b.iter().cloned());
                out.add_term(w, &(ca * cb));
            }
        }
        out
    }

    /// Replace each letter by a combination (used by substitution homomorphisms).
    pub fn map_letters<M: Letter>(&self, f: impl Fn(&L) -> WordComb<M>) -> WordComb<M> {
        let mut out = WordComb::zero();
        for (w, c) in &self.terms {
            let mut acc = WordComb::<M>::one().scale(c);
            for l in w {
                acc = acc.concat(&f(l));
            }
            out = out.add(&acc);
        }
        out
    }
}

impl<L: Letter> fmt::Display for WordComb<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word: Vec<String> = w.iter().map(|l| l.to_string()).collect();
                if word.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c}) {}", word.join(" "))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Number of pairs `i < j` with `w[i] > w[j]`.
pub fn inversions<L: Ord>(w: &[L]) -> usize {
    let mut n = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                n += 1;
            }
        }
    }
    n
}

/// The termination order: word length first, then inversion count.
fn word_key<L: Ord>(w: &[L]) -> (usize, usize) {
    (w.len(), inversions(w))
}

#[derive(Clone, Debug)]
pub struct Rule<L: Letter> {
    pub lhs: (L, L),
    pub rhs: WordComb<L>,
}

impl<L: Letter> fmt::Display for Rule<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} -> {}", self.lhs.0, self.lhs.1, self.rhs)
    }
}

/// An overlap `a b c` whose two one-step resolutions reduce to different normal forms.
#[derive(Clone, Debug)]
pub struct Overlap<L: Letter> {
    pub word: Vec<L>,
    pub via_left: WordComb<L>,
    pub via_right: WordComb<L>,
}

impl<L: Letter> fmt::Display for Overlap<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.word.iter().map(|l| l.to_string()).collect();
        write!(
            f,
            "{}: ({}){} = {}  vs  {}({}) = {}",
            w.join(" "),
            w[..2].join(" "),
            w[2],
            self.via_left,
            w[0],
            w[1..].join(" "),
            self.via_right
        )
    }
}

#[derive(Clone, Debug)]
pub struct RewriteSystem<L: Letter> {
    pub name: String,
    rules: BTreeMap<(L, L), WordComb<L>>,
    /// Letters whose length-3 overlaps are enumerated by [`check_confluence`].
    overlap_letters: Vec<L>,
    pub max_word_len: usize,
}

impl<L: Letter> RewriteSystem<L> {
    /// Build a system; rejects rules whose right-hand side does not decrease
    /// the (length, inversions) order.
    pub fn new(name: &str, rules: Vec<Rule<L>>, overlap_letters: Vec<L>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for rule in rules {
            let lhs = vec![rule.lhs.0.clone(), rule.lhs.1.clone()];
            let key = word_key(&lhs);
            if rule.rhs.terms().any(|(w, _)| word_key(w) >= key) {
                return Err(Error::NonTerminating {
                    rule: rule.to_string(),
                });
            }
            map.insert(rule.lhs, rule.rhs);
        }
        Ok(Self {
            name: name.to_string(),
            rules: map,
            overlap_letters,
            max_word_len: DEFAULT_MAX_WORD_LEN,
        })
    }

    pub fn rules(&self) -> impl Iterator<Item = Rule<L>> + '_ {
        self.rules.iter().map(|(lhs, rhs)| Rule {
            lhs: lhs.clone(),
            rhs: rhs.clone(),
        })
    }

    pub fn rule_for(&self, a: &L, b: &L) -> Option<&WordComb<L>> {
        self.rules.get(&(a.clone(), b.clone()))
    }

    fn find_redex(&self, w: &[L]) -> Option<(usize, &WordComb<L>)> {
        w.windows(2).enumerate().find_map(|(i, p)| {
            self.rules
                .get(&(p[0].clone(), p[1].clone()))
                .map(|rhs| (i, rhs))
        })
    }

    /// Reduce to a combination of irreducible words, enforcing the length cap.
    pub fn normal_form(&self, x: &WordComb<L>) -> Result<WordComb<L>> {
        let len = x.max_len();
        if len > self.max_word_len {
            return Err(Error::ResourceLimit {
                what: format!("word length {len}"),
                limit: self.max_word_len,
            });
        }
        Ok(self.reduce(x))
    }

    /// Reduce without the length cap. Terminates because every rule decreases
    /// the (length, inversions) order.
    pub fn reduce(&self, x: &WordComb<L>) -> WordComb<L> {
        let mut pending = x.clone();
        let mut done = WordComb::zero();
        while let Some((w, c)) = pending.terms.pop_last() {
            match self.find_redex(&w) {
                Some((pos, rhs)) => {
                    for (rw, rc) in rhs.terms() {
                        let mut nw = w[..pos].to_vec();
                        nw.extend(rw.iter().cloned());
                        nw.extend(w[pos + 2..].iter().cloned());
                        pending.add_term(nw, &(&c * rc));
                    }
                }
                None => done.add_term(w, &c),
            }
        }
        done
    }

    pub fn is_irreducible(&self, w: &[L]) -> bool {
        self.find_redex(w).is_none()
    }

    /// Resolve every length-3 overlap `a b c` (with `a b` and `b c` both
    /// left-hand sides) both ways; return those whose normal forms differ.
    pub fn check_confluence(&self) -> Vec<Overlap<L>> {
        let mut out = Vec::new();
        for a in &self.overlap_letters {
            for b in &self.overlap_letters {
                let Some(ab) = self.rule_for(a, b) else { continue };
                for c in &self.overlap_letters {
                    let Some(bc) = self.rule_for(b, c) else { continue };
                    let left = self.reduce(&ab.concat(&WordComb::letter(c.clone())));
                    let right = self.reduce(&WordComb::letter(a.clone()).concat(bc));
                    if left != right {
                        out.push(Overlap {
                            word: vec![a.clone(), b.clone(), c.clone()],
                            via_left: left,
                            via_right: right,
                        });
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inversion_count() {
        assert_eq!(inversions(&[3, 1, 2]), 2);
        assert_eq!(inversions(&[1, 2, 3]), 0);
    }

    #[test]
    fn increasing_rule_is_rejected() {
        // 1 2 -> 2 1 increases the inversion count
        let rule = Rule {
            lhs: (1u8, 2u8),
            rhs: WordComb::word(vec![2, 1]),
        };
        let err = RewriteSystem::new("bad", vec![rule], vec![1, 2]).unwrap_err();
        assert!(matches!(err, Error::NonTerminating { .. }));
    }

    #[test]
    fn commutative_sorting_is_confluent() {
        let rules = vec![
            Rule { lhs: (2u8, 1u8), rhs: WordComb::word(vec![1, 2]) },
            Rule { lhs: (3u8, 1u8), rhs: WordComb::word(vec![1, 3]) },
            Rule { lhs: (3u8, 2u8), rhs: WordComb::word(vec![2, 3]) },
        ];
        let sys = RewriteSystem::new("sort", rules, vec![1, 2, 3]).unwrap();
        assert!(sys.check_confluence().is_empty());
        let nf = sys.reduce(&WordComb::word(vec![3, 2, 1, 3]));
        assert_eq!(nf, WordComb::word(vec![1, 2, 3, 3]));
    }

    #[test]
    fn length_cap_is_enforced() {
        let sys = RewriteSystem::<u8>::new("empty", vec![], vec![]).unwrap();
        let w = WordComb::word(vec![1u8; DEFAULT_MAX_WORD_LEN + 1]);
        assert!(matches!(sys.normal_form(&w), Err(Error::ResourceLimit { .. })));
    }
}
