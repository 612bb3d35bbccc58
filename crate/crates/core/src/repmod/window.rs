//! Finite index windows and sparse operators between them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::Coeff;

/// Inclusive range of basis indices.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!("empty window {lo}:{hi}")));
        }
        Ok(Self { lo, hi })
    }

    pub fn contains(&self, i: i64) -> bool {
        self.lo <= i && i <= self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    /// Drop `k` indices from each end; `None` if nothing remains.
    pub fn shrink(&self, k: i64) -> Option<Self> {
        Self::new(self.lo + k, self.hi - k).ok()
    }

    pub fn expand(&self, k: i64) -> Self {
        Self {
            lo: self.lo - k,
            hi: self.hi + k,
        }
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        Self::new(self.lo.max(other.lo), self.hi.min(other.hi)).ok()
    }

    pub fn hull(&self, other: &Self) -> Self {
        Self {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

impl FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("window `{s}` is not lo:hi")))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidArgument(format!("bad window bound `{x}`")))
        };
        Self::new(parse(a)?, parse(b)?)
    }
}

/// Sparse vector over basis indices.
pub type SparseVec<T> = BTreeMap<i64, T>;

pub(crate) fn axpy<T: Coeff>(y: &mut SparseVec<T>, a: &T, x: &SparseVec<T>) {
    for (i, v) in x {
        let nv = match y.remove(i) {
            Some(old) => old + a.clone() * v.clone(),
            None => a.clone() * v.clone(),
        };
        if !nv.is_negligible(0.0) {
            y.insert(*i, nv);
        }
    }
}

/// A linear map from `span(domain)` into `span(codomain)`, stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct WindowedOperator<T: Coeff> {
    domain: Window,
    codomain: Window,
    cols: Vec<SparseVec<T>>,
}

impl<T: Coeff> WindowedOperator<T> {
    /// Build from a column function; the codomain is the hull of the domain
    /// and every row produced.
    pub fn from_columns(
        domain: Window,
        mut col: impl FnMut(i64) -> Result<SparseVec<T>>,
    ) -> Result<Self> {
        let mut codomain = domain;
        let mut cols = Vec::with_capacity(domain.len());
        for j in domain.indices() {
            let mut c = col(j)?;
            c.retain(|_, v| !v.is_negligible(0.0));
            for &i in c.keys() {
                codomain = codomain.hull(&Window { lo: i, hi: i });
            }
            cols.push(c);
        }
        Ok(Self {
            domain,
            codomain,
            cols,
        })
    }

    pub fn identity(domain: Window) -> Self {
        Self {
            domain,
            codomain: domain,
            cols: domain
                .indices()
                .map(|j| SparseVec::from([(j, T::one())]))
                .collect(),
        }
    }

    pub fn diagonal(domain: Window, f: impl FnMut(i64) -> Result<T>) -> Result<Self> {
        let mut f = f;
        Self::from_columns(domain, |j| Ok(SparseVec::from([(j, f(j)?)])))
    }

    pub fn domain(&self) -> Window {
        self.domain
    }

    pub fn codomain(&self) -> Window {
        self.codomain
    }

    pub fn column(&self, j: i64) -> Option<&SparseVec<T>> {
        if self.domain.contains(j) {
            Some(&self.cols[(j - self.domain.lo) as usize])
        } else {
            None
        }
    }

    pub fn entry(&self, i: i64, j: i64) -> T {
        self.column(j)
            .and_then(|c| c.get(&i).cloned())
            .unwrap_or_else(T::zero)
    }

    /// Nonzero entries as `(row, col, value)`, column-major.
    pub fn entries(&self) -> Vec<(i64, i64, T)> {
        let mut out = Vec::new();
        for (k, c) in self.cols.iter().enumerate() {
            let j = self.domain.lo + k as i64;
            for (i, v) in c {
                out.push((*i, j, v.clone()));
            }
        }
        out
    }

    /// Apply to a vector supported in the domain; `None` otherwise.
    pub fn apply(&self, v: &SparseVec<T>) -> Option<SparseVec<T>> {
        let mut out = SparseVec::new();
        for (j, x) in v {
            axpy(&mut out, x, self.column(*j)?);
        }
        Some(out)
    }

    /// `self ∘ other`, kept on the columns of `other` whose image lies in
    /// the domain of `self`. `None` if no column survives.
    pub fn compose(&self, other: &Self) -> Option<Self> {
        let ok: Vec<i64> = other
            .domain
            .indices()
            .filter(|j| {
                other
                    .column(*j)
                    .is_some_and(|c| c.keys().all(|i| self.domain.contains(*i)))
            })
            .collect();
        let lo = *ok.first()?;
        let hi = *ok.last()?;
        let domain = Window::new(lo, hi).ok()?;
        let mut cols = Vec::with_capacity(domain.len());
        for j in domain.indices() {
            cols.push(self.apply(other.column(j)?)?);
        }
        Some(Self {
            domain,
            codomain: self.codomain,
            cols,
        })
    }

    /// Restrict to a sub-window of the domain.
    pub fn restrict(&self, w: Window) -> Option<Self> {
        let d = self.domain.intersect(&w)?;
        let start = (d.lo - self.domain.lo) as usize;
        Some(Self {
            domain: d,
            codomain: self.codomain,
            cols: self.cols[start..start + d.len()].to_vec(),
        })
    }

    /// `sum_k c_k A_k` on the intersection of the domains.
    pub fn lincomb(terms: &[(T, &Self)]) -> Option<Self> {
        let (_, first) = terms.first()?;
        let mut domain = first.domain;
        let mut codomain = first.codomain;
        for (_, a) in terms {
            domain = domain.intersect(&a.domain)?;
            codomain = codomain.hull(&a.codomain);
        }
        let cols = domain
            .indices()
            .map(|j| {
                let mut acc = SparseVec::new();
                for (c, a) in terms {
                    if let Some(col) = a.column(j) {
                        axpy(&mut acc, c, col);
                    }
                }
                acc
            })
            .collect();
        Some(Self {
            domain,
            codomain,
            cols,
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::lincomb(&[(c.clone(), self)]).expect("non-empty domain")
    }

    /// Largest entry magnitude (0 for the zero operator; infinite for any
    /// nonzero exact entry).
    pub fn max_abs(&self) -> f64 {
        self.cols
            .iter()
            .flat_map(|c| c.values())
            .map(|v| v.magnitude())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.cols
            .iter()
            .flat_map(|c| c.values())
            .all(|v| v.is_negligible(tol))
    }

    /// `Some(λ)` if the operator is `λ` times the inclusion of its domain.
    pub fn scalar_value(&self, tol: f64) -> Option<T> {
        let mut lambda: Option<T> = None;
        for j in self.domain.indices() {
            let col = self.column(j)?;
            for (i, v) in col {
                if *i != j && !v.is_negligible(tol) {
                    return None;
                }
            }
            let d = col.get(&j).cloned().unwrap_or_else(T::zero);
            match &lambda {
                None => lambda = Some(d),
                Some(l) => {
                    if !(l.clone() - d).is_negligible(tol) {
                        return None;
                    }
                }
            }
        }
        lambda
    }

    /// Entrywise equality on a common domain, within `tol` relative to the
    /// largest entry (exact equality in exact mode).
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.domain != other.domain {
            return false;
        }
        let scale = self.max_abs().max(other.max_abs());
        let tol = tol * if scale.is_finite() { scale.max(1.0) } else { 1.0 };
        self.domain.indices().all(|j| {
            let a = self.column(j).expect("in domain");
            let b = other.column(j).expect("in domain");
            a.keys().chain(b.keys()).all(|i| {
                let x = a.get(i).cloned().unwrap_or_else(T::zero);
                let y = b.get(i).cloned().unwrap_or_else(T::zero);
                (x - y).is_negligible(tol)
            })
        })
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> WindowedOperator<U> {
        WindowedOperator {
            domain: self.domain,
            codomain: self.codomain,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|(i, v)| (*i, f(v))).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn shift(w: Window, d: i64) -> WindowedOperator<Complex64> {
        WindowedOperator::from_columns(w, |j| Ok(SparseVec::from([(j + d, Complex64::new(1.0, 0.0))])))
            .unwrap()
    }

    #[test]
    fn parse_window() {
        assert_eq!("-3:4".parse::<Window>().unwrap(), Window { lo: -3, hi: 4 });
        assert!("4:-3".parse::<Window>().is_err());
        assert!("4".parse::<Window>().is_err());
    }

    #[test]
    fn composition_shrinks_domain() {
        let w = Window::new(-5, 5).unwrap();
        let up = shift(w, 1);
        let down = shift(w, -1);
        let id = down.compose(&up).unwrap();
        assert_eq!(id.domain(), Window::new(-5, 4).unwrap());
        assert_eq!(id.scalar_value(0.0), Some(Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn lincomb_intersects_domains() {
        let w = Window::new(0, 3).unwrap();
        let a = shift(w, 1);
        let b = shift(Window::new(1, 5).unwrap(), 1);
        let d = WindowedOperator::lincomb(&[(Complex64::new(1.0, 0.0), &a), (Complex64::new(-1.0, 0.0), &b)])
            .unwrap();
        assert_eq!(d.domain(), Window::new(1, 3).unwrap());
        assert!(d.is_zero(0.0));
    }
}
