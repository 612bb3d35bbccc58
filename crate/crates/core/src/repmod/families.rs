//! Matrices of `pi_rs`, `R_rs`, the nonclassical family and the
//! one-dimensional representations.

use serde::Serialize;

use super::params::Params;
use super::window::{SparseVec, Window, WindowedOperator};
use crate::error::{Error, Result};
use crate::freealg::{Iso2Element, Iso2Gen, M2Element, M2Gen};
use crate::scalars::Coeff;

/// Half-width of the ladder search beyond the window, in powers of `q`.
pub const LADDER_MARGIN: i64 = 8;

pub(crate) fn ladder_range(w: Option<Window>) -> std::ops::RangeInclusive<i64> {
    let reach = w.map_or(0, |w| w.lo.abs().max(w.hi.abs()));
    let n = 2 * (reach + LADDER_MARGIN);
    -n..=n
}

/// `Some(n)` if `s = ±i q^n` for an integer `n`, where `pi_rs` does not extend.
pub fn non_extendable_exponent<T: Coeff>(p: &Params<T>, w: Option<Window>) -> Option<i64> {
    match p.s.imag_t_power(&p.t, p.tol, ladder_range(w)) {
        Some((n2, _)) if n2 % 2 == 0 => Some(n2 / 2),
        _ => None,
    }
}

/// Generator matrix of `pi_rs` on `w`.
pub fn pi_rs_matrix<T: Coeff>(gen: M2Gen, p: &Params<T>, w: Window) -> Result<WindowedOperator<T>> {
    let s_inv = p.s_inv()?;
    match gen {
        M2Gen::K => WindowedOperator::diagonal(w, |m| Ok(p.s.clone() * p.q_pow(m))),
        M2Gen::Kinv => WindowedOperator::diagonal(w, |m| Ok(s_inv.clone() * p.q_pow(-m))),
        M2Gen::E => WindowedOperator::from_columns(w, |m| Ok(SparseVec::from([(m + 1, p.r.clone())]))),
        M2Gen::F => WindowedOperator::from_columns(w, |m| Ok(SparseVec::from([(m - 1, p.r.clone())]))),
        M2Gen::G(k) => {
            if let Some(n) = non_extendable_exponent(p, Some(w)) {
                return Err(Error::NonExtendable { n });
            }
            let k = k as i64;
            WindowedOperator::diagonal(w, |m| {
                let d = p.d_value(k, m)?;
                p.inv(&d).ok_or(Error::NonExtendable { n: -(k + m) })
            })
        }
    }
}

/// `pi_rs(x)` for an element of `Û_q(m2)`, assembled by composing generator
/// matrices term by term.
pub fn pi_rs_eval<T: Coeff>(x: &M2Element, p: &Params<T>, w: Window) -> Result<Option<WindowedOperator<T>>> {
    let mut terms: Vec<(T, WindowedOperator<T>)> = Vec::new();
    for (&(a, b), phi) in x.terms() {
        for (c, e, g) in phi.expanded_terms() {
            // F^a E^b K^e prod G_k^m, applied right to left
            let mut op = WindowedOperator::identity(w);
            for &(k, mult) in &g {
                let gk = pi_rs_matrix(M2Gen::G(k), p, w)?;
                for _ in 0..mult {
                    op = gk.compose(&op).expect("diagonal composition");
                }
            }
            let kg = if e >= 0 { M2Gen::K } else { M2Gen::Kinv };
            let km = pi_rs_matrix(kg, p, w)?;
            for _ in 0..e.unsigned_abs() {
                op = km.compose(&op).expect("diagonal composition");
            }
            let em = pi_rs_matrix(M2Gen::E, p, w)?;
            let fm = pi_rs_matrix(M2Gen::F, p, w)?;
            for _ in 0..b {
                match em.compose(&op) {
                    Some(o) => op = o,
                    None => return Ok(None),
                }
            }
            for _ in 0..a {
                match fm.compose(&op) {
                    Some(o) => op = o,
                    None => return Ok(None),
                }
            }
            terms.push((p.embed(&c)?, op));
        }
    }
    if terms.is_empty() {
        return Ok(Some(WindowedOperator::from_columns(w, |_| Ok(SparseVec::new()))?));
    }
    let refs: Vec<(T, &WindowedOperator<T>)> = terms.iter().map(|(c, o)| (c.clone(), o)).collect();
    Ok(WindowedOperator::lincomb(&refs))
}

/// Indices `m` in `w` where `s q^m + s^{-1} q^{-m}` vanishes.
pub fn poles_on_window<T: Coeff>(p: &Params<T>, w: Window) -> Result<Vec<i64>> {
    let s_inv = p.s_inv()?;
    let mut out = Vec::new();
    for m in w.indices() {
        let a = p.s.clone() * p.q_pow(m);
        let b = s_inv.clone() * p.q_pow(-m);
        let scale = a.magnitude().max(b.magnitude());
        if p.vanishes(&(a + b), if scale.is_finite() { scale } else { 1.0 }) {
            out.push(m);
        }
    }
    Ok(out)
}

/// Generator matrix of `R_rs` on `w`, in the printed normalization.
pub fn r_rs_matrix<T: Coeff>(gen: Iso2Gen, p: &Params<T>, w: Window) -> Result<WindowedOperator<T>> {
    let poles = poles_on_window(p, w)?;
    if !poles.is_empty() {
        return Err(Error::PoleOnWindow { indices: poles });
    }
    let s_inv = p.s_inv()?;
    let i = p.i();
    let d_inv = |m: i64| -> Result<T> {
        let d = p.d_value(0, m)?;
        p.inv(&d).ok_or(Error::PoleOnWindow { indices: vec![m] })
    };
    match gen {
        Iso2Gen::I => {
            let c = p.inv(&p.q_minus_qinv()).ok_or(Error::DivisionByZero)?;
            WindowedOperator::diagonal(w, |m| {
                Ok(i.clone() * c.clone() * (p.s.clone() * p.q_pow(m) - s_inv.clone() * p.q_pow(-m)))
            })
        }
        Iso2Gen::T2 => WindowedOperator::from_columns(w, |m| {
            let c = p.r.clone() * d_inv(m)?;
            Ok(SparseVec::from([(m + 1, c.clone()), (m - 1, c)]))
        }),
        Iso2Gen::T1 => WindowedOperator::from_columns(w, |m| {
            let c = i.clone() * p.t.clone() * p.r.clone() * d_inv(m)?;
            Ok(SparseVec::from([
                (m + 1, c.clone() * p.s.clone() * p.q_pow(m)),
                (m - 1, -(c * s_inv.clone() * p.q_pow(-m))),
            ]))
        }),
    }
}

/// Sign parameters of the nonclassical family.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize)]
pub struct Signs {
    pub eps: i8,
    pub eps2: i8,
}

impl Signs {
    pub fn new(eps: i8, eps2: i8) -> Result<Self> {
        if eps.abs() != 1 || eps2.abs() != 1 {
            return Err(Error::InvalidArgument(format!(
                "signs must be ±1, got ({eps}, {eps2})"
            )));
        }
        Ok(Self { eps, eps2 })
    }
}

fn sign<T: Coeff>(e: i8) -> T {
    T::from_i64(e as i64)
}

/// Generator matrix of `R_r^{ε,ε̃}` on `j = 0..n-1`. The `j = 0` column of
/// `T2` carries the factor `ε`, which the relations require.
pub fn nonclassical_matrix<T: Coeff>(
    gen: Iso2Gen,
    p: &Params<T>,
    signs: Signs,
    n: usize,
) -> Result<WindowedOperator<T>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("basis size {n} < 2")));
    }
    let w = Window::new(0, n as i64 - 1)?;
    let eps: T = sign(signs.eps);
    let eps2: T = sign(signs.eps2);
    let i = p.i();
    let q = p.q_pow(1);
    // q^{j+1/2} ± q^{-j-1/2}
    let half = |j: i64, plus: bool| -> T {
        let a = p.t_pow(2 * j + 1);
        let b = p.t_pow(-2 * j - 1);
        if plus {
            a + b
        } else {
            a - b
        }
    };
    let inv = |x: T| p.inv(&x).ok_or(Error::DivisionByZero);
    match gen {
        Iso2Gen::I => {
            let c = inv(p.q_minus_qinv())?;
            WindowedOperator::diagonal(w, |j| Ok(-(eps.clone() * half(j, true) * c.clone())))
        }
        Iso2Gen::T2 => WindowedOperator::from_columns(w, |j| {
            if j == 0 {
                let c = -(eps.clone() * p.r.clone() * inv(half(0, false))?);
                Ok(SparseVec::from([(0, c.clone() * eps2.clone()), (1, c * i.clone())]))
            } else {
                let c = -(eps.clone() * i.clone() * p.r.clone() * inv(half(j, false))?);
                Ok(SparseVec::from([(j + 1, c.clone()), (j - 1, c)]))
            }
        }),
        Iso2Gen::T1 => WindowedOperator::from_columns(w, |j| {
            if j == 0 {
                let c = p.r.clone() * inv(half(0, false))?;
                Ok(SparseVec::from([(0, c.clone() * eps2.clone()), (1, c * i.clone() * q.clone())]))
            } else {
                let c = i.clone() * p.r.clone() * inv(half(j, false))?;
                Ok(SparseVec::from([
                    (j + 1, c.clone() * p.q_pow(j + 1)),
                    (j - 1, c * p.q_pow(-j)),
                ]))
            }
        }),
    }
}

/// One-dimensional representation families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OneDimFamily {
    pub algebra: &'static str,
    pub parameter: &'static str,
    pub images: Vec<(&'static str, &'static str)>,
}

pub fn one_dim_reps(algebra: crate::freealg::Algebra) -> OneDimFamily {
    match algebra {
        crate::freealg::Algebra::M2 => OneDimFamily {
            algebra: "m2",
            parameter: "sigma != 0",
            images: vec![("K", "sigma"), ("Kinv", "sigma^-1"), ("E", "0"), ("F", "0")],
        },
        crate::freealg::Algebra::Iso2 => OneDimFamily {
            algebra: "iso2",
            parameter: "c",
            images: vec![("I", "c"), ("T1", "0"), ("T2", "0")],
        },
    }
}

/// `1x1` generator matrices of the iso2 one-dimensional representation `I = c`.
pub fn one_dim_iso2_matrix<T: Coeff>(gen: Iso2Gen, c: &T) -> WindowedOperator<T> {
    let w = Window { lo: 0, hi: 0 };
    let v = match gen {
        Iso2Gen::I => c.clone(),
        _ => T::zero(),
    };
    WindowedOperator::diagonal(w, |_| Ok(v.clone())).expect("infallible")
}

/// Generator matrices of an iso2 representation on a common window.
#[derive(Clone, Debug)]
pub struct Iso2Matrices<T: Coeff> {
    pub i: WindowedOperator<T>,
    pub t1: WindowedOperator<T>,
    pub t2: WindowedOperator<T>,
}

impl<T: Coeff> Iso2Matrices<T> {
    pub fn get(&self, g: Iso2Gen) -> &WindowedOperator<T> {
        match g {
            Iso2Gen::I => &self.i,
            Iso2Gen::T1 => &self.t1,
            Iso2Gen::T2 => &self.t2,
        }
    }

    pub fn classical(p: &Params<T>, w: Window) -> Result<Self> {
        Ok(Self {
            i: r_rs_matrix(Iso2Gen::I, p, w)?,
            t1: r_rs_matrix(Iso2Gen::T1, p, w)?,
            t2: r_rs_matrix(Iso2Gen::T2, p, w)?,
        })
    }

    pub fn nonclassical(p: &Params<T>, signs: Signs, n: usize) -> Result<Self> {
        Ok(Self {
            i: nonclassical_matrix(Iso2Gen::I, p, signs, n)?,
            t1: nonclassical_matrix(Iso2Gen::T1, p, signs, n)?,
            t2: nonclassical_matrix(Iso2Gen::T2, p, signs, n)?,
        })
    }

    pub fn one_dim(c: &T) -> Self {
        Self {
            i: one_dim_iso2_matrix(Iso2Gen::I, c),
            t1: one_dim_iso2_matrix(Iso2Gen::T1, c),
            t2: one_dim_iso2_matrix(Iso2Gen::T2, c),
        }
    }

    /// Representation matrix of `x` from its PBW expansion.
    pub fn eval(&self, x: &Iso2Element, p: &Params<T>) -> Result<Option<WindowedOperator<T>>> {
        super::relations::eval_words(&x.to_words(), p, self.i.domain(), |g| Ok(self.get(*g).clone()))
    }
}
