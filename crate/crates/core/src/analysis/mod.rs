//! Spectra, ladder detection, equivalence and canonical parameters.

mod intertwiner;

use std::fmt;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::repmod::{Params, RepParams, Signs, Window};
use crate::scalars::{Coeff, Scalar};

pub use intertwiner::{find_intertwiner, generator_matrices, Intertwiner};

/// Half-exponents searched for `s = ±i q^{h/2}` in numeric mode.
pub const LADDER_SEARCH: i64 = 64;

#[derive(Clone, Debug)]
pub struct SpectrumReport<T: Coeff> {
    pub eigenvalues: Vec<(i64, T)>,
    /// Distinct eigenvalues with the indices carrying them.
    pub multiplicities: Vec<(T, Vec<i64>)>,
    pub degenerate_pairs: Vec<(i64, i64)>,
}

impl<T: Coeff> SpectrumReport<T> {
    pub fn max_multiplicity(&self) -> usize {
        self.multiplicities.iter().map(|(_, v)| v.len()).max().unwrap_or(0)
    }
}

/// `R(I)` eigenvalues on the window with coincidences grouped.
pub fn spectrum_i<T: Coeff>(p: &RepParams<T>, base: &Params<T>, w: Window) -> Result<SpectrumReport<T>> {
    let eigenvalues = p.i_diagonal(base, w)?;
    let mut multiplicities: Vec<(T, Vec<i64>)> = Vec::new();
    for (j, v) in &eigenvalues {
        let scale = v.magnitude().max(1.0);
        match multiplicities
            .iter_mut()
            .find(|(u, _)| (u.clone() - v.clone()).is_negligible(base.tol * scale.max(u.magnitude())))
        {
            Some((_, idx)) => idx.push(*j),
            None => multiplicities.push((v.clone(), vec![*j])),
        }
    }
    let mut degenerate_pairs = Vec::new();
    for (_, idx) in &multiplicities {
        for (a, x) in idx.iter().enumerate() {
            for y in &idx[a + 1..] {
                degenerate_pairs.push((*x, *y));
            }
        }
    }
    degenerate_pairs.sort();
    Ok(SpectrumReport {
        eigenvalues,
        multiplicities,
        degenerate_pairs,
    })
}

/// Position of `s` on the imaginary `q`-ladder `ε i q^{h/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LadderPoint {
    /// `s = ε i q^n`: `π_rs` does not extend to the localized algebra.
    NotExtendable { n: i64, eps: i8 },
    /// `s = ε i q^{m+1/2}`: `R_rs` is reducible.
    Degenerate { m: i64, eps: i8 },
}

pub fn ladder_point<T: Coeff>(s: &T, base: &Params<T>) -> Option<LadderPoint> {
    let (h, eps) = s.imag_t_power(&base.t, base.tol, -LADDER_SEARCH..=LADDER_SEARCH)?;
    Some(if h.rem_euclid(2) == 0 {
        LadderPoint::NotExtendable { n: h / 2, eps }
    } else {
        LadderPoint::Degenerate {
            m: (h - 1).div_euclid(2),
            eps,
        }
    })
}

/// `(m, ε)` with `s = ε i q^{m+1/2}`, if any.
pub fn is_degenerate_s<T: Coeff>(s: &T, base: &Params<T>) -> Option<(i64, i8)> {
    match ladder_point(s, base)? {
        LadderPoint::Degenerate { m, eps } => Some((m, eps)),
        LadderPoint::NotExtendable { .. } => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassLabel {
    ClassicalIrreducible,
    DegenerateReducible { m: i64, eps: i8 },
    NotExtendable { n: i64 },
    OneDimensional,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::ClassicalIrreducible => write!(f, "classical irreducible"),
            ClassLabel::DegenerateReducible { m, eps } => {
                write!(f, "degenerate reducible (m={m}, eps={eps})")
            }
            ClassLabel::NotExtendable { n } => write!(f, "not extendable (n={n})"),
            ClassLabel::OneDimensional => write!(f, "one-dimensional"),
        }
    }
}

pub fn classify_params<T: Coeff>(r: &T, s: &T, base: &Params<T>) -> Result<ClassLabel> {
    if r.is_negligible(base.tol) || s.is_negligible(base.tol) {
        return Err(Error::InvalidArgument("r and s must be nonzero".into()));
    }
    Ok(match ladder_point(s, base) {
        None => ClassLabel::ClassicalIrreducible,
        Some(LadderPoint::NotExtendable { n, .. }) => ClassLabel::NotExtendable { n },
        Some(LadderPoint::Degenerate { m, eps }) => ClassLabel::DegenerateReducible { m, eps },
    })
}

fn require_irreducible<T: Coeff + fmt::Display>(p: &RepParams<T>, base: &Params<T>) -> Result<()> {
    p.validate(base.tol)?;
    if let RepParams::ClassicalM2 { r, s } | RepParams::ClassicalIso2 { r, s } = p {
        match classify_params(r, s, base)? {
            ClassLabel::DegenerateReducible { .. } => return Err(Error::Reducible(p.to_string())),
            ClassLabel::NotExtendable { n } => return Err(Error::NonExtendable { n }),
            _ => {}
        }
    }
    Ok(())
}

fn same<T: Coeff>(a: &T, b: &T, tol: f64) -> bool {
    (a.clone() - b.clone()).is_negligible(tol * a.magnitude().max(b.magnitude()).max(1.0))
}

fn same_up_to_sign<T: Coeff>(a: &T, b: &T, tol: f64) -> bool {
    same(a, b, tol) || same(a, &-b.clone(), tol)
}

/// `s2 = q^n s1` for some integer `n`.
fn on_same_q_orbit<T: Coeff>(s1: &T, s2: &T, base: &Params<T>) -> bool {
    let Some(inv) = s1.try_inv(base.tol) else {
        return false;
    };
    let x = base.i() * s2.clone() * inv;
    matches!(
        x.imag_t_power(&base.t, base.tol, -LADDER_SEARCH..=LADDER_SEARCH),
        Some((h, 1)) if h.rem_euclid(2) == 0
    )
}

/// Equivalence of irreducible representations by parameter comparison.
pub fn equivalent_params<T: Coeff + fmt::Display>(
    a: &RepParams<T>,
    b: &RepParams<T>,
    base: &Params<T>,
) -> Result<bool> {
    require_irreducible(a, base)?;
    require_irreducible(b, base)?;
    if a.is_iso2() != b.is_iso2() {
        return Err(Error::MixedAlgebra(format!("{a} vs {b}")));
    }
    let tol = base.tol;
    Ok(match (a, b) {
        (RepParams::ClassicalM2 { r, s }, RepParams::ClassicalM2 { r: r2, s: s2 })
        | (RepParams::ClassicalIso2 { r, s }, RepParams::ClassicalIso2 { r: r2, s: s2 }) => {
            same_up_to_sign(r, r2, tol) && on_same_q_orbit(s, s2, base)
        }
        (RepParams::Nonclassical { r, signs }, RepParams::Nonclassical { r: r2, signs: g2 }) => {
            (same(r, r2, tol) && signs == g2)
                || (same(r, &-r2.clone(), tol) && signs.eps == g2.eps && signs.eps2 == -g2.eps2)
        }
        (RepParams::OneDimM2 { sigma }, RepParams::OneDimM2 { sigma: s2 }) => same(sigma, s2, tol),
        (RepParams::OneDimIso2 { c }, RepParams::OneDimIso2 { c: c2 }) => same(c, c2, tol),
        _ => false,
    })
}

/// Orbit representatives used by [`canonical_params`].
pub trait Canonical: Coeff {
    /// `Re x > 0`, or `Re x = 0` and `Im x > 0`.
    fn in_right_half(&self, tol: f64) -> bool;
    /// `n` such that `s q^{-n}` is the chosen representative of `s q^Z`.
    fn q_orbit_shift(&self, t: &Self, tol: f64) -> i64;
}

impl Canonical for Complex64 {
    fn in_right_half(&self, tol: f64) -> bool {
        let scale = self.norm() * tol;
        self.re > scale || (self.re.abs() <= scale && self.im > 0.0)
    }
    fn q_orbit_shift(&self, t: &Self, tol: f64) -> i64 {
        let lq = 2.0 * t.norm().ln();
        if lq.abs() < 1e-12 {
            return 0;
        }
        (self.norm().ln() / lq + tol.max(1e-12)).floor() as i64
    }
}

impl Canonical for Scalar {
    fn in_right_half(&self, _tol: f64) -> bool {
        match self.numer().leading() {
            Some((_, c)) => c.re.is_positive() || (c.re.is_zero() && c.im.is_positive()),
            None => false,
        }
    }
    fn q_orbit_shift(&self, t: &Self, _tol: f64) -> i64 {
        if *t != Scalar::t() || self.is_zero() {
            return 0;
        }
        let e = self.numer().min_exps()[0] as i64 - self.denom().min_exps()[0] as i64;
        e.div_euclid(2)
    }
}

/// Representative of the equivalence class of an irreducible family.
pub fn canonical_params<T: Canonical + fmt::Display>(p: &RepParams<T>, base: &Params<T>) -> Result<RepParams<T>> {
    require_irreducible(p, base)?;
    let tol = base.tol;
    let pos = |r: &T| {
        if r.in_right_half(tol) {
            r.clone()
        } else {
            -r.clone()
        }
    };
    let shift = |s: &T| -> Result<T> {
        let n = s.q_orbit_shift(&base.t, tol);
        Ok(s.clone() * base.t.powi(-2 * n, tol).ok_or(Error::DivisionByZero)?)
    };
    Ok(match p {
        RepParams::ClassicalM2 { r, s } => RepParams::ClassicalM2 { r: pos(r), s: shift(s)? },
        RepParams::ClassicalIso2 { r, s } => RepParams::ClassicalIso2 { r: pos(r), s: shift(s)? },
        RepParams::Nonclassical { r, signs } => {
            if r.in_right_half(tol) {
                p.clone()
            } else {
                RepParams::Nonclassical {
                    r: -r.clone(),
                    signs: Signs::new(signs.eps, -signs.eps2)?,
                }
            }
        }
        _ => p.clone(),
    })
}

/// `Tr R_r^{ε,ε̃}(T2) = -ε ε̃ r / (q^{1/2} - q^{-1/2})` for any basis size.
pub fn trace_t2_nonclassical<T: Coeff>(p: &Params<T>, signs: Signs, n: usize) -> Result<T> {
    if n == 0 {
        return Err(Error::InvalidArgument("basis size must be >= 1".into()));
    }
    let d = p.inv(&(p.t.clone() - p.t_pow(-1))).ok_or(Error::DivisionByZero)?;
    Ok(-(T::from_i64((signs.eps * signs.eps2) as i64) * p.r.clone() * d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(q: f64) -> Params<Complex64> {
        Params::numeric(Complex64::new(q, 0.0), Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))
    }

    #[test]
    fn spectrum_examples() {
        let base = at(4.0);
        let w = Window::new(-1, 1).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let rep = RepParams::ClassicalIso2 { r: one, s: one };
        let sp = spectrum_i(&rep, &base, w).unwrap();
        let i = Complex64::new(0.0, 1.0);
        assert!((sp.eigenvalues[2].1 - i).norm() < 1e-12);
        assert!((sp.eigenvalues[0].1 + i).norm() < 1e-12);
        assert!(sp.degenerate_pairs.is_empty());

        let nc = RepParams::Nonclassical { r: one, signs: Signs::new(1, 1).unwrap() };
        let sp = spectrum_i(&nc, &base, Window::new(0, 3).unwrap()).unwrap();
        assert!((sp.eigenvalues[0].1 - Complex64::new(-2.0 / 3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn exact_degenerate_spectrum_pairs() {
        let base = Params::symbolic();
        let rep = RepParams::ClassicalIso2 { r: Scalar::r(), s: &Scalar::i() * &Scalar::t() };
        let sp = spectrum_i(&rep, &base, Window::new(-3, 2).unwrap()).unwrap();
        assert_eq!(sp.degenerate_pairs, vec![(-3, 2), (-2, 1), (-1, 0)]);
        assert_eq!(sp.max_multiplicity(), 2);
    }

    #[test]
    fn ladder_examples() {
        let base = Params::symbolic();
        let i = Scalar::i();
        assert_eq!(is_degenerate_s(&(&i * &Scalar::t()), &base), Some((0, 1)));
        assert_eq!(is_degenerate_s(&Scalar::from_int(1), &base), None);
        assert_eq!(
            ladder_point(&-(&i * &Scalar::q_pow(3)), &base),
            Some(LadderPoint::NotExtendable { n: 3, eps: -1 })
        );
        assert_eq!(
            classify_params(&Scalar::r(), &-(&i * &Scalar::t_pow(5)), &base).unwrap(),
            ClassLabel::DegenerateReducible { m: 2, eps: -1 }
        );
        assert_eq!(
            classify_params(&Scalar::r(), &(&i * &Scalar::q_pow(2)), &base).unwrap(),
            ClassLabel::NotExtendable { n: 2 }
        );
        assert_eq!(
            classify_params(&Scalar::r(), &Scalar::s(), &base).unwrap(),
            ClassLabel::ClassicalIrreducible
        );

        let nb = at(1.7);
        let s = Complex64::new(0.0, -1.0) * 1.7f64.powf(2.5);
        assert_eq!(is_degenerate_s(&s, &nb), Some((2, -1)));
        assert_eq!(is_degenerate_s(&Complex64::new(0.8, 0.3), &nb), None);
    }

    #[test]
    fn equivalence_examples() {
        let base = Params::symbolic();
        let r = Scalar::r();
        let a = RepParams::ClassicalIso2 { r: r.clone(), s: Scalar::s() };
        let b = RepParams::ClassicalIso2 { r: -&r, s: &Scalar::q_pow(3) * &Scalar::s() };
        assert!(equivalent_params(&a, &b, &base).unwrap());
        let c = RepParams::ClassicalIso2 { r: r.clone(), s: &Scalar::t() * &Scalar::s() };
        assert!(!equivalent_params(&a, &c, &base).unwrap());

        let pp = RepParams::Nonclassical { r: r.clone(), signs: Signs::new(1, 1).unwrap() };
        let mm = RepParams::Nonclassical { r: -&r, signs: Signs::new(1, -1).unwrap() };
        assert!(equivalent_params(&pp, &mm, &base).unwrap());
        assert!(!equivalent_params(&pp, &a, &base).unwrap());

        let red = RepParams::ClassicalIso2 { r, s: &Scalar::i() * &Scalar::t() };
        assert!(matches!(equivalent_params(&red, &a, &base), Err(Error::Reducible(_))));
    }

    #[test]
    fn canonical_examples() {
        let base = Params::symbolic();
        let r = Scalar::r();
        let nc = RepParams::Nonclassical { r: -&r, signs: Signs::new(1, 1).unwrap() };
        assert_eq!(
            canonical_params(&nc, &base).unwrap(),
            RepParams::Nonclassical { r: r.clone(), signs: Signs::new(1, -1).unwrap() }
        );
        let cl = RepParams::ClassicalIso2 { r: r.clone(), s: &Scalar::q_pow(2) * &Scalar::s() };
        let c = canonical_params(&cl, &base).unwrap();
        assert_eq!(c, RepParams::ClassicalIso2 { r, s: Scalar::s() });
        assert_eq!(canonical_params(&c, &base).unwrap(), c);

        let nb = Params::numeric(Complex64::new(1.7, 0.0), Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
        let s = Complex64::new(0.8, 0.3);
        let p = RepParams::ClassicalIso2 { r: Complex64::new(-2.1, 0.0), s: s * 1.7f64.powi(5) };
        let RepParams::ClassicalIso2 { r, s: s2 } = canonical_params(&p, &nb).unwrap() else {
            unreachable!()
        };
        assert!(r.re > 0.0);
        assert!((1.0..1.7).contains(&s2.norm()));
        assert!(on_same_q_orbit(&s, &s2, &nb));
    }

    #[test]
    fn trace_matches_diagonal_sum() {
        let p = Params::symbolic();
        for (e, e2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let signs = Signs::new(e, e2).unwrap();
            let m = crate::repmod::nonclassical_matrix(crate::freealg::Iso2Gen::T2, &p, signs, 6).unwrap();
            let sum = m.domain().indices().fold(Scalar::zero(), |acc, j| &acc + &m.entry(j, j));
            assert_eq!(trace_t2_nonclassical(&p, signs, 6).unwrap(), sum);
            assert_eq!(trace_t2_nonclassical(&p, signs, 1).unwrap(), sum);
        }
    }
}
