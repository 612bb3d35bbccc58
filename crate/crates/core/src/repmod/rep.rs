use std::fmt;

use super::families::{Iso2Matrices, Signs};
use super::params::Params;
use super::window::{Window, WindowedOperator};
use crate::error::{Error, Result};
use crate::scalars::Coeff;

/// A representation family together with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum RepParams<T: Coeff> {
    ClassicalM2 { r: T, s: T },
    ClassicalIso2 { r: T, s: T },
    Nonclassical { r: T, signs: Signs },
    OneDimM2 { sigma: T },
    OneDimIso2 { c: T },
}

impl<T: Coeff + fmt::Display> fmt::Display for RepParams<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepParams::ClassicalM2 { r, s } => write!(f, "pi(r={r}, s={s})"),
            RepParams::ClassicalIso2 { r, s } => write!(f, "R(r={r}, s={s})"),
            RepParams::Nonclassical { r, signs } => {
                write!(f, "R(r={r}, eps={}, eps2={})", signs.eps, signs.eps2)
            }
            RepParams::OneDimM2 { sigma } => write!(f, "pi_sigma({sigma})"),
            RepParams::OneDimIso2 { c } => write!(f, "one-dim(I={c})"),
        }
    }
}

impl<T: Coeff> RepParams<T> {
    pub fn validate(&self, tol: f64) -> Result<()> {
        let (name, v) = match self {
            RepParams::ClassicalM2 { r, s } | RepParams::ClassicalIso2 { r, s } => {
                if s.is_negligible(tol) {
                    return Err(Error::InvalidArgument("s must be nonzero".into()));
                }
                ("r", r)
            }
            RepParams::Nonclassical { r, .. } => ("r", r),
            RepParams::OneDimM2 { sigma } => ("sigma", sigma),
            RepParams::OneDimIso2 { .. } => return Ok(()),
        };
        if v.is_negligible(tol) {
            return Err(Error::InvalidArgument(format!("{name} must be nonzero")));
        }
        Ok(())
    }

    pub fn is_iso2(&self) -> bool {
        !matches!(self, RepParams::ClassicalM2 { .. } | RepParams::OneDimM2 { .. })
    }

    /// Evaluation point carrying this family's `r` and `s` at the `q` of `base`.
    pub fn point(&self, base: &Params<T>) -> Params<T> {
        match self {
            RepParams::ClassicalM2 { r, s } | RepParams::ClassicalIso2 { r, s } => {
                base.with_r(r.clone()).with_s(s.clone())
            }
            RepParams::Nonclassical { r, .. } => base.with_r(r.clone()),
            _ => base.clone(),
        }
    }

    /// Generator matrices of an iso2 family. Classical families use `w`;
    /// nonclassical ones use `j = 0..w.len()-1`.
    pub fn iso2_matrices(&self, base: &Params<T>, w: Window) -> Result<Iso2Matrices<T>> {
        self.validate(base.tol)?;
        let p = self.point(base);
        match self {
            RepParams::ClassicalIso2 { .. } => Iso2Matrices::classical(&p, w),
            RepParams::Nonclassical { signs, .. } => Iso2Matrices::nonclassical(&p, *signs, w.len().max(2)),
            RepParams::OneDimIso2 { c } => Ok(Iso2Matrices::one_dim(c)),
            _ => Err(Error::InvalidArgument(
                "not a representation of U_q(iso2); use the R_rs family".into(),
            )),
        }
    }

    /// Diagonal of `R(I)` on the window, without requiring `R(T1)`, `R(T2)`.
    pub fn i_diagonal(&self, base: &Params<T>, w: Window) -> Result<Vec<(i64, T)>> {
        let p = self.point(base);
        let c = p.inv(&p.q_minus_qinv()).ok_or(Error::DivisionByZero)?;
        match self {
            RepParams::ClassicalIso2 { .. } => {
                let s_inv = p.s_inv()?;
                Ok(w.indices()
                    .map(|m| {
                        let v = p.i() * c.clone() * (p.s.clone() * p.q_pow(m) - s_inv.clone() * p.q_pow(-m));
                        (m, v)
                    })
                    .collect())
            }
            RepParams::Nonclassical { .. } | RepParams::OneDimIso2 { .. } => {
                let m = self.iso2_matrices(base, w)?;
                Ok(m.i.domain().indices().map(|j| (j, m.i.entry(j, j))).collect())
            }
            _ => Err(Error::InvalidArgument("R(I) is defined for iso2 families only".into())),
        }
    }
}

impl<T: Coeff> Iso2Matrices<T> {
    /// Columns whose images under every generator stay in the window.
    pub fn interior(&self) -> Option<Window> {
        let d = self.i.domain();
        let ok: Vec<i64> = d
            .indices()
            .filter(|j| {
                [&self.i, &self.t1, &self.t2].iter().all(|o: &&WindowedOperator<T>| {
                    o.column(*j).is_some_and(|c| c.keys().all(|k| d.contains(*k)))
                })
            })
            .collect();
        Window::new(*ok.first()?, *ok.last()?).ok()
    }
}
