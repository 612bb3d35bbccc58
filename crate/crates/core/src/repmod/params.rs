use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalars::{Coeff, Scalar, DEFAULT_POLE_TOL};

/// Evaluation point `(t = q^{1/2}, s, r)` for representation matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct Params<T: Coeff> {
    pub t: T,
    pub s: T,
    pub r: T,
    pub tol: f64,
}

impl Params<Scalar> {
    /// Free `t`, `s`, `r`.
    pub fn symbolic() -> Self {
        Self {
            t: Scalar::t(),
            s: Scalar::s(),
            r: Scalar::r(),
            tol: 0.0,
        }
    }

    /// Symbolic `q` with the given `s` and `r`.
    pub fn exact(s: Scalar, r: Scalar) -> Self {
        Self {
            t: Scalar::t(),
            s,
            r,
            tol: 0.0,
        }
    }
}

impl Params<Complex64> {
    /// Numeric point; `t` is the principal square root of `q`.
    pub fn numeric(q: Complex64, s: Complex64, r: Complex64) -> Self {
        Self {
            t: q.sqrt(),
            s,
            r,
            tol: DEFAULT_POLE_TOL,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn q_value(&self) -> Complex64 {
        self.t * self.t
    }
}

impl<T: Coeff> Params<T> {
    pub fn with_s(&self, s: T) -> Self {
        Self {
            s,
            ..self.clone()
        }
    }

    pub fn with_r(&self, r: T) -> Self {
        Self {
            r,
            ..self.clone()
        }
    }

    pub fn t_pow(&self, n: i64) -> T {
        self.t
            .powi(n, self.tol)
            .expect("t is nonzero at every admissible evaluation point")
    }

    pub fn q_pow(&self, n: i64) -> T {
        self.t_pow(2 * n)
    }

    pub fn s_inv(&self) -> Result<T> {
        self.s.try_inv(self.tol).ok_or(Error::DivisionByZero)
    }

    pub fn inv(&self, x: &T) -> Option<T> {
        x.try_inv(self.tol)
    }

    /// Evaluate an exact scalar at this point.
    pub fn embed(&self, x: &Scalar) -> Result<T> {
        T::embed(x, &[self.t.clone(), self.s.clone(), self.r.clone()], self.tol)
    }

    pub fn i(&self) -> T {
        T::imag_unit()
    }

    /// `q - q^{-1}`.
    pub fn q_minus_qinv(&self) -> T {
        self.q_pow(1) - self.q_pow(-1)
    }

    /// `D_k(m) = q^k s q^m + q^{-k} s^{-1} q^{-m}`, the eigenvalue of `D_k` on `|m>`.
    pub fn d_value(&self, k: i64, m: i64) -> Result<T> {
        Ok(self.q_pow(k + m) * self.s.clone() + self.q_pow(-k - m) * self.s_inv()?)
    }

    /// Whether a value vanishes (exactly, or relative to `scale` in numeric mode).
    pub fn vanishes(&self, x: &T, scale: f64) -> bool {
        x.is_negligible(self.tol * scale.max(1.0))
    }
}
