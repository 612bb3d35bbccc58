//! Common arithmetic surface for exact (`Scalar`) and numeric (`Complex64`) entries.

use std::fmt::Debug;
use std::ops::RangeInclusive;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::gauss::GaussianRational;
use super::scalar::Scalar;
use crate::error::Result;

pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn imag_unit() -> Self;
    fn from_i64(n: i64) -> Self;
    /// Inverse, or `None` when the value is (numerically) zero.
    fn try_inv(&self, tol: f64) -> Option<Self>;
    /// Whether the value is zero (exactly, or within `tol` in numeric mode).
    fn is_negligible(&self, tol: f64) -> bool;
    fn magnitude(&self) -> f64;
    /// Image of an exact scalar under `t, s, r -> at[0], at[1], at[2]`.
    fn embed(x: &Scalar, at: &[Self; 3], tol: f64) -> Result<Self>;
    /// Find `(n, ε)` with `self = ε i t^n`, searching `n` in `range` (numeric)
    /// or deciding exactly (exact mode, where `t` must be the free variable).
    fn imag_t_power(&self, t: &Self, tol: f64, range: RangeInclusive<i64>) -> Option<(i64, i8)>;

    fn powi(&self, n: i64, tol: f64) -> Option<Self> {
        let base = if n < 0 { self.try_inv(tol)? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b.clone();
            }
            e >>= 1;
            if e > 0 {
                b = b.clone() * b;
            }
        }
        Some(acc)
    }
}

impl Coeff for Scalar {
    fn imag_unit() -> Self {
        Scalar::i()
    }
    fn from_i64(n: i64) -> Self {
        Scalar::from_int(n)
    }
    fn try_inv(&self, _tol: f64) -> Option<Self> {
        self.inv().ok()
    }
    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            f64::INFINITY
        }
    }
    fn powi(&self, n: i64, _tol: f64) -> Option<Self> {
        self.pow(n).ok()
    }
    fn embed(x: &Scalar, at: &[Self; 3], _tol: f64) -> Result<Self> {
        if at[0] == Scalar::t() && at[1] == Scalar::s() && at[2] == Scalar::r() {
            return Ok(x.clone());
        }
        x.substitute(&at[0], &at[1], &at[2])
    }
    fn imag_t_power(&self, t: &Self, _tol: f64, _range: RangeInclusive<i64>) -> Option<(i64, i8)> {
        if *t != Scalar::t() || !self.is_polynomial() || !self.numer().is_monomial() {
            return None;
        }
        let (e, c) = self.numer().leading()?;
        if e[1] != 0 || e[2] != 0 {
            return None;
        }
        let i = GaussianRational::i();
        if *c == i {
            Some((e[0] as i64, 1))
        } else if *c == -i {
            Some((e[0] as i64, -1))
        } else {
            None
        }
    }
}

impl Coeff for Complex64 {
    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn try_inv(&self, tol: f64) -> Option<Self> {
        if self.norm() <= tol {
            None
        } else {
            Some(self.inv())
        }
    }
    fn is_negligible(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn embed(x: &Scalar, at: &[Self; 3], tol: f64) -> Result<Self> {
        x.eval_point_tol(at, tol)
    }
    fn imag_t_power(&self, t: &Self, tol: f64, range: RangeInclusive<i64>) -> Option<(i64, i8)> {
        let mut range = range;
        // |s| = |t|^n pins n down when |t| != 1
        let lt = t.norm().ln();
        if lt.abs() > 1e-12 {
            let c = (self.norm().ln() / lt).round() as i64;
            range = (*range.start()).min(c - 2)..=(*range.end()).max(c + 2);
        }
        let i = Complex64::new(0.0, 1.0);
        for n in range {
            let p = i * t.powi(n as i32);
            let scale = self.norm().max(p.norm());
            for eps in [1i8, -1] {
                if (self - p * eps as f64).norm() <= tol * scale {
                    return Some((n, eps));
                }
            }
        }
        None
    }
}
