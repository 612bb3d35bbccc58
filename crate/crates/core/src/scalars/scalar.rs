use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::gauss::GaussianRational;
use super::laurent::{Exps, LaurentPoly};
use crate::error::{Error, Result};

/// Default relative tolerance for pole detection in numeric evaluation.
pub const DEFAULT_POLE_TOL: f64 = 1e-9;

/// An element of the fraction field of `Q(i)[t^±1, s^±1, r^±1]`, with `t = q^{1/2}`.
///
/// Stored reduced: the denominator is a polynomial without monomial content,
/// coprime to the numerator, with leading coefficient 1 in the lexicographic
/// `(e_t, e_s, e_r)` order. All monomial factors live in the numerator, so
/// equal fractions have identical storage.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Scalar {
    pub fn from_parts(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let m = den.min_exps();
        let unshift = [-m[0], -m[1], -m[2]];
        let mut num = num.shift(&unshift);
        let mut den = den.shift(&unshift);
        if !den.is_constant() {
            let g = LaurentPoly::gcd(&num, &den);
            if !g.is_one() {
                num = num.exact_div(&g).expect("gcd divides numerator");
                den = den.exact_div(&g).expect("gcd divides denominator");
            }
        }
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Self { num, den }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn from_gauss(c: GaussianRational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_gauss(GaussianRational::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_gauss(GaussianRational::from_ratio(n, d))
    }

    pub fn monomial(e: Exps, c: GaussianRational) -> Self {
        Self::from_poly(LaurentPoly::monomial(e, c))
    }

    pub fn i() -> Self {
        Self::from_gauss(GaussianRational::i())
    }

    /// `t = q^{1/2}`.
    pub fn t() -> Self {
        Self::from_poly(LaurentPoly::var(0))
    }

    pub fn s() -> Self {
        Self::from_poly(LaurentPoly::var(1))
    }

    pub fn r() -> Self {
        Self::from_poly(LaurentPoly::var(2))
    }

    /// `t^n = q^{n/2}`.
    pub fn t_pow(n: i64) -> Self {
        Self::monomial([n as i32, 0, 0], GaussianRational::one())
    }

    /// `q^n = t^{2n}`.
    pub fn q_pow(n: i64) -> Self {
        Self::t_pow(2 * n)
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Value as a Gaussian rational when the scalar is constant.
    pub fn constant_value(&self) -> Option<GaussianRational> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Evaluate at the point `(q, s, r)` with `t` the principal square root of `q`.
    pub fn eval_numeric(&self, q: Complex64, s: Complex64, r: Complex64) -> Result<Complex64> {
        self.eval_numeric_tol(q, s, r, DEFAULT_POLE_TOL)
    }

    pub fn eval_numeric_tol(
        &self,
        q: Complex64,
        s: Complex64,
        r: Complex64,
        tol: f64,
    ) -> Result<Complex64> {
        self.eval_point_tol(&[q.sqrt(), s, r], tol)
    }

    /// Evaluate at explicit values of `(t, s, r)`.
    pub fn eval_point_tol(&self, vals: &[Complex64; 3], tol: f64) -> Result<Complex64> {
        let d = self.den.eval(vals);
        let scale = self.den.eval_abs_scale(vals);
        if d.norm() <= tol * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::EvaluationPole {
                factor: self.den.to_string(),
            });
        }
        Ok(self.num.eval(vals) / d)
    }

    /// Substitute scalars for `t`, `s`, `r`.
    pub fn substitute(&self, t: &Scalar, s: &Scalar, r: &Scalar) -> Result<Self> {
        let sub = |p: &LaurentPoly| -> Result<Scalar> {
            let mut acc = Scalar::zero();
            for (e, c) in p.terms() {
                let term = &(&(&t.pow(e[0] as i64)? * &s.pow(e[1] as i64)?) * &r.pow(e[2] as i64)?)
                    * &Scalar::from_gauss(c.clone());
                acc = &acc + &term;
            }
            Ok(acc)
        };
        sub(&self.num)?.checked_div(&sub(&self.den)?)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return Scalar::from_poly(&self.num + &rhs.num);
            }
            return Scalar::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = LaurentPoly::gcd(&self.den, &rhs.den);
        let bg = self.den.exact_div(&g).expect("gcd divides");
        let dg = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &dg) + &(&rhs.num * &bg);
        Scalar::reduce(num, &bg * &rhs.den)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel so the product is already reduced up to normalization
        let g1 = LaurentPoly::gcd(&self.num, &rhs.den);
        let g2 = LaurentPoly::gcd(&rhs.num, &self.den);
        let a = self.num.exact_div(&g1).expect("gcd divides");
        let d = rhs.den.exact_div(&g1).expect("gcd divides");
        let c = rhs.num.exact_div(&g2).expect("gcd divides");
        let b = self.den.exact_div(&g2).expect("gcd divides");
        let num = &a * &c;
        let den = &b * &d;
        let m = den.min_exps();
        let unshift = [-m[0], -m[1], -m[2]];
        let (num, den) = (num.shift(&unshift), den.shift(&unshift));
        let lc = den.leading().map(|(_, c)| c.clone()).unwrap();
        let inv = lc.inv().unwrap();
        Scalar {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})/({})", self.num, self.den)
        } else {
            write!(f, "{}/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_times_i() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn difference_of_squares() {
        let t = Scalar::t();
        let ti = t.inv().unwrap();
        let lhs = &(&t - &ti) * &(&t + &ti);
        assert_eq!(lhs, &Scalar::t_pow(2) - &Scalar::t_pow(-2));
    }

    #[test]
    fn reciprocal_evaluates_to_four_fifteenths() {
        let x = (&Scalar::t_pow(2) - &Scalar::t_pow(-2)).inv().unwrap();
        let v = x
            .eval_numeric(Complex64::new(4.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))
            .unwrap();
        // t = 2
        assert!((v - Complex64::new(4.0 / 15.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn equal_fractions_share_storage() {
        let t = Scalar::t();
        let s = Scalar::s();
        let a = (&(&t * &s) + &Scalar::one()).inv().unwrap();
        let num = &t - &Scalar::one();
        let b = num.checked_div(&(&num * &(&(&t * &s) + &Scalar::one()))).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.numer(), b.numer());
        assert_eq!(a.denom(), b.denom());
    }

    #[test]
    fn pole_is_reported() {
        let x = (&Scalar::q() - &Scalar::one()).inv().unwrap();
        let one = Complex64::new(1.0, 0.0);
        assert!(matches!(
            x.eval_numeric(one, one, one),
            Err(Error::EvaluationPole { .. })
        ));
    }
}
