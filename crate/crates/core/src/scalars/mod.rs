//! Exact scalars: Gaussian rationals, Laurent polynomials in `t = q^{1/2}`, `s`, `r`,
//! and their reduced fractions.

mod coeff;
mod gauss;
mod laurent;
mod scalar;

pub use coeff::Coeff;
pub use gauss::GaussianRational;
pub use laurent::{Exps, LaurentPoly, VAR_NAMES};
pub use scalar::{Scalar, DEFAULT_POLE_TOL};

