//! Behaviour of the families as `q -> 1`.

use num_complex::Complex64;
use serde::Serialize;

use super::families::{Iso2Matrices, Signs};
use super::params::Params;
use super::relations::{check_iso2_relations, eval_words};
use super::window::Window;
use crate::error::{Error, Result};
use crate::freealg::{Iso2Gen, WordComb};

#[derive(Clone, Debug, Serialize)]
pub struct LimitSample {
    pub h: f64,
    /// Max entry of the `q = 1` relations `[I,T2] - T1`, `[T1,I] - T2`, `[T2,T1]`.
    pub classical_defect: f64,
    /// Max residual of the deformed relations (roundoff only).
    pub deformed_defect: f64,
    /// Largest entry of a nonclassical matrix at the same `q`.
    pub nonclassical_max_entry: f64,
}

fn classical_relation_words() -> Vec<WordComb<Iso2Gen>> {
    use Iso2Gen::*;
    let w = |a, b| WordComb::word(vec![a, b]);
    vec![
        w(I, T2).sub(&w(T2, I)).sub(&WordComb::letter(T1)),
        w(T1, I).sub(&w(I, T1)).sub(&WordComb::letter(T2)),
        w(T2, T1).sub(&w(T1, T2)),
    ]
}

/// Sample at `q = 1 + h` with `s = q^mu`, which keeps `R(I)` bounded.
pub fn classical_limit_sample(h: f64, mu: f64, r: Complex64, w: Window, n: usize) -> Result<LimitSample> {
    let q = Complex64::new(1.0 + h, 0.0);
    let s = q.powf(mu);
    let p = Params::numeric(q, s, r).with_tol(0.0);
    let m = Iso2Matrices::classical(&p, w)?;
    let mut classical_defect: f64 = 0.0;
    for x in classical_relation_words() {
        let op = eval_words(&x, &p, w, |g| Ok(m.get(*g).clone()))?
            .ok_or_else(|| Error::InvalidArgument(format!("window {w} has no interior")))?;
        classical_defect = classical_defect.max(op.max_abs());
    }
    let deformed_defect = check_iso2_relations(&m, &p)?
        .iter()
        .map(|r| r.max_residual)
        .fold(0.0, f64::max);
    let nc = Iso2Matrices::nonclassical(&p, Signs::new(1, 1)?, n)?;
    let nonclassical_max_entry = [&nc.i, &nc.t1, &nc.t2]
        .iter()
        .map(|o| o.max_abs())
        .fold(0.0, f64::max);
    Ok(LimitSample {
        h,
        classical_defect,
        deformed_defect,
        nonclassical_max_entry,
    })
}

/// `R_rs(I)` entries at `q -> 1` with `s = q^mu` tend to `i (m + mu)`.
pub fn classical_i_limit(m: i64, mu: f64) -> Complex64 {
    Complex64::new(0.0, m as f64 + mu)
}

