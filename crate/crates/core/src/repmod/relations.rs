//! Defining relations evaluated on generator matrices, word by word.

use serde::Serialize;

use super::families::{pi_rs_matrix, Iso2Matrices};
use super::params::Params;
use super::window::{SparseVec, Window, WindowedOperator};
use crate::error::Result;
use crate::freealg::{Iso2Gen, Letter, M2Gen, WordComb};
use crate::scalars::{Coeff, Scalar};

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub relation: String,
    pub holds: bool,
    /// Largest residual entry (numeric mode; 0 or infinity in exact mode).
    pub max_residual: f64,
    pub checked_on: Option<Window>,
}

/// Evaluate a free word combination by composing generator matrices right
/// to left. `None` if some word leaves the window everywhere.
pub fn eval_words<L: Letter, T: Coeff>(
    x: &WordComb<L>,
    p: &Params<T>,
    domain: Window,
    gen: impl Fn(&L) -> Result<WindowedOperator<T>>,
) -> Result<Option<WindowedOperator<T>>> {
    Ok(eval_words_scaled(x, p, domain, gen)?.map(|(op, _)| op))
}

/// As [`eval_words`], also returning the largest entry over the individual
/// terms (the scale for relative tolerances).
pub fn eval_words_scaled<L: Letter, T: Coeff>(
    x: &WordComb<L>,
    p: &Params<T>,
    domain: Window,
    gen: impl Fn(&L) -> Result<WindowedOperator<T>>,
) -> Result<Option<(WindowedOperator<T>, f64)>> {
    let mut terms: Vec<(T, WindowedOperator<T>)> = Vec::new();
    let mut scale: f64 = 0.0;
    for (w, c) in x.terms() {
        let mut op = WindowedOperator::identity(domain);
        for l in w.iter().rev() {
            match gen(l)?.compose(&op) {
                Some(o) => op = o,
                None => return Ok(None),
            }
        }
        let c = p.embed(c)?;
        scale = scale.max(c.magnitude() * op.max_abs());
        terms.push((c, op));
    }
    if terms.is_empty() {
        let zero = WindowedOperator::from_columns(domain, |_| Ok(SparseVec::new()))?;
        return Ok(Some((zero, 0.0)));
    }
    let refs: Vec<(T, &WindowedOperator<T>)> = terms.iter().map(|(c, o)| (c.clone(), o)).collect();
    Ok(WindowedOperator::lincomb(&refs).map(|op| (op, scale)))
}

fn report<T: Coeff>(name: &str, op: Option<(WindowedOperator<T>, f64)>, tol: f64) -> RelationReport {
    match op {
        Some((op, scale)) => RelationReport {
            relation: name.to_string(),
            holds: op.is_zero(tol * scale.max(1.0)),
            max_residual: op.max_abs(),
            checked_on: Some(op.domain()),
        },
        None => RelationReport {
            relation: name.to_string(),
            holds: false,
            max_residual: f64::NAN,
            checked_on: None,
        },
    }
}

fn w2<L: Letter>(a: L, b: L) -> WordComb<L> {
    WordComb::word(vec![a, b])
}

/// The three defining relations of `U_q(iso2)` as free words.
pub fn iso2_relation_words() -> Vec<(&'static str, WordComb<Iso2Gen>)> {
    use Iso2Gen::*;
    let t = Scalar::t_pow(1);
    let ti = Scalar::t_pow(-1);
    vec![
        (
            "q^(1/2) I T2 - q^(-1/2) T2 I = T1",
            w2(I, T2).scale(&t).sub(&w2(T2, I).scale(&ti)).sub(&WordComb::letter(T1)),
        ),
        (
            "q^(1/2) T1 I - q^(-1/2) I T1 = T2",
            w2(T1, I).scale(&t).sub(&w2(I, T1).scale(&ti)).sub(&WordComb::letter(T2)),
        ),
        (
            "q^(1/2) T2 T1 - q^(-1/2) T1 T2 = 0",
            w2(T2, T1).scale(&t).sub(&w2(T1, T2).scale(&ti)),
        ),
    ]
}

/// Check the iso2 relations on a set of generator matrices.
pub fn check_iso2_relations<T: Coeff>(m: &Iso2Matrices<T>, p: &Params<T>) -> Result<Vec<RelationReport>> {
    let tol = p.tol;
    iso2_relation_words()
        .into_iter()
        .map(|(name, w)| {
            let op = eval_words_scaled(&w, p, m.i.domain(), |g| Ok(m.get(*g).clone()))?;
            Ok(report(name, op, tol))
        })
        .collect()
}

/// The relations of `Û_q(m2)` for `|k| <= k_max`, as free words.
pub fn m2_relation_words(k_max: i32) -> Vec<(String, WordComb<M2Gen>)> {
    use M2Gen::*;
    let one = WordComb::<M2Gen>::one();
    let q = Scalar::q();
    let qi = Scalar::q_pow(-1);
    let mut out = vec![
        ("K Kinv = 1".to_string(), w2(K, Kinv).sub(&one)),
        ("Kinv K = 1".to_string(), w2(Kinv, K).sub(&one)),
        (
            "K E Kinv = q E".to_string(),
            WordComb::word(vec![K, E, Kinv]).sub(&WordComb::letter(E).scale(&q)),
        ),
        (
            "K F Kinv = q^-1 F".to_string(),
            WordComb::word(vec![K, F, Kinv]).sub(&WordComb::letter(F).scale(&qi)),
        ),
        ("E F = F E".to_string(), w2(E, F).sub(&w2(F, E))),
    ];
    for k in -k_max..=k_max {
        let d = WordComb::letter(K)
            .scale(&Scalar::q_pow(k as i64))
            .add(&WordComb::letter(Kinv).scale(&Scalar::q_pow(-k as i64)));
        let g = WordComb::letter(G(k));
        out.push((format!("G[{k}] D[{k}] = 1"), g.concat(&d).sub(&one)));
        out.push((format!("D[{k}] G[{k}] = 1"), d.concat(&g).sub(&one)));
        out.push((format!("K G[{k}] = G[{k}] K"), w2(K, G(k)).sub(&w2(G(k), K))));
        out.push((format!("Kinv G[{k}] = G[{k}] Kinv"), w2(Kinv, G(k)).sub(&w2(G(k), Kinv))));
        out.push((format!("G[{k}] E = E G[{}]", k + 1), w2(G(k), E).sub(&w2(E, G(k + 1)))));
        out.push((format!("G[{k}] F = F G[{}]", k - 1), w2(G(k), F).sub(&w2(F, G(k - 1)))));
    }
    out
}

/// Check the `Û_q(m2)` relations on `pi_rs` matrices over `w`.
pub fn check_m2_relations<T: Coeff>(p: &Params<T>, w: Window, k_max: i32) -> Result<Vec<RelationReport>> {
    m2_relation_words(k_max)
        .into_iter()
        .map(|(name, x)| {
            let op = eval_words_scaled(&x, p, w, |g| pi_rs_matrix(*g, p, w))?;
            Ok(report(&name, op, p.tol))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn numeric() -> Params<Complex64> {
        Params::numeric(Complex64::new(1.7, 0.0), Complex64::new(0.8, 0.3), Complex64::new(2.1, 0.0))
    }

    #[test]
    fn classical_numeric_relations() {
        let p = numeric();
        let m = Iso2Matrices::classical(&p, Window::new(-40, 40).unwrap()).unwrap();
        for r in check_iso2_relations(&m, &p).unwrap() {
            assert!(r.holds, "{} residual {}", r.relation, r.max_residual);
            assert_eq!(r.checked_on, Window::new(-39, 39).ok());
        }
    }

    #[test]
    fn pi_rs_numeric_relations() {
        let p = numeric();
        for r in check_m2_relations(&p, Window::new(-6, 6).unwrap(), 2).unwrap() {
            assert!(r.holds, "{} residual {}", r.relation, r.max_residual);
        }
    }

    #[test]
    fn nonclassical_numeric_relations() {
        use super::super::families::Signs;
        let p = numeric();
        for eps in [1, -1] {
            for eps2 in [1, -1] {
                let m = Iso2Matrices::nonclassical(&p, Signs::new(eps, eps2).unwrap(), 8).unwrap();
                for r in check_iso2_relations(&m, &p).unwrap() {
                    assert!(r.holds, "({eps},{eps2}) {} residual {}", r.relation, r.max_residual);
                }
            }
        }
    }
}
