//! Rebuilding an irreducible representation from an `R(I)` eigenvector and
//! the Casimir value, and matching the result against `R_rs`.

use serde::Serialize;

use super::casimir::casimir_of;
use super::families::{r_rs_matrix, Iso2Matrices};
use super::params::Params;
use super::relations::{check_iso2_relations, RelationReport};
use super::window::{axpy, SparseVec, Window, WindowedOperator};
use crate::error::{Error, Result};
use crate::freealg::Iso2Gen;
use crate::scalars::Coeff;

/// Outcome of one family of checks over a range of `j`.
#[derive(Clone, Debug, Serialize)]
pub struct StepCheck {
    pub name: String,
    pub from: i64,
    pub to: i64,
    /// Indices where the identity fails.
    pub failures: Vec<i64>,
}

impl StepCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Degeneracy {
    /// `s = eps i q^{n/2}`.
    pub half_exponent: i64,
    pub eps: i8,
    pub hint: String,
}

#[derive(Clone, Debug)]
pub struct Reconstruction<T: Coeff> {
    pub steps: i64,
    pub degeneracy: Option<Degeneracy>,
    /// Casimir value of `R_rs` at the given point.
    pub realized_casimir: Option<T>,
    /// Recursion checks on the vectors built inside `R_rs`.
    pub realized: Vec<StepCheck>,
    /// Module defined by the eigenvalue, `T2` and the re-derived `T1` formula.
    pub abstract_ops: Option<Iso2Matrices<T>>,
    pub abstract_relations: Vec<RelationReport>,
    pub abstract_casimir: Option<T>,
    /// Same module with the `|j-1>` coefficient of `i R(T1)` as printed.
    pub printed_t1_relations: Vec<RelationReport>,
    /// `rho_{j+1} / rho_j` for `j` in the window.
    pub rescaling: Vec<(i64, T)>,
    /// Rescaled operators equal `R_rs` entrywise, per generator.
    pub matches_classical: Vec<(Iso2Gen, bool)>,
}

impl<T: Coeff> Reconstruction<T> {
    pub fn realized_ok(&self) -> bool {
        self.degeneracy.is_none() && self.realized.iter().all(StepCheck::holds)
    }

    pub fn abstract_ok(&self) -> bool {
        !self.abstract_relations.is_empty() && self.abstract_relations.iter().all(|r| r.holds)
    }

    pub fn printed_t1_consistent(&self) -> bool {
        !self.printed_t1_relations.is_empty() && self.printed_t1_relations.iter().all(|r| r.holds)
    }

    pub fn matches(&self) -> bool {
        !self.matches_classical.is_empty() && self.matches_classical.iter().all(|(_, b)| *b)
    }
}

fn lin<T: Coeff>(terms: &[(T, &SparseVec<T>)]) -> SparseVec<T> {
    let mut out = SparseVec::new();
    for (c, v) in terms {
        axpy(&mut out, c, v);
    }
    out
}

fn vec_eq<T: Coeff>(a: &SparseVec<T>, b: &SparseVec<T>, tol: f64) -> bool {
    let scale = a
        .values()
        .chain(b.values())
        .map(|x| x.magnitude())
        .fold(1.0, |m: f64, x| if x.is_finite() { m.max(x) } else { m });
    a.keys().chain(b.keys()).all(|k| {
        let x = a.get(k).cloned().unwrap_or_else(T::zero);
        let y = b.get(k).cloned().unwrap_or_else(T::zero);
        (x - y).is_negligible(tol * scale)
    })
}

/// `[j]_{q,s} = (s q^j - s^{-1} q^{-j}) / (q - q^{-1})`.
fn bracket<T: Coeff>(p: &Params<T>, j: i64) -> Result<T> {
    let c = p.inv(&p.q_minus_qinv()).ok_or(Error::DivisionByZero)?;
    Ok((p.s.clone() * p.q_pow(j) - p.s_inv()? * p.q_pow(-j)) * c)
}

/// `Δ_j = s q^{j+1/2} + s^{-1} q^{-j+1/2}`.
fn delta<T: Coeff>(p: &Params<T>, j: i64) -> Result<T> {
    Ok(p.s.clone() * p.t_pow(2 * j + 1) + p.s_inv()? * p.t_pow(-2 * j + 1))
}

/// Build `|j>` from `|0> = e_0` inside `R_rs`, check the recursion
/// identities, then build the abstract module from the Casimir value `c` and
/// compare it, after rescaling, with `R_rs`.
pub fn reconstruct_from_seed<T: Coeff>(p: &Params<T>, c: T, steps: usize) -> Result<Reconstruction<T>> {
    let n = steps as i64;
    let mut out = Reconstruction {
        steps: n,
        degeneracy: None,
        realized_casimir: None,
        realized: Vec::new(),
        abstract_ops: None,
        abstract_relations: Vec::new(),
        abstract_casimir: None,
        printed_t1_relations: Vec::new(),
        rescaling: Vec::new(),
        matches_classical: Vec::new(),
    };
    let reach = 2 * (n + 2);
    if let Some((h, eps)) = p.s.imag_t_power(&p.t, p.tol, -reach..=reach) {
        out.degeneracy = Some(Degeneracy {
            half_exponent: h,
            eps,
            hint: if h % 2 == 0 {
                "s = ±i q^n: R_rs has a pole; not extendable".into()
            } else {
                format!("s = ±i q^(m+1/2) with m = {}: use decompose_degenerate", (h - 1) / 2)
            },
        });
        return Ok(out);
    }
    let tol = p.tol;
    let i = p.i();
    let q = p.q_pow(1);
    let s_inv = p.s_inv()?;

    // realization inside R_rs
    let w = Window::new(-n - 2, n + 2)?;
    let mats = Iso2Matrices::classical(p, w)?;
    let cr = casimir_of(&mats, p)?.scalar;
    let c_real = cr
        .clone()
        .ok_or_else(|| Error::Consistency("C_q is not scalar on R_rs".into()))?;
    out.realized_casimir = cr;
    let ap = |g: Iso2Gen, v: &SparseVec<T>| -> Result<SparseVec<T>> {
        mats.get(g)
            .apply(v)
            .ok_or_else(|| Error::Consistency("vector left the window".into()))
    };
    let mut vecs = std::collections::BTreeMap::new();
    vecs.insert(0i64, SparseVec::from([(0i64, T::one())]));
    for j in 0..=n {
        let v = vecs[&j].clone();
        let next = lin(&[
            (i.clone(), &ap(Iso2Gen::T1, &v)?),
            (-(s_inv.clone() * p.t_pow(-2 * j + 1)), &ap(Iso2Gen::T2, &v)?),
        ]);
        vecs.insert(j + 1, next);
    }
    for j in (-n..=0).rev() {
        let v = vecs[&j].clone();
        let prev = lin(&[
            (i.clone(), &ap(Iso2Gen::T1, &v)?),
            (p.s.clone() * p.t_pow(2 * j + 1), &ap(Iso2Gen::T2, &v)?),
        ]);
        vecs.insert(j - 1, prev);
    }
    let mut c29 = StepCheck { name: "R(I)|j> = i[j]|j>".into(), from: -n, to: n, failures: vec![] };
    let mut c30 = StepCheck { name: "R(iT1 + s q^(j+3/2) T2)|j+1> = -Cq|j>".into(), from: 0, to: n, failures: vec![] };
    let mut c31 = StepCheck { name: "R(iT1 - s^-1 q^(-j+3/2) T2)|j-1> = -Cq|j>".into(), from: -n, to: 0, failures: vec![] };
    let mut c32 = StepCheck { name: "R(T2)|j> = -Δ_j^-1 (|j+1> + Cq|j-1>)".into(), from: 1, to: n, failures: vec![] };
    let mut c33 = StepCheck { name: "iR(T1)|j> re-derived".into(), from: 1, to: n, failures: vec![] };
    let mut c33p = StepCheck { name: "iR(T1)|j> as printed".into(), from: 1, to: n, failures: vec![] };
    let cq = c_real.clone() * q.clone();
    for j in -n..=n {
        let v = &vecs[&j];
        let lhs = ap(Iso2Gen::I, v)?;
        let rhs = lin(&[(i.clone() * bracket(p, j)?, v)]);
        if !vec_eq(&lhs, &rhs, tol) || v.is_empty() {
            c29.failures.push(j);
        }
    }
    for j in 0..=n {
        let u = &vecs[&(j + 1)];
        let lhs = lin(&[
            (i.clone(), &ap(Iso2Gen::T1, u)?),
            (p.s.clone() * p.t_pow(2 * j + 3), &ap(Iso2Gen::T2, u)?),
        ]);
        if !vec_eq(&lhs, &lin(&[(-cq.clone(), &vecs[&j])]), tol) {
            c30.failures.push(j);
        }
    }
    for j in -n..=0 {
        let u = &vecs[&(j - 1)];
        let lhs = lin(&[
            (i.clone(), &ap(Iso2Gen::T1, u)?),
            (-(s_inv.clone() * p.t_pow(-2 * j + 3)), &ap(Iso2Gen::T2, u)?),
        ]);
        if !vec_eq(&lhs, &lin(&[(-cq.clone(), &vecs[&j])]), tol) {
            c31.failures.push(j);
        }
    }
    for j in 1..=n {
        let d_inv = p.inv(&delta(p, j)?).ok_or(Error::DivisionByZero)?;
        let (up, down, v) = (&vecs[&(j + 1)], &vecs[&(j - 1)], &vecs[&j]);
        let t2 = lin(&[(-d_inv.clone(), up), (-(d_inv.clone() * cq.clone()), down)]);
        if !vec_eq(&ap(Iso2Gen::T2, v)?, &t2, tol) {
            c32.failures.push(j);
        }
        let it1 = lin(&[(i.clone(), &ap(Iso2Gen::T1, v)?)]);
        let a = p.s.clone() * p.t_pow(2 * j + 1) * d_inv.clone();
        let b = -(cq.clone() * s_inv.clone() * p.t_pow(-2 * j + 1) * d_inv.clone());
        if !vec_eq(&it1, &lin(&[(a.clone(), up), (b, down)]), tol) {
            c33.failures.push(j);
        }
        if !vec_eq(&it1, &lin(&[(a.clone(), up), (cq.clone() * a, down)]), tol) {
            c33p.failures.push(j);
        }
    }
    out.realized = vec![c29, c30, c31, c32, c33, c33p];

    // abstract module on j in [-n, n]
    let aw = Window::new(-n, n)?;
    let build = |printed: bool| -> Result<Iso2Matrices<T>> {
        let cq = c.clone() * q.clone();
        let i_op = WindowedOperator::diagonal(aw, |j| Ok(i.clone() * bracket(p, j)?))?;
        let t2 = WindowedOperator::from_columns(aw, |j| {
            let d_inv = p.inv(&delta(p, j)?).ok_or(Error::DivisionByZero)?;
            Ok(SparseVec::from([(j + 1, -d_inv.clone()), (j - 1, -(d_inv * cq.clone()))]))
        })?;
        // R(T1) = -i (i R(T1))
        let t1 = WindowedOperator::from_columns(aw, |j| {
            let d_inv = p.inv(&delta(p, j)?).ok_or(Error::DivisionByZero)?;
            let a = p.s.clone() * p.t_pow(2 * j + 1) * d_inv.clone();
            let b = if printed {
                cq.clone() * a.clone()
            } else {
                -(cq.clone() * s_inv.clone() * p.t_pow(-2 * j + 1) * d_inv)
            };
            Ok(SparseVec::from([(j + 1, -(i.clone() * a)), (j - 1, -(i.clone() * b))]))
        })?;
        Ok(Iso2Matrices { i: i_op, t1, t2 })
    };
    let abs = build(false)?;
    out.abstract_relations = check_iso2_relations(&abs, p)?;
    out.abstract_casimir = casimir_of(&abs, p)?.scalar;
    out.printed_t1_relations = check_iso2_relations(&build(true)?, p)?;

    // rescaling |j> = rho_j |j>' fixed by the |j+1> entry of R(T2)
    let target_t2 = r_rs_matrix(Iso2Gen::T2, p, aw)?;
    let mut rho = std::collections::BTreeMap::new();
    rho.insert(0i64, T::one());
    let ratio = |j: i64| -> Result<T> {
        let want = target_t2.entry(j + 1, j);
        let have = abs.t2.entry(j + 1, j);
        Ok(want * p.inv(&have).ok_or(Error::DivisionByZero)?)
    };
    for j in 0..n {
        let r = ratio(j)?;
        out.rescaling.push((j, r.clone()));
        rho.insert(j + 1, rho[&j].clone() * r);
    }
    for j in (-n..0).rev() {
        let r = ratio(j)?;
        out.rescaling.push((j, r.clone()));
        rho.insert(j, rho[&(j + 1)].clone() * p.inv(&r).ok_or(Error::DivisionByZero)?);
    }
    out.rescaling.sort_by_key(|(j, _)| *j);
    for g in [Iso2Gen::I, Iso2Gen::T1, Iso2Gen::T2] {
        let src = abs.get(g);
        let rescaled = WindowedOperator::from_columns(aw, |j| {
            let rj_inv = p.inv(&rho[&j]).ok_or(Error::DivisionByZero)?;
            Ok(src
                .column(j)
                .expect("in window")
                .iter()
                .filter_map(|(k, v)| rho.get(k).map(|rk| (*k, v.clone() * rk.clone() * rj_inv.clone())))
                .collect())
        })?;
        let interior = aw.shrink(1).unwrap_or(aw);
        let lhs = rescaled.restrict(interior).expect("interior");
        let rhs = r_rs_matrix(g, p, aw)?.restrict(interior).expect("interior");
        out.matches_classical.push((g, lhs.approx_eq(&rhs, tol)));
    }
    out.abstract_ops = Some(abs);
    Ok(out)
}
