use std::collections::{BTreeMap, HashMap};
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::freealg::M2Gen;
use crate::repmod::{pi_rs_matrix, Params, RepParams, Window, WindowedOperator};

type Op = WindowedOperator<Complex64>;

/// Least-squares intertwiner `X` with `X ρ_A(g) = ρ_B(g) X`.
#[derive(Clone, Debug)]
pub struct Intertwiner {
    /// Rows indexed by the target window, columns by the source window.
    pub matrix: Option<DMatrix<Complex64>>,
    pub residual: f64,
    pub source: Window,
    pub target: Window,
    pub unknowns: usize,
    pub constraints: usize,
}

impl Intertwiner {
    pub fn found(&self) -> bool {
        self.matrix.is_some()
    }
}

/// Generator matrices in a fixed order: `I, T1, T2` or `K, Kinv, E, F`.
pub fn generator_matrices(p: &RepParams<Complex64>, base: &Params<Complex64>, w: Window) -> Result<Vec<Op>> {
    p.validate(base.tol)?;
    match p {
        RepParams::ClassicalM2 { .. } => {
            let pt = p.point(base);
            [M2Gen::K, M2Gen::Kinv, M2Gen::E, M2Gen::F]
                .into_iter()
                .map(|g| pi_rs_matrix(g, &pt, w))
                .collect()
        }
        RepParams::OneDimM2 { sigma } => {
            let one = Window::new(0, 0)?;
            let inv = sigma.inv();
            [*sigma, inv, Complex64::default(), Complex64::default()]
                .into_iter()
                .map(|v| WindowedOperator::diagonal(one, |_| Ok(v)))
                .collect()
        }
        _ => {
            let m = p.iso2_matrices(base, w)?;
            Ok(vec![m.i, m.t1, m.t2])
        }
    }
}

fn interior(ops: &[Op]) -> Option<Window> {
    let d = ops[0].domain();
    let ok: Vec<i64> = d
        .indices()
        .filter(|j| {
            ops.iter()
                .all(|o| o.column(*j).is_some_and(|c| c.keys().all(|k| d.contains(*k))))
        })
        .collect();
    Window::new(*ok.first()?, *ok.last()?).ok()
}

fn diagonal_of(op: &Op) -> Option<BTreeMap<i64, Complex64>> {
    let mut out = BTreeMap::new();
    for (i, j, v) in op.entries() {
        if i != j {
            return None;
        }
        out.insert(j, v);
    }
    Some(out)
}

/// Search for an intertwiner from `a` to `b` on window `w`.
///
/// Constraints are imposed for columns and rows whose generator images stay
/// inside the window. When the first generator is diagonal in both families,
/// entries `X[i,k]` pairing different eigenvalues are fixed to zero.
pub fn find_intertwiner(
    a: &RepParams<Complex64>,
    b: &RepParams<Complex64>,
    base: &Params<Complex64>,
    w: Window,
    tol: f64,
) -> Result<Intertwiner> {
    if a.is_iso2() != b.is_iso2() {
        return Err(Error::MixedAlgebra(format!("{} vs {}", Show(a), Show(b))));
    }
    let ga = generator_matrices(a, base, w)?;
    let gb = generator_matrices(b, base, w)?;
    let (da, db) = (ga[0].domain(), gb[0].domain());
    let mut out = Intertwiner {
        matrix: None,
        residual: 1.0,
        source: da,
        target: db,
        unknowns: 0,
        constraints: 0,
    };
    let (Some(ia), Some(ib)) = (interior(&ga), interior(&gb)) else {
        return Ok(out);
    };

    let pairing = diagonal_of(&ga[0]).zip(diagonal_of(&gb[0]));
    let keep = |i: i64, k: i64| match &pairing {
        Some((pa, pb)) => {
            let (x, y) = (pa.get(&k).copied().unwrap_or_default(), pb.get(&i).copied().unwrap_or_default());
            (x - y).norm() <= 1e-8 * x.norm().max(y.norm()).max(1.0)
        }
        None => true,
    };
    let mut var: HashMap<(i64, i64), usize> = HashMap::new();
    for i in db.indices() {
        for k in da.indices() {
            if keep(i, k) {
                let n = var.len();
                var.insert((i, k), n);
            }
        }
    }
    if var.is_empty() {
        return Ok(out);
    }

    let mut rows: Vec<Vec<(usize, Complex64)>> = Vec::new();
    for (oa, ob) in ga.iter().zip(&gb) {
        let mut b_rows: BTreeMap<i64, Vec<(i64, Complex64)>> = BTreeMap::new();
        for (i, k, v) in ob.entries() {
            b_rows.entry(i).or_default().push((k, v));
        }
        for i in ib.indices() {
            for j in ia.indices() {
                let mut row: BTreeMap<usize, Complex64> = BTreeMap::new();
                let mut scale = 0.0;
                if let Some(col) = oa.column(j) {
                    for (k, v) in col {
                        if let Some(&x) = var.get(&(i, *k)) {
                            *row.entry(x).or_default() += v;
                            scale += v.norm();
                        }
                    }
                }
                for (k, v) in b_rows.get(&i).into_iter().flatten() {
                    if let Some(&x) = var.get(&(*k, j)) {
                        *row.entry(x).or_default() -= v;
                        scale += v.norm();
                    }
                }
                if scale > 0.0 {
                    rows.push(row.into_iter().map(|(x, v)| (x, v / scale)).collect());
                }
            }
        }
    }
    // unknowns touched by no constraint are dropped when they sit on the
    // window edge; interior ones are genuinely free
    let mut live: Vec<bool> = vec![false; var.len()];
    for (x, v) in rows.iter().flatten() {
        live[*x] |= v.norm() > 1e-12;
    }
    for ((i, k), x) in &var {
        live[*x] |= ib.contains(*i) && ia.contains(*k);
    }
    let mut used: BTreeMap<usize, usize> = BTreeMap::new();
    for x in (0..var.len()).filter(|x| live[*x]) {
        let n = used.len();
        used.insert(x, n);
    }
    rows.retain(|r| r.iter().any(|(x, _)| used.contains_key(x)));
    out.constraints = rows.len();
    out.unknowns = used.len();
    if used.is_empty() {
        return Ok(out);
    }
    let n = used.len();
    let mut m = DMatrix::<Complex64>::zeros(rows.len().max(n), n);
    for (r, row) in rows.iter().enumerate() {
        for (x, v) in row {
            if let Some(c) = used.get(x) {
                m[(r, *c)] = *v;
            }
        }
    }
    let svd = m.svd(false, true);
    let (idx, sigma) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .map(|(i, s)| (i, *s))
        .ok_or_else(|| Error::Consistency("empty singular value list".into()))?;
    out.residual = sigma;
    if sigma < tol {
        let vt = svd.v_t.ok_or_else(|| Error::Consistency("SVD without V^H".into()))?;
        let mut x = DMatrix::<Complex64>::zeros(db.len(), da.len());
        for ((i, k), c) in &var {
            if let Some(c) = used.get(c) {
                x[((i - db.lo) as usize, (k - da.lo) as usize)] = vt[(idx, *c)].conj();
            }
        }
        // fix the phase so that the largest entry is real and positive
        if let Some(big) = x.iter().copied().max_by(|p, q| p.norm().total_cmp(&q.norm())) {
            if big.norm() > 0.0 {
                x /= big;
            }
        }
        out.matrix = Some(x);
    }
    Ok(out)
}

struct Show<'a>(&'a RepParams<Complex64>);

impl fmt::Display for Show<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmod::Signs;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn base() -> Params<Complex64> {
        Params::numeric(c(1.7, 0.0), c(1.0, 0.0), c(1.0, 0.0))
    }

    #[test]
    fn self_intertwiner_is_identity() {
        let p = RepParams::ClassicalIso2 { r: c(2.1, 0.0), s: c(0.8, 0.3) };
        let w = Window::new(-6, 6).unwrap();
        let x = find_intertwiner(&p, &p, &base(), w, 1e-8).unwrap();
        assert!(x.residual < 1e-12, "{}", x.residual);
        let m = x.matrix.unwrap();
        for a in 0..13 {
            for b in 0..13 {
                let want = if a == b && (1..12).contains(&a) { 1.0 } else { 0.0 };
                assert!((m[(a, b)] - want).norm() < 1e-9, "{a} {b} {}", m[(a, b)]);
            }
        }
    }

    #[test]
    fn shifted_m2_family_is_equivalent() {
        let q = c(1.7, 0.0);
        let a = RepParams::ClassicalM2 { r: c(2.1, 0.0), s: c(0.8, 0.3) };
        let b = RepParams::ClassicalM2 { r: c(-2.1, 0.0), s: q * c(0.8, 0.3) };
        let x = find_intertwiner(&a, &b, &base(), Window::new(-20, 20).unwrap(), 1e-8).unwrap();
        assert!(x.found(), "{}", x.residual);
    }

    #[test]
    fn different_signs_are_not() {
        let r = c(2.1, 0.0);
        let a = RepParams::Nonclassical { r, signs: Signs::new(1, 1).unwrap() };
        let b = RepParams::Nonclassical { r, signs: Signs::new(-1, 1).unwrap() };
        let x = find_intertwiner(&a, &b, &base(), Window::new(0, 20).unwrap(), 1e-8).unwrap();
        assert!(!x.found());
        assert!(x.residual > 1e-2);
    }
}
