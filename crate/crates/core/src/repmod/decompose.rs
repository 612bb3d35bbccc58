//! Splitting `R_rs` at `s = ε i q^{m+1/2}` into the two nonclassical blocks.

use super::families::{nonclassical_matrix, r_rs_matrix, Signs};
use super::params::Params;
use super::window::{SparseVec, Window, WindowedOperator};
use crate::error::{Error, Result};
use crate::freealg::Iso2Gen;
use crate::scalars::Coeff;

/// Blocks of one generator in the `V_{+1} ⊕ V_{-1}` basis.
#[derive(Clone, Debug)]
pub struct GeneratorBlocks<T: Coeff> {
    pub gen: Iso2Gen,
    /// `[row sign][column sign]`, index 0 for `+1` and 1 for `-1`.
    pub blocks: [[WindowedOperator<T>; 2]; 2],
    pub off_diagonal_zero: bool,
    /// Diagonal blocks equal the nonclassical matrices, for `ε̃ = +1, -1`.
    pub matches_nonclassical: [bool; 2],
}

#[derive(Clone, Debug)]
pub struct Decomposition<T: Coeff> {
    pub s: T,
    pub m: i64,
    pub eps: i8,
    pub window: Window,
    /// Columns `|j>_{ε̃}` expressed in the `|m>` basis, for `ε̃ = +1, -1`.
    pub bases: [WindowedOperator<T>; 2],
    pub generators: Vec<GeneratorBlocks<T>>,
}

impl<T: Coeff> Decomposition<T> {
    pub fn is_block_diagonal(&self) -> bool {
        self.generators.iter().all(|g| g.off_diagonal_zero)
    }

    pub fn matches_nonclassical(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.matches_nonclassical.iter().all(|b| *b))
    }
}

const SIGNS: [i8; 2] = [1, -1];

fn alt<T: Coeff>(j: i64) -> T {
    if j % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// The degenerate point `s = ε i q^{m+1/2}`.
pub fn degenerate_s<T: Coeff>(p: &Params<T>, m: i64, eps: i8) -> T {
    T::from_i64(eps as i64) * p.i() * p.t_pow(2 * m + 1)
}

/// Conjugate `R_rs` at `s = ε i q^{m+1/2}` by the paired basis
/// `|j>_{ε̃} = |-m+j> + ε̃ i (-1)^j |-m-j-1>` and compare the blocks with the
/// nonclassical family. `w` must be symmetric about `-m - 1/2`.
pub fn decompose_degenerate<T: Coeff>(p: &Params<T>, m: i64, eps: i8, w: Window) -> Result<Decomposition<T>> {
    Signs::new(eps, 1)?;
    if w.lo + w.hi != -2 * m - 1 {
        return Err(Error::AsymmetricWindow {
            lo: w.lo,
            hi: w.hi,
            center: format!("{}/2", -2 * m - 1),
        });
    }
    let top = w.hi + m;
    if top < 1 {
        return Err(Error::InvalidArgument(format!("window {w} too small to split")));
    }
    let s = degenerate_s(p, m, eps);
    let ps = p.with_s(s.clone());
    let i = p.i();
    let two_inv = p.inv(&T::from_i64(2)).ok_or(Error::DivisionByZero)?;
    let jw = Window::new(0, top)?;
    let inner = Window::new(0, top - 1)?;

    let basis_col = |e2: i8, j: i64| -> SparseVec<T> {
        SparseVec::from([
            (-m + j, T::one()),
            (-m - j - 1, T::from_i64(e2 as i64) * i.clone() * alt(j)),
        ])
    };
    let bases = [
        WindowedOperator::from_columns(jw, |j| Ok(basis_col(1, j)))?,
        WindowedOperator::from_columns(jw, |j| Ok(basis_col(-1, j)))?,
    ];
    // coordinates of |k> in the paired basis: [(j, c_plus, c_minus)]
    let coords = |k: i64| -> (i64, T, T) {
        if k >= -m {
            (k + m, two_inv.clone(), two_inv.clone())
        } else {
            let j = -m - 1 - k;
            let c = p
                .inv(&(T::from_i64(2) * i.clone() * alt(j)))
                .expect("2i is invertible");
            (j, c.clone(), -c)
        }
    };

    let mut generators = Vec::new();
    for gen in [Iso2Gen::I, Iso2Gen::T1, Iso2Gen::T2] {
        let r = r_rs_matrix(gen, &ps, w)?;
        // images[col sign][j] split into [row sign] sparse vectors
        let mut cols: [[Vec<SparseVec<T>>; 2]; 2] = Default::default();
        for (ci, &e2) in SIGNS.iter().enumerate() {
            for j in inner.indices() {
                let v = r.apply(&basis_col(e2, j)).ok_or_else(|| {
                    Error::Consistency(format!("basis vector {j} leaves window {w}"))
                })?;
                let mut out: [SparseVec<T>; 2] = Default::default();
                for (k, c) in v {
                    let (jj, cp, cm) = coords(k);
                    for (ri, coef) in [(0, cp), (1, cm)] {
                        let val = c.clone() * coef;
                        let e = out[ri].remove(&jj).map_or(val.clone(), |old| old + val);
                        if !e.is_negligible(0.0) {
                            out[ri].insert(jj, e);
                        }
                    }
                }
                let [a, b] = out;
                cols[0][ci].push(a);
                cols[1][ci].push(b);
            }
        }
        let mk = |v: &Vec<SparseVec<T>>| {
            WindowedOperator::from_columns(inner, |j| Ok(v[j as usize].clone()))
        };
        let blocks = [
            [mk(&cols[0][0])?, mk(&cols[0][1])?],
            [mk(&cols[1][0])?, mk(&cols[1][1])?],
        ];
        let tol = p.tol;
        let off_diagonal_zero = blocks[0][1].is_zero(tol * blocks[0][0].max_abs().clamp(1.0, f64::MAX))
            && blocks[1][0].is_zero(tol * blocks[1][1].max_abs().clamp(1.0, f64::MAX));
        let mut matches = [false; 2];
        for (k, &e2) in SIGNS.iter().enumerate() {
            let nc = nonclassical_matrix(gen, p, Signs::new(eps, e2)?, (top + 1) as usize)?;
            let nc = nc.restrict(inner).expect("inner window is inside");
            matches[k] = blocks[k][k].approx_eq(&nc, tol);
        }
        generators.push(GeneratorBlocks {
            gen,
            blocks,
            off_diagonal_zero,
            matches_nonclassical: matches,
        });
    }
    Ok(Decomposition {
        s,
        m,
        eps,
        window: w,
        bases,
        generators,
    })
}
