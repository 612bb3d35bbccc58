use super::families::Iso2Matrices;
use super::params::Params;
use super::relations::eval_words_scaled;
use super::window::WindowedOperator;
use crate::error::{Error, Result};
use crate::freealg::casimir_pbw;
use crate::scalars::Coeff;

#[derive(Clone, Debug)]
pub struct CasimirReport<T: Coeff> {
    /// `C_q` on the interior columns.
    pub operator: WindowedOperator<T>,
    /// The eigenvalue, if the interior block is scalar.
    pub scalar: Option<T>,
}

/// Assemble `C_q` from generator matrices and test it for scalarity.
pub fn casimir_of<T: Coeff>(m: &Iso2Matrices<T>, p: &Params<T>) -> Result<CasimirReport<T>> {
    let (op, scale) = eval_words_scaled(&casimir_pbw().to_words(), p, m.i.domain(), |g| {
        Ok(m.get(*g).clone())
    })?
    .ok_or_else(|| Error::InvalidArgument(format!("window {} has no interior for C_q", m.i.domain())))?;
    let scalar = op.scalar_value(p.tol * scale.max(1.0));
    Ok(CasimirReport { operator: op, scalar })
}
