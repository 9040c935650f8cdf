use super::boundary::rhat_on_s0;
use crate::fncore::{DbSpace, EntireFn};
use crate::numerics::linalg::project;
use crate::{Cplx, DbError, Result};
use serde::Serialize;

/// Gram conditions above this are flagged.
pub const COND_LIMIT: f64 = 1e12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CyclicityReport {
    pub residual: f64,
    /// `residual / ‖target‖`.
    pub relative: f64,
    pub condition: f64,
    pub ill_conditioned: bool,
    pub size: usize,
}

/// Distance in `B` from `target` to `span{R̂_{π/2}(w_j) s₀}`.
pub fn cyclicity_check(space: &DbSpace, wset: &[Cplx], target: &EntireFn) -> Result<CyclicityReport> {
    if wset.is_empty() {
        return Err(DbError::EmptyDictionary);
    }
    if let Some(w) = wset.iter().find(|w| w.im == 0.0) {
        return Err(DbError::invalid(format!("cyclicity points must be nonreal, got {w}")));
    }
    // R̂(w) s₀ = c k(·, w̄)
    let mut coef = Vec::with_capacity(wset.len());
    for &w in wset {
        let v = rhat_on_s0(space, w)?;
        coef.push(space.eval(&v, w.conj())? / space.kernel_diag(w.conj())?);
    }
    let n = wset.len();
    let mut gram = vec![vec![Cplx::new(0.0, 0.0); n]; n];
    let mut moments = Vec::with_capacity(n);
    for j in 0..n {
        let vj = wset[j].conj();
        for l in 0..n {
            gram[j][l] = coef[j].conj() * coef[l] * space.kernel(vj, wset[l].conj())?;
        }
        moments.push(coef[j].conj() * space.eval(target, vj)?);
    }
    let norm = space.norm(target)?;
    let p = project(&gram, &moments, norm * norm)?;
    Ok(CyclicityReport {
        residual: p.residual,
        relative: if norm > 0.0 { p.residual / norm } else { 0.0 },
        condition: p.condition,
        ill_conditioned: p.condition > COND_LIMIT,
        size: n,
    })
}
