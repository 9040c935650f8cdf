use crate::fncore::{DbSpace, EntireFn};
use crate::operator::{ExtensionHandle, GammaDomainElement, SPECTRAL_TOL};
use crate::{Cplx, DbError, Result, I};
use std::f64::consts::{FRAC_PI_2, PI};

pub fn half_extension(space: &DbSpace) -> ExtensionHandle {
    ExtensionHandle::new(space, FRAC_PI_2)
}

fn check_half(h: &GammaDomainElement) -> Result<()> {
    if (h.gamma() - FRAC_PI_2).abs() > 1e-15 {
        return Err(DbError::LevelMismatch);
    }
    Ok(())
}

/// `R̂_{π/2}(w) s₀ = -π k(·, w̄) / s_{π/2}(w)`.
pub fn rhat_on_s0(space: &DbSpace, w: Cplx) -> Result<EntireFn> {
    let sw = space.s_gamma(FRAC_PI_2, w)?;
    if sw.norm() < SPECTRAL_TOL {
        return Err(DbError::SpectralPoint { w, modulus: sw.norm() });
    }
    Ok(EntireFn::kernel(w.conj()).scale(-PI / sw))
}

/// `⟨s₀, h⟩₂ = -π F(i) / s_{π/2}(i)` with `F = (S_{π/2} - i) h`.
pub fn boundary_functional(space: &DbSpace, h: &GammaDomainElement) -> Result<Cplx> {
    check_half(h)?;
    let f_i = space.eval(&h.generator_at(I), I)?;
    Ok(-PI * f_i / space.s_gamma(FRAC_PI_2, I)?)
}

/// The same functional read at `-i`: `-π G(-i) / s_{π/2}(-i)` with
/// `G = (S_{π/2} + i) h`.
pub fn boundary_functional_alt(space: &DbSpace, h: &GammaDomainElement) -> Result<Cplx> {
    check_half(h)?;
    let g_mi = space.eval(&h.generator_at(-I), -I)?;
    Ok(-PI * g_mi / space.s_gamma(FRAC_PI_2, -I)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scale::{pairing_minus2, DualFunctional, Functional, PairingRule};
    use crate::c;

    fn pw() -> DbSpace {
        DbSpace::paley_wiener(PI).unwrap()
    }

    #[test]
    fn rhat_frozen_value_and_spectral_point() {
        let sp = pw();
        let r = rhat_on_s0(&sp, I).unwrap();
        assert!((sp.eval(&r, 0.0.into()).unwrap() - PI.tanh()).norm() < 1e-12);
        assert!(matches!(rhat_on_s0(&sp, c(0.5, 0.0)), Err(DbError::SpectralPoint { .. })));
        assert!(sp.eval(&rhat_on_s0(&sp, c(0.3, 0.0)).unwrap(), c(0.1, 0.0)).unwrap().is_finite());
    }

    #[test]
    fn rhat_is_the_dual_resolvent() {
        // ⟨R̂(w) s₀, f⟩ = ⟨s₀, R(w̄) f⟩₂
        let sp = pw();
        let ext = half_extension(&sp);
        let s0 = Functional::Dual(DualFunctional::s0(&ext).unwrap());
        let f = EntireFn::kernel(c(0.2, -0.3)).axpy(c(0.5, 1.0), &EntireFn::kernel(c(-1.0, 0.0)));
        for w in [c(0.3, 0.7), c(-1.1, -0.4)] {
            let lhs = sp.inner(&rhat_on_s0(&sp, w).unwrap(), &f).unwrap();
            let rhs = pairing_minus2(&ext, &s0, &ext.resolvent(w.conj(), &f).unwrap()).unwrap();
            assert!((lhs - rhs).norm() < 1e-9, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn boundary_routes_agree() {
        let sp = pw();
        let ext = half_extension(&sp);
        let h = ext.resolvent(I, &EntireFn::kernel(0.0.into())).unwrap();
        let v = boundary_functional(&sp, &h).unwrap();
        assert!((v - PI.tanh()).norm() < 1e-12);
        assert!((boundary_functional_alt(&sp, &h).unwrap() - v).norm() < 1e-12);
        let s0 = DualFunctional::s0(&ext).unwrap().with_rule(PairingRule::Duality);
        let q = pairing_minus2(&ext, &Functional::Dual(s0), &h).unwrap();
        assert!((q - v).norm() < 1e-8);
    }
}
