use crate::fncore::{DbSpace, EntireFn};
use crate::{Cplx, DbError, Result};
use std::f64::consts::PI;

/// `|s_γ(w)|` below this marks `w` as a spectral point.
pub const SPECTRAL_TOL: f64 = 1e-12;

/// The selfadjoint extension `S_γ` of `S` on a space, `γ ∈ [0, π)`.
///
/// Its domain is `{ g = R_γ(w) f }`, where
/// `R_γ(w) f = (f - f(w) s_γ / s_γ(w)) / (z - w)`, and
/// `S_γ g = z g + (f(w)/s_γ(w)) s_γ`.
#[derive(Clone, Debug)]
pub struct ExtensionHandle {
    space: DbSpace,
    gamma: f64,
}

/// An element `g = R_γ(w) f` of `dom(S_γ)`, stored with its generator `f`.
///
/// The identity `(S_γ - w) g = f` holds by construction.
#[derive(Clone, Debug)]
pub struct GammaDomainElement {
    gamma: f64,
    generator: EntireFn,
    w: Cplx,
    coeff: Cplx,
    function: EntireFn,
}

impl GammaDomainElement {
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `f = (S_γ - w) g`.
    pub fn generator(&self) -> &EntireFn {
        &self.generator
    }

    pub fn pivot(&self) -> Cplx {
        self.w
    }

    /// `f(w) / s_γ(w)`.
    pub fn coeff(&self) -> Cplx {
        self.coeff
    }

    /// `g` itself.
    pub fn function(&self) -> &EntireFn {
        &self.function
    }

    /// `(S_γ - v) g = f + (w - v) g`.
    pub fn generator_at(&self, v: Cplx) -> EntireFn {
        if v == self.w {
            self.generator.clone()
        } else {
            self.generator.axpy(self.w - v, &self.function)
        }
    }
}

impl ExtensionHandle {
    /// `γ` is reduced modulo `π`.
    pub fn new(space: &DbSpace, gamma: f64) -> Self {
        ExtensionHandle { space: space.clone(), gamma: gamma.rem_euclid(PI) }
    }

    pub fn space(&self) -> &DbSpace {
        &self.space
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn s(&self, z: Cplx) -> Result<Cplx> {
        self.space.s_gamma(self.gamma, z)
    }

    pub fn s_fn(&self) -> EntireFn {
        EntireFn::s(self.gamma)
    }

    fn regular_s(&self, w: Cplx) -> Result<Cplx> {
        let sw = self.s(w)?;
        if sw.norm() < SPECTRAL_TOL {
            return Err(DbError::SpectralPoint { w, modulus: sw.norm() });
        }
        Ok(sw)
    }

    /// `R_γ(w) f` as a domain element.
    pub fn resolvent(&self, w: Cplx, f: &EntireFn) -> Result<GammaDomainElement> {
        let sw = self.regular_s(w)?;
        let coeff = self.space.eval(f, w)? / sw;
        let function = self.space.diff_quotient(f, coeff, &self.s_fn(), w)?;
        Ok(GammaDomainElement { gamma: self.gamma, generator: f.clone(), w, coeff, function })
    }

    pub fn resolvent_apply(&self, w: Cplx, f: &EntireFn) -> Result<EntireFn> {
        Ok(self.resolvent(w, f)?.function)
    }

    /// `S_γ g = z g + (f(w)/s_γ(w)) s_γ`.
    pub fn apply(&self, g: &GammaDomainElement) -> Result<EntireFn> {
        self.check_level(g)?;
        Ok(g.function.mul_z().axpy(g.coeff, &self.s_fn()))
    }

    pub(crate) fn check_level(&self, g: &GammaDomainElement) -> Result<()> {
        if (g.gamma - self.gamma).abs() > 1e-15 {
            return Err(DbError::LevelMismatch);
        }
        Ok(())
    }

    /// Cayley transform `U_γ(w) f = f + (w - w̄) R_γ(w) f`.
    pub fn cayley_apply(&self, w: Cplx, f: &EntireFn) -> Result<EntireFn> {
        let r = self.resolvent_apply(w, f)?;
        Ok(f.axpy(w - w.conj(), &r))
    }

    /// Eigenfunction `s_γ/(z - μ)` at a real zero `μ` of `s_γ`, as a domain
    /// element generated at `i`.
    pub fn eigenfunction(&self, mu: f64) -> Result<GammaDomainElement> {
        let m = Cplx::new(mu, 0.0);
        let s = self.s_fn();
        let smu = self.s(m)?;
        if smu.norm() > 1e-9 {
            return Err(DbError::invalid(format!("{mu} is not a zero of s_γ (|s| = {:e})", smu.norm())));
        }
        let u = self.space.diff_quotient(&s, 0.0.into(), &s, m)?;
        let i = Cplx::i();
        self.resolvent(i, &u.scale(m - i))
    }

    /// `s_γ/(z - μ)` built directly as a quotient.
    pub fn eigen_quotient(&self, mu: f64) -> Result<EntireFn> {
        let s = self.s_fn();
        self.space.diff_quotient(&s, 0.0.into(), &s, Cplx::new(mu, 0.0))
    }
}
