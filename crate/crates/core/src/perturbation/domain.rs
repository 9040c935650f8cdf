use super::boundary::{boundary_functional, half_extension, rhat_on_s0};
use super::krein::DEGENERATE_TOL;
use crate::fncore::{DbSpace, EntireFn};
use crate::operator::{ExtensionHandle, GammaDomainElement, StarDomainElement};
use crate::{exec, Cplx, DbError, Result, I};
use std::f64::consts::{FRAC_PI_2, PI};

/// `g = h + b D` with `h ∈ dom(S_{π/2})` and
/// `D = S_{π/2} R_{π/2}(-i) R̂_{π/2}(i) s₀`.
#[derive(Clone, Debug)]
pub struct PerturbedDomainElement {
    space: DbSpace,
    gamma: f64,
    h: GammaDomainElement,
    b: Cplx,
    direction: EntireFn,
    source: Option<GammaDomainElement>,
}

impl PerturbedDomainElement {
    /// Assembles `h + b D` for a given `h ∈ dom(S_{π/2})`.
    pub fn new(space: &DbSpace, gamma: f64, h: GammaDomainElement, b: Cplx) -> Result<Self> {
        if (h.gamma() - FRAC_PI_2).abs() > 1e-15 {
            return Err(DbError::LevelMismatch);
        }
        Ok(PerturbedDomainElement { space: space.clone(), gamma, h, b, direction: direction(space)?, source: None })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn h(&self) -> &GammaDomainElement {
        &self.h
    }

    pub fn b(&self) -> Cplx {
        self.b
    }

    /// `D`.
    pub fn direction(&self) -> &EntireFn {
        &self.direction
    }

    /// The element of `dom(S_γ)` this was decomposed from, if any.
    pub fn source(&self) -> Option<&GammaDomainElement> {
        self.source.as_ref()
    }

    /// `h + b D`.
    pub fn function(&self) -> EntireFn {
        self.h.function().axpy(self.b, &self.direction)
    }

    /// `|⟨s₀, h⟩₂ - π b (tan γ + Re(s₀(i)/s_{π/2}(i)))|`.
    pub fn boundary_residual(&self) -> Result<f64> {
        let sp = &self.space;
        let ratio = sp.s_gamma(0.0, I)? / sp.s_gamma(FRAC_PI_2, I)?;
        let rhs = PI * self.b * (self.gamma.tan() + ratio.re);
        Ok((boundary_functional(sp, &self.h)? - rhs).norm())
    }

    /// Max over `grid` of `|h + b D - g|` against the source element.
    pub fn reassembly_error(&self, grid: &[Cplx]) -> Result<f64> {
        let src = self.source.as_ref().ok_or_else(|| DbError::invalid("no source element to compare with"))?;
        let f = self.function();
        let errs = exec::try_map(grid.len(), |j| {
            Ok::<_, DbError>((self.space.eval(&f, grid[j])? - self.space.eval(src.function(), grid[j])?).norm())
        })?;
        Ok(errs.into_iter().fold(0.0, f64::max))
    }

    /// The same function as an element of `dom(S*)` over `S_{π/2}`:
    /// `D = -π d / s_{π/2}(-i)` with `d = S_{π/2} R_{π/2}(i) k(·, i)`.
    pub fn to_star(&self) -> Result<StarDomainElement> {
        let ext = half_extension(&self.space);
        let b_star = -PI * self.b / self.space.s_gamma(FRAC_PI_2, -I)?;
        StarDomainElement::new(&ext, &self.h.generator_at(I), b_star)
    }
}

fn direction(space: &DbSpace) -> Result<EntireFn> {
    let half = half_extension(space);
    let phi = rhat_on_s0(space, I)?;
    let r = half.resolvent_apply(-I, &phi)?;
    Ok(phi.axpy(-I, &r))
}

/// Splits `g ∈ dom(S_γ)` as `h + b D` with `b = -cos γ f(i)/s_γ(i)`,
/// `f = (S_γ - i) g`, and `h = R_{π/2}(i) f + i b R_{π/2}(-i) R̂(i) s₀`.
pub fn dom_gamma_decompose(space: &DbSpace, gamma: f64, g: &GammaDomainElement) -> Result<PerturbedDomainElement> {
    let ext = ExtensionHandle::new(space, gamma);
    if (g.gamma() - ext.gamma()).abs() > 1e-15 {
        return Err(DbError::LevelMismatch);
    }
    let s_i = space.s_gamma(gamma, I)?;
    if s_i.norm() < DEGENERATE_TOL {
        return Err(DbError::DegenerateDenominator { value: s_i.norm() });
    }
    let f = g.generator_at(I);
    let cos = if (ext.gamma() - FRAC_PI_2).abs() < 1e-15 { 0.0 } else { gamma.cos() };
    let b = -cos * space.eval(&f, I)? / s_i;
    let half = half_extension(space);
    let h = if b == Cplx::new(0.0, 0.0) {
        half.resolvent(I, &f)?
    } else {
        // (S - i)(i b R(-i) φ) = i b φ + 2 b R(-i) φ
        let phi = rhat_on_s0(space, I)?;
        let r = half.resolvent_apply(-I, &phi)?;
        let gen = EntireFn::lin_comb(vec![(1.0.into(), f), (I * b, phi), (2.0 * b, r)]);
        half.resolvent(I, &gen)?
    };
    let mut out = PerturbedDomainElement::new(space, gamma, h, b)?;
    out.source = Some(g.clone());
    Ok(out)
}

/// `⟨s₀, g⟩_F = ⟨s₀, h⟩₂ - π b Re(s₀(i)/s_{π/2}(i))`.
pub fn pairing_s0_f(space: &DbSpace, g: &PerturbedDomainElement) -> Result<Cplx> {
    let ratio = space.s_gamma(0.0, I)? / space.s_gamma(FRAC_PI_2, I)?;
    Ok(boundary_functional(space, g.h())? - PI * g.b() * ratio.re)
}

/// Max over `tests` of
/// `|⟨g, S_{π/2} u⟩ - (cot γ/π) conj(⟨s₀, g⟩_F) ⟨s₀, u⟩₂ - ⟨S_γ g, u⟩|`.
pub fn s_tilde_gamma_pairing_check(
    space: &DbSpace,
    gamma: f64,
    g: &PerturbedDomainElement,
    tests: &[GammaDomainElement],
) -> Result<f64> {
    let src = g.source().ok_or_else(|| DbError::invalid("S_γ g needs the dom(S_γ) element"))?;
    let ext = ExtensionHandle::new(space, gamma);
    let half = half_extension(space);
    let sg = ext.apply(src)?;
    let gf = g.function();
    let cot = if (ext.gamma() - FRAC_PI_2).abs() < 1e-15 { 0.0 } else { 1.0 / gamma.tan() };
    let sigma = pairing_s0_f(space, g)?;
    let errs = exec::try_map(tests.len(), |j| {
        let u = &tests[j];
        let lhs = space.inner(&gf, &half.apply(u)?)? - cot / PI * sigma.conj() * boundary_functional(space, u)?;
        let rhs = space.inner(&sg, u.function())?;
        Ok::<_, DbError>((lhs - rhs).norm())
    })?;
    Ok(errs.into_iter().fold(0.0, f64::max))
}
