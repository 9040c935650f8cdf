use crate::fncore::{DbSpace, EntireFn};
use crate::numerics::{find_zeros, inner_b, RootWindow};
use crate::operator::{ExtensionHandle, StarDomainElement};
use crate::{exec, Cplx, DbError, Result, I};
use std::f64::consts::{FRAC_PI_2, PI};

/// An associated function `f = z·g + h` with `g, h ∈ B`.
#[derive(Clone, Debug)]
pub struct AssocFunction {
    g: EntireFn,
    h: EntireFn,
    function: EntireFn,
}

impl AssocFunction {
    pub fn new(g: EntireFn, h: EntireFn) -> Self {
        let function = g.mul_z().add(&h);
        AssocFunction { g, h, function }
    }

    /// An element of `B` itself (`g = 0`).
    pub fn from_b(f: &EntireFn) -> Self {
        AssocFunction { g: EntireFn::zero(), h: f.clone(), function: f.clone() }
    }

    /// `s_γ = (z - μ) u_μ` split at the real zero `μ` of `s_γ` closest to 0.
    pub fn from_s(space: &DbSpace, gamma: f64) -> Result<Self> {
        let reach = 1.01 * PI / space.bandwidth();
        let zeros = find_zeros(space, gamma, RootWindow::for_space(space, -reach, reach)?)?;
        let mu = zeros
            .into_iter()
            .min_by(|x, y| x.abs().total_cmp(&y.abs()))
            .ok_or_else(|| DbError::invalid("s_γ has no zero near the origin"))?;
        let s = EntireFn::s(gamma);
        let u = space.diff_quotient(&s, 0.0.into(), &s, Cplx::new(mu, 0.0))?;
        Ok(Self::new(u.clone(), u.scale((-mu).into())))
    }

    /// `s_γ = cos(γ-γ0) s_{γ0} + sin(γ-γ0) s_{γ0+π/2}`, each part split by [`Self::from_s`].
    pub fn from_s_beta(space: &DbSpace, gamma: f64, gamma0: f64) -> Result<Self> {
        let a = Self::from_s(space, gamma0)?;
        let b = Self::from_s(space, gamma0 + FRAC_PI_2)?;
        let (c, s) = ((gamma - gamma0).cos(), (gamma - gamma0).sin());
        Ok(Self::new(
            EntireFn::lin_comb(vec![(c.into(), a.g.clone()), (s.into(), b.g.clone())]),
            EntireFn::lin_comb(vec![(c.into(), a.h.clone()), (s.into(), b.h.clone())]),
        ))
    }

    pub fn g(&self) -> &EntireFn {
        &self.g
    }

    pub fn h(&self) -> &EntireFn {
        &self.h
    }

    /// `z g(z) + h(z)`.
    pub fn function(&self) -> &EntireFn {
        &self.function
    }

    pub fn sharp(&self) -> Self {
        Self::new(self.g.sharp(), self.h.sharp())
    }

    pub fn scale(&self, c: Cplx) -> Self {
        Self::new(self.g.scale(c), self.h.scale(c))
    }
}

/// `⟨f, g⟩` for `f ∈ Assoc B` and `g ∈ dom(S*)`:
/// `∫ conj(f) h_S / |e|² + a⁺ f#(i) + a⁻ f#(-i)` with
/// `g = h_S + a⁺ k(·,-i) + a⁻ k(·,i)`, `h_S ∈ dom(S)`.
///
/// The integral always uses the quadrature engine.
pub fn pairing_f(f: &AssocFunction, g: &StarDomainElement) -> Result<Cplx> {
    let sp = g.extension().space();
    let dform = g.deficiency_form()?;
    let integral = inner_b(sp, &sp.quadrature_engine(), f.function(), &dform.h_s)?;
    let f_sharp_i = sp.eval(f.function(), -I)?.conj();
    let f_sharp_mi = sp.eval(f.function(), I)?.conj();
    Ok(integral + dform.a_plus * f_sharp_i + dform.a_minus * f_sharp_mi)
}

/// Max over the grid of `|conj(pairing_f(f, k(·,x))) - f(x)|`.
pub fn assoc_roundtrip(ext: &ExtensionHandle, f: &AssocFunction, grid: &[f64]) -> Result<f64> {
    let sp = ext.space();
    let errs = exec::try_map(grid.len(), |j| {
        let x = Cplx::new(grid[j], 0.0);
        let kx = StarDomainElement::from_kernel_combination(ext, &[(1.0.into(), x)], None)?;
        let value = pairing_f(f, &kx)?.conj();
        Ok::<_, DbError>((value - sp.eval(f.function(), x)?).norm())
    })?;
    Ok(errs.into_iter().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;

    #[test]
    fn s_split_reassembles() {
        let sp = DbSpace::paley_wiener(PI).unwrap();
        for (f, g) in [
            (AssocFunction::from_s(&sp, 0.7).unwrap(), 0.7),
            (AssocFunction::from_s_beta(&sp, PI / 4.0, 0.0).unwrap(), PI / 4.0),
        ] {
            for z in [c(0.3, 0.0), c(-1.2, 0.5), c(2.0, -0.3)] {
                let v = sp.eval(f.function(), z).unwrap();
                assert!((v - sp.s_gamma(g, z).unwrap()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn pairing_with_kernel_at_minus_i() {
        // f = k(·,0), g = k(·,-i): ⟨f, g⟩ = conj(g(0))... = k(0,-i) = sinh π / π.
        let sp = DbSpace::paley_wiener(PI).unwrap();
        let ext = ExtensionHandle::new(&sp, FRAC_PI_2);
        let g = StarDomainElement::from_kernel_combination(&ext, &[(1.0.into(), -I)], None).unwrap();
        let p = pairing_f(&AssocFunction::from_b(&EntireFn::kernel(0.0.into())), &g).unwrap();
        assert!((p - Cplx::from(PI.sinh() / PI)).norm() < 1e-9, "{p}");
        let s0 = AssocFunction::from_s(&sp, 0.0).unwrap();
        let p = pairing_f(&s0, &g).unwrap();
        assert!((p - c(0.0, PI.sinh())).norm() < 1e-9, "{p}");
    }
}
