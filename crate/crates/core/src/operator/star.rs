use super::extension::{ExtensionHandle, GammaDomainElement};
use crate::fncore::EntireFn;
use crate::{Cplx, Result, I};

/// An element of `dom(S*) = dom(S_γ) ∔ span{d}`, written `g = R_γ(i) F + b d`
/// with `d = S_γ R_γ(i) k(·, i)`.
///
/// On it `S* g = S_γ R_γ(i) F - b R_γ(i) k(·, i)`.
#[derive(Clone, Debug)]
pub struct StarDomainElement {
    ext: ExtensionHandle,
    h: GammaDomainElement,
    b: Cplx,
    rki: GammaDomainElement,
    function: EntireFn,
}

/// `g = h_S + a⁺ k(·, -i) + a⁻ k(·, i)` with `h_S ∈ dom(S)`.
#[derive(Clone, Debug)]
pub struct DeficiencyForm {
    pub h_s: EntireFn,
    pub a_plus: Cplx,
    pub a_minus: Cplx,
}

impl StarDomainElement {
    pub fn new(ext: &ExtensionHandle, generator: &EntireFn, b: Cplx) -> Result<Self> {
        let h = ext.resolvent(I, generator)?;
        let rki = ext.resolvent(I, &EntireFn::kernel(I))?;
        let d = EntireFn::kernel(I).axpy(I, rki.function());
        let function = if b == Cplx::new(0.0, 0.0) { h.function().clone() } else { h.function().axpy(b, &d) };
        Ok(StarDomainElement { ext: ext.clone(), h, b, rki, function })
    }

    /// Embeds `g ∈ dom(S_γ)` with `b = 0`.
    pub fn from_domain(ext: &ExtensionHandle, g: &GammaDomainElement) -> Result<Self> {
        ext.check_level(g)?;
        Self::new(ext, &g.generator_at(I), 0.0.into())
    }

    /// `g = Σ c_j k(·, w_j) + h0` for `h0 ∈ dom(S_γ)`.
    pub fn from_kernel_combination(
        ext: &ExtensionHandle,
        terms: &[(Cplx, Cplx)],
        extra: Option<&GammaDomainElement>,
    ) -> Result<Self> {
        let s_mi = ext.s(-I)?;
        let mut b = Cplx::new(0.0, 0.0);
        let mut parts = Vec::with_capacity(terms.len() + 2);
        for &(cj, wj) in terms {
            b += cj * ext.s(wj.conj())? / s_mi;
            parts.push((cj * (wj.conj() - I), EntireFn::kernel(wj)));
        }
        parts.push((I * b, EntireFn::kernel(I)));
        if let Some(h0) = extra {
            ext.check_level(h0)?;
            parts.push((1.0.into(), h0.generator_at(I)));
        }
        Self::new(ext, &EntireFn::lin_comb(parts), b)
    }

    pub fn extension(&self) -> &ExtensionHandle {
        &self.ext
    }

    pub fn gamma_ref(&self) -> f64 {
        self.ext.gamma()
    }

    /// `F = (S_γ - i) h`.
    pub fn generator(&self) -> &EntireFn {
        self.h.generator()
    }

    pub fn h(&self) -> &GammaDomainElement {
        &self.h
    }

    pub fn b(&self) -> Cplx {
        self.b
    }

    pub fn function(&self) -> &EntireFn {
        &self.function
    }

    pub fn star_apply(&self) -> EntireFn {
        let sh = self.h.function().scale(I).add(self.h.generator());
        if self.b == Cplx::new(0.0, 0.0) {
            sh
        } else {
            sh.axpy(-self.b, self.rki.function())
        }
    }

    pub fn deficiency_form(&self) -> Result<DeficiencyForm> {
        let sp = self.ext.space();
        let kii = sp.kernel_diag(I)?;
        let ratio = self.ext.s(-I)? / self.ext.s(I)?;
        let f_i = sp.eval(self.generator(), I)?;
        let c_minus = I * f_i / (2.0 * kii);
        let c_plus = -c_minus * ratio;
        let term = self.generator().axpy(2.0 * I * c_minus, &EntireFn::kernel(I));
        let h_s = sp.diff_quotient(&term, 0.0.into(), &self.ext.s_fn(), I)?;
        Ok(DeficiencyForm {
            h_s,
            a_plus: c_plus + 0.5 * self.b * ratio,
            a_minus: c_minus + 0.5 * self.b,
        })
    }

    /// `g#`, again in `dom(S*)` with the same reference extension.
    pub fn sharp(&self) -> Result<Self> {
        let f_sharp = self.generator().sharp();
        let h_sharp = self.ext.resolvent(-I, &f_sharp)?;
        let gen = h_sharp.generator_at(I);
        let b = self.b.conj() * self.ext.s(I)? / self.ext.s(-I)?;
        Self::new(&self.ext, &gen, b)
    }
}
