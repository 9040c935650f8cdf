use super::assoc::{pairing_f, AssocFunction};
use crate::fncore::EntireFn;
use crate::operator::{ExtensionHandle, GammaDomainElement, StarDomainElement};
use crate::{Cplx, DbError, Result, I};
use std::f64::consts::{FRAC_PI_2, PI};

/// Where a dual functional lives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Level {
    FMinus1,
    BMinus2 { gamma: f64 },
}

/// How the pairing with `dom(S_γ)` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PairingRule {
    /// Through the `F₋₁ × F₊₁` pairing of the representative.
    Duality,
    /// For `φ = c·s_{γ+π/2}` at level `B₋₂(γ)`: `⟨φ, g⟩₂ = ⟨R̂_γ(-i)φ, (S_γ - i) g⟩`
    /// with the closed form `R̂_γ(w) s_{γ+π/2} = π k(·, w̄)/s_γ(w)`.
    SResolvent { coeff: Cplx },
}

/// An element of `F₋₁` or `B₋₂` carried by an associated-function representative.
#[derive(Clone, Debug)]
pub struct DualFunctional {
    pub rep: AssocFunction,
    pub level: Level,
    pub rule: PairingRule,
}

impl DualFunctional {
    pub fn in_f_minus1(rep: AssocFunction) -> Self {
        DualFunctional { rep, level: Level::FMinus1, rule: PairingRule::Duality }
    }

    /// `c·s_{γ+π/2}` at level `B₋₂(γ)`, paired through the closed-form resolvent.
    pub fn boundary(ext: &ExtensionHandle, coeff: Cplx) -> Result<Self> {
        let sp = ext.space();
        let rep = AssocFunction::from_s(sp, ext.gamma() + FRAC_PI_2)?.scale(coeff);
        Ok(DualFunctional { rep, level: Level::BMinus2 { gamma: ext.gamma() }, rule: PairingRule::SResolvent { coeff } })
    }

    /// `s_0` as a functional at level `B₋₂(π/2)`.
    pub fn s0(ext: &ExtensionHandle) -> Result<Self> {
        if (ext.gamma() - FRAC_PI_2).abs() > 1e-15 {
            return Err(DbError::LevelMismatch);
        }
        // s_0 = -s_π = -s_{γ+π/2} at γ = π/2.
        Self::boundary(ext, (-1.0).into())
    }

    pub fn with_rule(mut self, rule: PairingRule) -> Self {
        self.rule = rule;
        self
    }
}

#[derive(Clone, Debug)]
pub enum Functional {
    InB(EntireFn),
    Dual(DualFunctional),
}

/// `⟨φ, g⟩₂ = ⟨R̂_γ(-i) φ, (S_γ - i) g⟩` for `g ∈ dom(S_γ)`.
pub fn pairing_minus2(ext: &ExtensionHandle, phi: &Functional, g: &GammaDomainElement) -> Result<Cplx> {
    let sp = ext.space();
    let f_i = g.generator_at(I);
    match phi {
        Functional::InB(f) => {
            let r = ext.resolvent_apply(-I, f)?;
            sp.inner(&r, &f_i)
        }
        Functional::Dual(d) => {
            if let Level::BMinus2 { gamma } = d.level {
                if (gamma.rem_euclid(PI) - ext.gamma()).abs() > 1e-15 {
                    return Err(DbError::LevelMismatch);
                }
            }
            match d.rule {
                PairingRule::Duality => {
                    let star = StarDomainElement::from_domain(ext, g)?;
                    pairing_f(&d.rep, &star)
                }
                PairingRule::SResolvent { coeff } => {
                    if d.level == Level::FMinus1 {
                        return Err(DbError::LevelMismatch);
                    }
                    let fi = sp.eval(&f_i, I)?;
                    Ok(coeff.conj() * PI * fi / ext.s(I)?)
                }
            }
        }
    }
}
