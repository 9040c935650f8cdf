use super::boundary::{half_extension, rhat_on_s0};
use crate::fncore::{DbSpace, EntireFn};
use crate::numerics::{find_real_zeros, RootWindow};
use crate::operator::{ExtensionHandle, SPECTRAL_TOL};
use crate::{exec, Cplx, DbError, Result, I};
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

/// Guard on `s_γ(i)` and on the Krein denominator.
pub const DEGENERATE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QForm {
    /// `⟨R̂(i)s₀, (I + wS_{π/2}) R_{π/2}(w) R̂(i)s₀⟩`.
    Definitional,
    /// `π Re(s₀(i)/s_{π/2}(i)) - π s₀(w)/s_{π/2}(w)`.
    ClosedForm,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KreinData {
    pub gamma: f64,
    pub lambda: f64,
    pub q_form: QForm,
}

impl KreinData {
    pub fn new(space: &DbSpace, gamma: f64, q_form: QForm) -> Result<Self> {
        Ok(KreinData { gamma, lambda: lambda_of_gamma(space, gamma)?, q_form })
    }
}

fn ratio_at_i(space: &DbSpace) -> Result<Cplx> {
    Ok(space.s_gamma(0.0, I)? / space.s_gamma(FRAC_PI_2, I)?)
}

fn check_gamma(gamma: f64) -> Result<()> {
    let g = gamma.rem_euclid(PI);
    if !gamma.is_finite() || g < 1e-12 || (g - FRAC_PI_2).abs() < 1e-12 || PI - g < 1e-12 {
        return Err(DbError::invalid(format!("γ = {gamma} must lie in (0, π) without π/2")));
    }
    Ok(())
}

/// `λ = π tan γ + π Re(s₀(i)/s_{π/2}(i))`.
pub fn lambda_of_gamma(space: &DbSpace, gamma: f64) -> Result<f64> {
    check_gamma(gamma)?;
    Ok(PI * gamma.tan() + PI * ratio_at_i(space)?.re)
}

pub fn qfunc(space: &DbSpace, w: Cplx, form: QForm) -> Result<Cplx> {
    let sw = space.s_gamma(FRAC_PI_2, w)?;
    if sw.norm() < SPECTRAL_TOL {
        return Err(DbError::SpectralPoint { w, modulus: sw.norm() });
    }
    match form {
        QForm::ClosedForm => Ok(PI * ratio_at_i(space)?.re - PI * space.s_gamma(0.0, w)? / sw),
        QForm::Definitional => {
            if w.im == 0.0 {
                return Err(DbError::invalid("the definitional Q-function needs a nonreal point"));
            }
            let ext = half_extension(space);
            let phi = rhat_on_s0(space, I)?;
            let g = ext.resolvent(w, &phi)?;
            let psi = g.function().axpy(w, &ext.apply(&g)?);
            // φ = c k(·, -i), so ⟨φ, ψ⟩ = c̄ ψ(-i).
            let c = -PI / space.s_gamma(FRAC_PI_2, I)?;
            Ok(c.conj() * space.eval(&psi, -I)?)
        }
    }
}

/// `tan γ + s₀(w)/s_{π/2}(w)`.
pub fn krein_denominator(space: &DbSpace, gamma: f64, w: Cplx) -> Result<Cplx> {
    let sw = space.s_gamma(FRAC_PI_2, w)?;
    if sw.norm() < SPECTRAL_TOL {
        return Err(DbError::SpectralPoint { w, modulus: sw.norm() });
    }
    Ok(gamma.tan() + space.s_gamma(0.0, w)? / sw)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KreinReport {
    /// Max over the grid of `|(R_γ(w) - R_{π/2}(w)) f - rank-one term|`.
    pub max_err: f64,
    /// `|(λ - q(w)) - π(tan γ + s₀(w)/s_{π/2}(w))|`.
    pub lambda_err: f64,
}

/// Krein's formula
/// `R_γ(w) - R_{π/2}(w) = ⟨R̂(w̄)s₀, ·⟩ R̂(w)s₀ / (π tan γ + π s₀(w)/s_{π/2}(w))`
/// checked pointwise on `grid`.
pub fn krein_diff_check(space: &DbSpace, gamma: f64, w: Cplx, f: &EntireFn, grid: &[Cplx]) -> Result<KreinReport> {
    check_gamma(gamma)?;
    if w.im == 0.0 {
        return Err(DbError::invalid("Krein's formula is checked at nonreal points"));
    }
    let denom = krein_denominator(space, gamma, w)?;
    if denom.norm() < DEGENERATE_TOL {
        return Err(DbError::DegenerateDenominator { value: denom.norm() });
    }
    let half = half_extension(space);
    let ext = ExtensionHandle::new(space, gamma);
    let direct = ext.resolvent_apply(w, f)?.sub(&half.resolvent_apply(w, f)?);
    let phi = rhat_on_s0(space, w)?;
    // ⟨R̂(w̄)s₀, f⟩ = conj(-π/s_{π/2}(w̄)) f(w) by the reproducing property
    let c_bar = -PI / space.s_gamma(FRAC_PI_2, w.conj())?;
    let bracket = c_bar.conj() * space.eval(f, w)?;
    let rank_one = phi.scale(bracket / (PI * denom));
    let errs = exec::try_map(grid.len(), |j| {
        Ok::<_, DbError>((space.eval(&direct, grid[j])? - space.eval(&rank_one, grid[j])?).norm())
    })?;
    let lambda = lambda_of_gamma(space, gamma)?;
    let q = qfunc(space, w, QForm::ClosedForm)?;
    Ok(KreinReport { max_err: errs.into_iter().fold(0.0, f64::max), lambda_err: ((lambda - q) - PI * denom).norm() })
}

/// Real zeros of `tan γ + s₀(x)/s_{π/2}(x)` in `[lo, hi]`: the eigenvalues
/// of the rank-one perturbation, read off from the Krein denominator.
pub fn rank_one_eigenvalues(space: &DbSpace, gamma: f64, lo: f64, hi: f64) -> Result<Vec<f64>> {
    check_gamma(gamma)?;
    // sin γ s_{π/2} + cos γ s₀, the denominator times cos γ s_{π/2}
    let (s, c) = (gamma.sin(), gamma.cos());
    let window = RootWindow::for_space(space, lo, hi)?;
    let f = |x: f64| -> Result<(f64, f64)> {
        let z = Cplx::new(x, 0.0);
        let j0 = space.s_gamma_jet(0.0, z, 2)?;
        let j1 = space.s_gamma_jet(FRAC_PI_2, z, 2)?;
        let d = j1.value() * s + j0.value() * c;
        let dd = j1.coeff(1) * s + j0.coeff(1) * c;
        Ok((d.re, dd.re))
    };
    let roots = find_real_zeros(f, window)?;
    let mut out = Vec::with_capacity(roots.len());
    for x in roots {
        let den = krein_denominator(space, gamma, Cplx::new(x, 0.0))?;
        if den.norm() < 1e-8 {
            out.push(x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;

    fn pw() -> DbSpace {
        DbSpace::paley_wiener(PI).unwrap()
    }

    #[test]
    fn closed_form_is_pi_tan() {
        let sp = pw();
        let q = qfunc(&sp, c(0.25, 0.0), QForm::ClosedForm).unwrap();
        assert!((q - PI).norm() < 1e-12);
        let qi = qfunc(&sp, I, QForm::ClosedForm).unwrap();
        assert!((qi - I * PI * PI.tanh()).norm() < 1e-12);
    }

    #[test]
    fn definitional_matches_closed_form() {
        for sp in [pw(), DbSpace::shifted_paley_wiener(1.0).unwrap()] {
            for w in [c(0.3, 0.7), I, c(-1.2, -0.5), c(2.0, 0.1)] {
                let a = qfunc(&sp, w, QForm::Definitional).unwrap();
                let b = qfunc(&sp, w, QForm::ClosedForm).unwrap();
                assert!((a - b).norm() < 1e-9 * (1.0 + b.norm()), "{w}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn krein_frozen_example() {
        let sp = pw();
        let grid: Vec<Cplx> = (0..9).map(|k| c(-2.0 + 0.5 * k as f64, 0.0)).collect();
        let r = krein_diff_check(&sp, PI / 4.0, I, &EntireFn::kernel(0.0.into()), &grid).unwrap();
        assert!(r.max_err < 1e-9 && r.lambda_err < 1e-10, "{r:?}");
        assert!((lambda_of_gamma(&sp, PI / 4.0).unwrap() - PI).abs() < 1e-12);
        assert!(lambda_of_gamma(&sp, FRAC_PI_2).is_err());
    }

    #[test]
    fn eigenvalues_are_zeros_of_s_gamma() {
        let sp = pw();
        let g = PI / 3.0;
        let ev = rank_one_eigenvalues(&sp, g, -3.0, 3.0).unwrap();
        // s_γ(x) = sin(πx - γ): zeros at x = k + 1/3
        let expect: Vec<f64> = (-3..3).map(|k| k as f64 + 1.0 / 3.0).collect();
        assert_eq!(ev.len(), expect.len(), "{ev:?}");
        for (a, b) in ev.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}
