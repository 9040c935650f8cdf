//! Criteria 9–16: non-density, the Q-function, Krein's formula, the
//! perturbed domains, the example and cyclicity.

use super::{grid9, rand_nonreal, CheckDef, Ctx, Measured};
use crate::fncore::EntireFn;
use crate::numerics::{find_zeros, RootWindow};
use crate::operator::{ExtensionHandle, GammaDomainElement};
use crate::perturbation::{
    boundary_functional, boundary_functional_alt, cyclicity_check, dom_gamma_decompose, half_extension,
    krein_diff_check, qfunc, rank_one_eigenvalues, s_tilde_gamma_pairing_check, QForm,
};
use crate::scale::{counterexample_run, non_density, pairing_minus2, DualFunctional, Functional, PairingRule};
use crate::{c, exec, Cplx, Result, I};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Extension parameters for the perturbation checks.
pub const GAMMA_GRID: [f64; 5] = [PI / 6.0, PI / 4.0, PI / 3.0, 2.0 * PI / 3.0, 3.0 * PI / 4.0];

pub(super) fn checks() -> Vec<CheckDef> {
    vec![
        CheckDef { id: "c09.non_density", nominal: 0.0, scaled: false, run: non_density_check },
        CheckDef { id: "c10.qfunc.forms", nominal: 1e-9, scaled: true, run: q_forms },
        CheckDef { id: "c10.qfunc.pw_tan", nominal: 1e-10, scaled: true, run: q_tan },
        CheckDef { id: "c10.qfunc.herglotz", nominal: 0.0, scaled: false, run: q_herglotz },
        CheckDef { id: "c11.krein.resolvent", nominal: 1e-9, scaled: true, run: krein_resolvent },
        CheckDef { id: "c11.krein.lambda", nominal: 1e-10, scaled: true, run: krein_lambda },
        CheckDef { id: "c11.krein.eigenvalues", nominal: 1e-8, scaled: true, run: krein_eigenvalues },
        CheckDef { id: "c12.domain.reassembly", nominal: 1e-9, scaled: true, run: domain_reassembly },
        CheckDef { id: "c12.domain.boundary", nominal: 1e-8, scaled: true, run: domain_boundary },
        CheckDef { id: "c13.d0.in_domain", nominal: 1e-9, scaled: true, run: d0_inside },
        CheckDef { id: "c13.d0.outside", nominal: 0.0, scaled: false, run: d0_outside },
        CheckDef { id: "c13.d0.routes", nominal: 1e-8, scaled: true, run: d0_routes },
        CheckDef { id: "c14.s_tilde", nominal: 1e-7, scaled: true, run: s_tilde },
        CheckDef { id: "c15.counterexample.zero", nominal: 1e-12, scaled: true, run: example_zero },
        CheckDef { id: "c15.counterexample.phi_prime", nominal: 1e-8, scaled: true, run: example_phi_prime },
        CheckDef { id: "c15.counterexample.gap", nominal: 0.0, scaled: false, run: example_gap },
        CheckDef { id: "c16.cyclicity", nominal: 0.0, scaled: false, run: cyclicity },
    ]
}

/// Shortfall of `value` below `bound`, zero when the bound holds.
fn shortfall(value: f64, bound: f64) -> f64 {
    (bound - value).max(0.0)
}

fn non_density_check(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Measured> {
    let ext = half_extension(&ctx.space);
    let points = [c(0.0, 0.0), c(0.5, 0.0), c(-0.5, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 1.0), c(1.0, -1.0), c(0.3, 0.4)];
    let dict = points.iter().map(|&w| ext.resolvent(I, &EntireFn::kernel(w))).collect::<Result<Vec<_>>>()?;
    let r = non_density(&ext, &dict)?;
    let ratio = r.distance / r.reference;
    Ok(Measured::err(shortfall(ratio, 0.99))
        .with("distance", r.distance)
        .with("reference", r.reference)
        .with("ratio", ratio)
        .with("bound", 0.99)
        .with("condition", r.condition)
        .with("dictionary_size", r.dictionary_size))
}

fn q_forms(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let w = rand_nonreal(rng, 2.0, 1.5);
        let a = qfunc(&ctx.space, w, QForm::Definitional)?;
        let b = qfunc(&ctx.space, w, QForm::ClosedForm)?;
        worst = worst.max((a - b).norm() / (1.0 + b.norm()));
    }
    Ok(Measured::err(worst).with("points", 10usize))
}

fn q_tan(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let a = ctx.cfg.a;
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let w = rand_nonreal(rng, 2.0, 1.5);
        let q = qfunc(&ctx.space, w, QForm::ClosedForm)?;
        let t = PI * (a * w).tan();
        worst = worst.max((q - t).norm() / (1.0 + t.norm()));
    }
    Ok(Measured::err(worst).with("points", 10usize))
}

fn q_herglotz(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Measured> {
    let [lo, hi] = ctx.cfg.window;
    let mut min_im = f64::INFINITY;
    for k in 0..5 {
        let x = lo + (hi - lo) * (k as f64 + 0.5) / 5.0;
        for y in [0.05, 0.3, 1.0, 2.5] {
            min_im = min_im.min(qfunc(&ctx.space, c(x, y), QForm::ClosedForm)?.im);
        }
    }
    Ok(Measured::err(shortfall(min_im, 0.0)).with("points", 20usize).with("min_im_q", min_im).verdict(min_im > 0.0))
}

fn krein_inputs(ctx: &Ctx) -> Vec<EntireFn> {
    vec![ctx.dict[0].clone(), ctx.dict[9].clone(), ctx.dict[18].clone()]
}

fn krein_resolvent(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Measured> {
    let grid: Vec<Cplx> = (0..9).map(|k| c(-2.0 + 0.5 * k as f64, 0.0)).chain(grid9()).collect();
    let fs = krein_inputs(ctx);
    let cases: Vec<(f64, Cplx, usize)> = GAMMA_GRID
        .iter()
        .flat_map(|&g| [I, c(0.3, 0.7)].into_iter().flat_map(move |w| (0..3).map(move |j| (g, w, j))))
        .collect();
    let errs = exec::try_map(cases.len(), |p| {
        let (g, w, j) = cases[p];
        krein_diff_check(&ctx.space, g, w, &fs[j], &grid).map(|r| r.max_err)
    })?;
    Ok(Measured::err(errs.into_iter().fold(0.0, f64::max)).with("cases", cases.len()).with("gammas", GAMMA_GRID.to_vec()))
}

fn krein_lambda(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let mut worst = 0.0f64;
    let f = EntireFn::kernel(0.0.into());
    for &g in &GAMMA_GRID {
        for w in [I, c(0.3, 0.7), rand_nonreal(rng, 2.0, 1.5)] {
            worst = worst.max(krein_diff_check(&ctx.space, g, w, &f, &[])?.lambda_err);
        }
    }
    Ok(Measured::err(worst).with("gammas", GAMMA_GRID.to_vec()))
}

fn krein_eigenvalues(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Measured> {
    let sp = &ctx.space;
    let [lo, hi] = ctx.cfg.window;
    let mut worst = 0.0f64;
    let mut count = 0usize;
    for &g in &GAMMA_GRID {
        let poles = rank_one_eigenvalues(sp, g, lo, hi)?;
        let zeros = find_zeros(sp, g, RootWindow::for_space(sp, lo, hi)?)?;
        if poles.len() != zeros.len() {
            return Ok(Measured::err(f64::INFINITY).with("gamma", g).with("poles", poles.len()).with("zeros", zeros.len()));
        }
        count += zeros.len();
        worst = poles.iter().zip(&zeros).map(|(a, b)| (a - b).abs()).fold(worst, f64::max);
    }
    Ok(Measured::err(worst).with("eigenvalues", count).with("gammas", GAMMA_GRID.to_vec()))
}

fn random_gamma_element(ctx: &Ctx, gamma: f64, rng: &mut ChaCha8Rng) -> Result<GammaDomainElement> {
    let ext = ExtensionHandle::new(&ctx.space, gamma);
    let pivot = if rng.random_bool(0.5) { I } else { rand_nonreal(rng, 2.0, 1.5) };
    ext.resolvent(pivot, &ctx.random_b(rng))
}

fn domain_sweep(ctx: &Ctx, rng: &mut ChaCha8Rng, reassembly: bool) -> Result<Measured> {
    let grid = grid9();
    let mut worst = 0.0f64;
    for &g in &GAMMA_GRID {
        for _ in 0..10 {
            let elem = random_gamma_element(ctx, g, rng)?;
            let p = dom_gamma_decompose(&ctx.space, g, &elem)?;
            let err = if reassembly {
                let mut scale = 1.0f64;
                for &z in &grid {
                    scale = scale.max(ctx.space.eval(elem.function(), z)?.norm());
                }
                p.reassembly_error(&grid)? / scale
            } else {
                p.boundary_residual()? / (1.0 + PI * p.b().norm())
            };
            worst = worst.max(err);
        }
    }
    Ok(Measured::err(worst).with("per_gamma", 10usize).with("gammas", GAMMA_GRID.to_vec()))
}

fn domain_reassembly(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    domain_sweep(ctx, rng, true)
}

fn domain_boundary(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    domain_sweep(ctx, rng, false)
}

/// `R_{π/2}(w) F` with `F(w) = 0` (so the result lies in `dom(S)`) or with
/// `F(w) ≠ 0`.
fn d0_sample(ctx: &Ctx, rng: &mut ChaCha8Rng, in_domain: bool) -> Result<(GammaDomainElement, f64)> {
    let half = half_extension(&ctx.space);
    let w = rand_nonreal(rng, 2.0, 1.5);
    let f = ctx.random_b(rng);
    let gen = if in_domain {
        let fw = ctx.space.eval(&f, w)?;
        f.axpy(-fw / ctx.space.kernel_diag(w)?, &EntireFn::kernel(w))
    } else {
        f
    };
    let scale = ctx.space.norm(&gen)?;
    Ok((half.resolvent(w, &gen)?, scale))
}

fn d0_inside(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let (h, scale) = d0_sample(ctx, rng, true)?;
        worst = worst.max(boundary_functional(&ctx.space, &h)?.norm() / scale.max(1.0));
    }
    Ok(Measured::err(worst).with("samples", 10usize))
}

fn d0_outside(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let mut least = f64::INFINITY;
    for _ in 0..10 {
        let (h, _) = d0_sample(ctx, rng, false)?;
        least = least.min(boundary_functional(&ctx.space, &h)?.norm());
    }
    Ok(Measured::err(shortfall(least, 1e-6)).with("samples", 10usize).with("min_abs", least).with("bound", 1e-6))
}

fn d0_routes(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let half = half_extension(&ctx.space);
    let s0 = Functional::Dual(DualFunctional::s0(&half)?.with_rule(PairingRule::Duality));
    let mut worst = 0.0f64;
    for k in 0..6 {
        let (h, _) = d0_sample(ctx, rng, k % 2 == 0)?;
        let a = boundary_functional(&ctx.space, &h)?;
        let b = boundary_functional_alt(&ctx.space, &h)?;
        let q = pairing_minus2(&half, &s0, &h)?;
        worst = worst.max((a - b).norm().max((a - q).norm()) / (1.0 + a.norm()));
    }
    Ok(Measured::err(worst).with("samples", 6usize).with("routes", "closed,alternate,duality"))
}

fn s_tilde(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let half = half_extension(&ctx.space);
    let tests = (0..5)
        .map(|_| {
            let v = rand_nonreal(rng, 2.0, 1.5);
            half.resolvent(v, &ctx.random_b(rng))
        })
        .collect::<Result<Vec<_>>>()?;
    let elems = GAMMA_GRID.iter().map(|&g| random_gamma_element(ctx, g, rng)).collect::<Result<Vec<_>>>()?;
    let errs = exec::try_map(GAMMA_GRID.len(), |j| {
        let g = GAMMA_GRID[j];
        let p = dom_gamma_decompose(&ctx.space, g, &elems[j])?;
        s_tilde_gamma_pairing_check(&ctx.space, g, &p, &tests)
    })?;
    Ok(Measured::err(errs.into_iter().fold(0.0, f64::max)).with("tests", 5usize).with("gammas", GAMMA_GRID.to_vec()))
}

fn example_zero(_: &Ctx, _: &mut ChaCha8Rng) -> Result<Measured> {
    let r = counterexample_run(1.0)?;
    Ok(Measured::err(r.zero_residual).with("a", 1.0))
}

fn example_phi_prime(_: &Ctx, _: &mut ChaCha8Rng) -> Result<Measured> {
    let r = counterexample_run(1.0)?;
    let err = (r.norm_phi_prime_sq - r.norm_phi_prime_sq_exact).abs() / r.norm_phi_prime_sq_exact;
    Ok(Measured::err(err).with("a", 1.0).with("quadrature", r.norm_phi_prime_sq).with("closed_form", r.norm_phi_prime_sq_exact))
}

fn example_gap(_: &Ctx, _: &mut ChaCha8Rng) -> Result<Measured> {
    let r = counterexample_run(1.0)?;
    Ok(Measured::err(shortfall(r.relative_gap, 0.01))
        .with("a", 1.0)
        .with("relative_gap", r.relative_gap)
        .with("norm_eta_prime_sq", r.norm_eta_prime_sq)
        .with("bound", 0.01)
        .verdict(r.relative_gap > 0.01))
}

fn cyclicity(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Measured> {
    let ws = [c(1.0, 1.0), c(-1.0, 1.0), c(0.5, -0.8), c(-0.5, -0.8), c(2.0, 0.5), c(-2.0, 0.5), c(0.2, 1.5), c(-0.2, -1.5)];
    let targets = [ctx.dict[0].clone(), ctx.dict[17].clone(), ctx.dict[19].clone()];
    let mut worst_step = f64::NEG_INFINITY;
    let mut residuals = Vec::new();
    let mut ill = false;
    for t in &targets {
        let r = [2, 4, 8]
            .iter()
            .map(|&n| cyclicity_check(&ctx.space, &ws[..n], t))
            .collect::<Result<Vec<_>>>()?;
        ill |= r.iter().any(|x| x.ill_conditioned);
        for pair in r.windows(2) {
            worst_step = worst_step.max(pair[1].relative - pair[0].relative);
        }
        residuals.extend(r.iter().map(|x| x.relative));
    }
    Ok(Measured::err(worst_step.max(0.0))
        .with("relative_residuals", residuals)
        .with("ill_conditioned", ill)
        .verdict(worst_step < 0.0))
}

