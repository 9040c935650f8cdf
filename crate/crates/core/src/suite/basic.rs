//! Criteria 1–8: kernels, spectra, resolvent identities and the upper scale.

use super::{grid9, pointwise, rand_nonreal, rand_unit, CheckDef, Ctx, Measured};
use crate::fncore::{DbSpace, EntireFn};
use crate::numerics::{find_zeros, interlace_check, IpEngine, RootWindow, Sampled};
use crate::operator::{ExtensionHandle, GammaDomainElement, StarDomainElement};
use crate::scale::{
    assoc_roundtrip, inner_plus2, inner_plus_f_definitional, kernel_plus2, norm_plus2, pairing_f, sharp_gamma,
    AssocFunction,
};
use crate::{c, exec, Cplx, DbError, Result, I};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI};

pub(super) fn checks() -> Vec<CheckDef> {
    vec![
        CheckDef { id: "c01.kernel_via_s", nominal: 1e-10, scaled: true, run: kernel_via_s },
        CheckDef { id: "c02.reproducing.sampling", nominal: 1e-6, scaled: true, run: reproducing_sampling },
        CheckDef { id: "c02.reproducing.quadrature", nominal: 1e-6, scaled: true, run: reproducing_quadrature },
        CheckDef { id: "c03.s_beta", nominal: 1e-12, scaled: true, run: s_beta },
        CheckDef { id: "c04.spectrum.integers", nominal: 1e-10, scaled: true, run: spectrum_integers },
        CheckDef { id: "c04.spectrum.half_integers", nominal: 1e-10, scaled: true, run: spectrum_half_integers },
        CheckDef { id: "c04.spectrum.interlacing", nominal: 0.0, scaled: false, run: interlacing },
        CheckDef { id: "c05.quotient_difference", nominal: 1e-10, scaled: true, run: quotient_difference },
        CheckDef { id: "c05.symmetry", nominal: 1e-10, scaled: true, run: symmetry },
        CheckDef { id: "c05.cayley_kernel", nominal: 1e-10, scaled: true, run: cayley_kernel },
        CheckDef { id: "c05.cayley_on_kernel", nominal: 1e-10, scaled: true, run: cayley_on_kernel },
        CheckDef { id: "c06.cayley_unitary", nominal: 1e-8, scaled: true, run: cayley_unitary },
        CheckDef { id: "c06.sharp_plus2", nominal: 1e-8, scaled: true, run: sharp_plus2 },
        CheckDef { id: "c06.sharp_plus_f", nominal: 1e-8, scaled: true, run: sharp_plus_f },
        CheckDef { id: "c07.kernel_plus2", nominal: 1e-8, scaled: true, run: kernel_plus2_check },
        CheckDef { id: "c08.duality", nominal: 1e-7, scaled: true, run: duality },
        CheckDef { id: "c08.assoc_roundtrip", nominal: 1e-7, scaled: true, run: roundtrip },
    ]
}

fn rand_gamma(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(0.0..PI)
}

fn kernel_via_s(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let sp = &ctx.space;
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let z = c(rng.random_range(-3.0..3.0), rng.random_range(-1.5..1.5));
        let w = c(rng.random_range(-3.0..3.0), rng.random_range(-1.5..1.5));
        let g0 = rand_gamma(rng);
        let k = sp.kernel(z, w)?;
        worst = worst.max((k - sp.kernel_via_s(g0, z, w)?).norm() / k.norm());
    }
    Ok(Measured::err(worst).with("draws", 100usize).with("measure", "relative"))
}

fn reproducing_points(rng: &mut ChaCha8Rng) -> Vec<Cplx> {
    (0..10).map(|_| c(rng.random_range(-2.5..2.5), rng.random_range(-1.2..1.2))).collect()
}

fn reproducing_sampling(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let sp = &ctx.space;
    let engine = *sp.engine();
    let ws = reproducing_points(rng);
    let fs = exec::try_map(ctx.dict.len(), |j| Sampled::new(sp, &engine, &ctx.dict[j]))?;
    let ks = exec::try_map(ws.len(), |j| Sampled::new(sp, &engine, &EntireFn::kernel(ws[j])))?;
    let mut worst = 0.0f64;
    for (j, f) in ctx.dict.iter().enumerate() {
        for (l, &w) in ws.iter().enumerate() {
            let fw = sp.eval(f, w)?;
            let ip = Sampled::inner(sp, &engine, &ks[l], &fs[j])?;
            worst = worst.max((ip - fw).norm() / (1.0 + fw.norm()));
        }
    }
    Ok(Measured::err(worst).with("method", "sampling").with("functions", ctx.dict.len()).with("points", 10usize))
}

fn reproducing_quadrature(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let sp = ctx.space.clone().with_engine(IpEngine::default_quadrature())?;
    let ws = reproducing_points(rng);
    let n = ctx.dict.len() * ws.len();
    let errs = exec::try_map(n, |p| {
        let (f, w) = (&ctx.dict[p / ws.len()], ws[p % ws.len()]);
        let fw = sp.eval(f, w)?;
        let ip = sp.inner(&EntireFn::kernel(w), f)?;
        Ok::<_, DbError>((ip - fw).norm() / (1.0 + fw.norm()))
    })?;
    let worst = errs.into_iter().fold(0.0, f64::max);
    Ok(Measured::err(worst).with("method", "quadrature").with("functions", ctx.dict.len()).with("points", 10usize))
}

fn s_beta(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let sp = &ctx.space;
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let z = c(rng.random_range(-3.0..3.0), rng.random_range(-1.5..1.5));
        let (b, g0) = (rand_gamma(rng), rand_gamma(rng));
        let (s0, s1) = (sp.s_gamma(g0, z)?, sp.s_gamma(g0 + FRAC_PI_2, z)?);
        let sb = sp.s_gamma(b, z)?;
        let rhs = (b - g0).cos() * s0 + (b - g0).sin() * s1;
        worst = worst.max((sb - rhs).norm() / sb.norm().max(s0.norm()).max(s1.norm()));
    }
    Ok(Measured::err(worst).with("draws", 100usize).with("measure", "relative"))
}

fn spectrum_against(expected: &[f64], gamma: f64) -> Result<Measured> {
    let sp = DbSpace::paley_wiener(PI)?;
    let zeros = find_zeros(&sp, gamma, RootWindow::for_space(&sp, -5.5, 5.5)?)?;
    let err = if zeros.len() == expected.len() {
        zeros.iter().zip(expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    Ok(Measured::err(err)
        .with("a", PI)
        .with("gamma", gamma)
        .with("found", zeros.len())
        .with("expected", expected.len()))
}

fn spectrum_integers(_: &Ctx, _: &mut ChaCha8Rng) -> Result<Measured> {
    let expected: Vec<f64> = (-5..=5).map(|k| k as f64).collect();
    spectrum_against(&expected, 0.0)
}

fn spectrum_half_integers(_: &Ctx, _: &mut ChaCha8Rng) -> Result<Measured> {
    let expected: Vec<f64> = (-6..=5).map(|k| k as f64 + 0.5).collect();
    spectrum_against(&expected, FRAC_PI_2)
}

fn interlacing(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Measured> {
    let sp = &ctx.space;
    let [lo, hi] = ctx.cfg.window;
    let window = RootWindow::for_space(sp, lo, hi)?;
    let pairs = [(0.0, FRAC_PI_2), (PI / 6.0, PI / 4.0), (PI / 4.0, PI / 3.0), (PI / 3.0, 2.0 * PI / 3.0), (2.0 * PI / 3.0, 3.0 * PI / 4.0)];
    let mut violations = 0usize;
    let mut counted = 0usize;
    for (g1, g2) in pairs {
        let a = find_zeros(sp, g1, window)?;
        let b = find_zeros(sp, g2, window)?;
        counted += a.len() + b.len();
        violations += interlace_check(&a, &b);
    }
    Ok(Measured::err(violations as f64).with("pairs", pairs.len()).with("zeros", counted))
}

fn resolvent_draws<F>(ctx: &Ctx, rng: &mut ChaCha8Rng, mut each: F) -> Result<Measured>
where
    F: FnMut(&ExtensionHandle, Cplx, Cplx) -> Result<(EntireFn, EntireFn)>,
{
    let grid = grid9();
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let ext = ExtensionHandle::new(&ctx.space, rand_gamma(rng));
        let v = rand_nonreal(rng, 2.0, 1.5);
        let w = rand_nonreal(rng, 2.0, 1.5);
        let (lhs, rhs) = each(&ext, v, w)?;
        worst = worst.max(pointwise(&ctx.space, &lhs, &rhs, &grid)?);
    }
    Ok(Measured::err(worst).with("draws", 10usize).with("grid", 9usize))
}

fn quotient_difference(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    resolvent_draws(ctx, rng, |ext, v, w| {
        let (kw, kv) = (EntireFn::kernel(w.conj()), EntireFn::kernel(v.conj()));
        let lhs = kw.sub(&kv).scale(1.0 / (w - v));
        let corr = (ext.s(w)? / ext.s(v)? - 1.0) / (w - v);
        let rhs = ext.resolvent_apply(v, &kw)?.axpy(corr, &kv);
        Ok((lhs, rhs))
    })
}

fn symmetry(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    resolvent_draws(ctx, rng, |ext, v, w| {
        let lhs = ext.resolvent_apply(v, &EntireFn::kernel(w.conj()))?.scale(ext.s(v)?);
        let rhs = ext.resolvent_apply(w, &EntireFn::kernel(v.conj()))?.scale(ext.s(w)?);
        Ok((lhs, rhs))
    })
}

fn cayley_kernel(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    resolvent_draws(ctx, rng, |ext, _, w| {
        let lhs = EntireFn::kernel(w.conj()).scale(ext.s(w.conj())?);
        let rhs = ext.cayley_apply(w, &EntireFn::kernel(w))?.scale(ext.s(w)?);
        Ok((lhs, rhs))
    })
}

fn cayley_on_kernel(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    resolvent_draws(ctx, rng, |ext, z, w0| {
        let lhs = ext.cayley_apply(w0.conj(), &EntireFn::kernel(z))?;
        let zb = z.conj();
        let c1 = (zb - w0) / (zb - w0.conj());
        let c2 = -(w0.conj() - w0) / (zb - w0.conj()) * ext.s(zb)? / ext.s(w0.conj())?;
        let rhs = EntireFn::lin_comb(vec![(c1, EntireFn::kernel(z)), (c2, EntireFn::kernel(w0))]);
        Ok((lhs, rhs))
    })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn cayley_unitary(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let sp = &ctx.space;
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let ext = ExtensionHandle::new(sp, rand_gamma(rng));
        let w = rand_nonreal(rng, 2.0, 1.5);
        let f = ctx.random_b(rng);
        worst = worst.max(rel(sp.norm(&ext.cayley_apply(w, &f)?)?, sp.norm(&f)?));
    }
    Ok(Measured::err(worst).with("draws", 10usize).with("measure", "relative"))
}

fn random_domain(ctx: &Ctx, ext: &ExtensionHandle, rng: &mut ChaCha8Rng) -> Result<GammaDomainElement> {
    let v = rand_nonreal(rng, 2.0, 1.5);
    ext.resolvent(v, &ctx.random_b(rng))
}

fn random_star(ctx: &Ctx, ext: &ExtensionHandle, rng: &mut ChaCha8Rng) -> Result<StarDomainElement> {
    let terms: Vec<(Cplx, Cplx)> = (0..2).map(|_| (rand_unit(rng), rand_nonreal(rng, 2.0, 1.5))).collect();
    let h0 = random_domain(ctx, ext, rng)?;
    StarDomainElement::from_kernel_combination(ext, &terms, Some(&h0))
}

fn sharp_plus2(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let ext = ExtensionHandle::new(&ctx.space, rand_gamma(rng));
        let g = random_domain(ctx, &ext, rng)?;
        worst = worst.max(rel(norm_plus2(&ext, &sharp_gamma(&ext, &g)?)?, norm_plus2(&ext, &g)?));
    }
    Ok(Measured::err(worst).with("draws", 10usize).with("measure", "relative"))
}

fn sharp_plus_f(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let ext = ExtensionHandle::new(&ctx.space, rand_gamma(rng));
        let g = random_star(ctx, &ext, rng)?;
        let gs = g.sharp()?;
        let (a, b) = (inner_plus_f_definitional(&gs, &gs)?.re, inner_plus_f_definitional(&g, &g)?.re);
        worst = worst.max(rel(a.max(0.0).sqrt(), b.max(0.0).sqrt()));
    }
    Ok(Measured::err(worst).with("draws", 10usize).with("measure", "relative").with("inner", "definitional"))
}

fn kernel_plus2_check(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let ext = ExtensionHandle::new(&ctx.space, rand_gamma(rng));
        let w = c(rng.random_range(-2.0..2.0), rng.random_range(-1.2..1.2));
        let g = random_domain(ctx, &ext, rng)?;
        let gw = ctx.space.eval(g.function(), w)?;
        let ip = inner_plus2(&ext, &kernel_plus2(&ext, w)?, &g)?;
        worst = worst.max((ip - gw).norm() / (1.0 + gw.norm()));
    }
    Ok(Measured::err(worst).with("pairs", 20usize))
}

fn duality(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let ext = ExtensionHandle::new(&ctx.space, ctx.cfg.gamma);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let f = ctx.random_b(rng);
        let g = random_star(ctx, &ext, rng)?;
        let direct = ctx.space.inner(&f, g.function())?;
        let paired = pairing_f(&AssocFunction::from_b(&f), &g)?;
        worst = worst.max((paired - direct).norm() / (1.0 + direct.norm()));
    }
    Ok(Measured::err(worst).with("pairs", 10usize).with("gamma", ctx.cfg.gamma))
}

fn roundtrip(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Measured> {
    let sp = &ctx.space;
    let ext = ExtensionHandle::new(sp, ctx.cfg.gamma);
    let elems = [
        AssocFunction::from_s(sp, 0.0)?,
        AssocFunction::from_s(sp, 0.7)?,
        AssocFunction::from_s_beta(sp, PI / 4.0, 0.0)?,
        AssocFunction::new(EntireFn::kernel(c(0.3, 0.0)), EntireFn::kernel(I)),
        AssocFunction::new(EntireFn::kernel(c(-0.5, 0.5)), EntireFn::zero()),
    ];
    let grid = [-1.3, -0.4, 0.25, 0.9, 1.7];
    let mut worst = 0.0f64;
    for f in &elems {
        worst = worst.max(assoc_roundtrip(&ext, f, &grid)?);
    }
    Ok(Measured::err(worst).with("elements", elems.len()).with("grid", grid.to_vec()))
}
