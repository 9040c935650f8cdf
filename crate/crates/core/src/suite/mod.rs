//! The verification suite: every acceptance criterion as one or more
//! [`CheckRecord`]s.
//!
//! Check ids have the form `cNN.name`, where `NN` is the criterion number.
//! Each check draws its random parameters from a ChaCha stream seeded by the
//! run seed and the check id, so adding or reordering checks never changes
//! the draws of another.

mod basic;
mod dictionary;
mod perturb;

pub use dictionary::dictionary;

use crate::fncore::{DbSpace, EntireFn};
use crate::report::{CheckRecord, Params, Report, RunConfig};
use crate::{exec, Cplx, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

/// Shared inputs for every check.
pub struct Ctx {
    pub cfg: RunConfig,
    pub space: DbSpace,
    pub dict: Vec<EntireFn>,
}

impl Ctx {
    pub fn new(cfg: &RunConfig) -> Result<Self> {
        cfg.validate()?;
        let space = DbSpace::paley_wiener(cfg.a)?;
        let dict = dictionary(&space, cfg.gamma)?;
        Ok(Ctx { cfg: cfg.clone(), space, dict })
    }

    /// A random combination of three dictionary elements.
    pub(crate) fn random_b(&self, rng: &mut ChaCha8Rng) -> EntireFn {
        let terms = (0..3)
            .map(|_| {
                let k = rng.random_range(0..self.dict.len());
                (rand_unit(rng), self.dict[k].clone())
            })
            .collect();
        EntireFn::lin_comb(terms)
    }
}

/// What a check measured.
pub(crate) struct Measured {
    pub err: f64,
    pub params: Params,
    /// Overrides `err ≤ tol` for checks with a different stated predicate.
    pub verdict: Option<bool>,
}

impl Measured {
    pub fn err(err: f64) -> Self {
        Measured { err, params: Params::new(), verdict: None }
    }

    pub fn with(mut self, key: &str, v: impl Into<crate::report::ParamValue>) -> Self {
        self.params.insert(key.to_string(), v.into());
        self
    }

    pub fn verdict(mut self, pass: bool) -> Self {
        self.verdict = Some(pass);
        self
    }
}

type CheckFn = fn(&Ctx, &mut ChaCha8Rng) -> Result<Measured>;

/// A registered check: `nominal` is its threshold at the nominal tolerance,
/// rescaled by `tol/1e-8` when `scaled`.
pub(crate) struct CheckDef {
    pub id: &'static str,
    pub nominal: f64,
    pub scaled: bool,
    pub run: CheckFn,
}

fn registry() -> Vec<CheckDef> {
    let mut v = basic::checks();
    v.extend(perturb::checks());
    v
}

pub fn check_ids() -> Vec<&'static str> {
    registry().iter().map(|c| c.id).collect()
}

/// Stable per-check seed (FNV-1a of the id mixed into the run seed).
pub fn check_seed(seed: u64, id: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn run_one(ctx: &Ctx, def: &CheckDef) -> CheckRecord {
    let tol = if def.scaled { def.nominal * ctx.cfg.tol_scale() } else { def.nominal };
    let mut rng = ChaCha8Rng::seed_from_u64(check_seed(ctx.cfg.seed, def.id));
    let start = Instant::now();
    let outcome = (def.run)(ctx, &mut rng);
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    match outcome {
        Ok(m) => {
            let pass = m.err.is_finite() && m.verdict.unwrap_or(m.err <= tol);
            CheckRecord { check_id: def.id.to_string(), params: m.params, max_abs_err: m.err, tol, pass, runtime_ms }
        }
        Err(e) => {
            let mut params = Params::new();
            params.insert("error".into(), e.to_string().into());
            CheckRecord { check_id: def.id.to_string(), params, max_abs_err: f64::INFINITY, tol, pass: false, runtime_ms }
        }
    }
}

/// Runs every check whose id satisfies `select`.
pub fn run_selected(cfg: &RunConfig, select: impl Fn(&str) -> bool) -> Result<Report> {
    let ctx = Ctx::new(cfg)?;
    let defs: Vec<CheckDef> = registry().into_iter().filter(|d| select(d.id)).collect();
    let records = exec::map(defs.len(), |j| run_one(&ctx, &defs[j]));
    Ok(Report::new(cfg.clone(), records))
}

pub fn run_suite(cfg: &RunConfig) -> Result<Report> {
    run_selected(cfg, |_| true)
}

pub(crate) fn rand_unit(rng: &mut ChaCha8Rng) -> Cplx {
    Cplx::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// `Re ∈ [-re, re]`, `|Im| ∈ [0.2, im]` with random sign.
pub(crate) fn rand_nonreal(rng: &mut ChaCha8Rng, re: f64, im: f64) -> Cplx {
    let y = rng.random_range(0.2..im);
    let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    Cplx::new(rng.random_range(-re..re), sign * y)
}

/// The 3×3 evaluation grid used by the pointwise identities.
pub(crate) fn grid9() -> Vec<Cplx> {
    let mut g = Vec::with_capacity(9);
    for re in [-1.5, 0.0, 1.5] {
        for im in [-0.5, 0.0, 0.5] {
            g.push(Cplx::new(re, im));
        }
    }
    g
}

/// Max over `grid` of `|f - g| / max(1, |g|)`.
pub(crate) fn pointwise(space: &DbSpace, f: &EntireFn, g: &EntireFn, grid: &[Cplx]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &z in grid {
        let (a, b) = (space.eval(f, z)?, space.eval(g, z)?);
        worst = worst.max((a - b).norm() / b.norm().max(1.0));
    }
    Ok(worst)
}
