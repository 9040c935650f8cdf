//! The space inner product `⟨f, g⟩ = ∫ conj(f(x)) g(x) / |e(x)|² dx`.
//!
//! Two independent routes are provided. `SamplingSeries` uses the orthogonal
//! sampling formula `⟨f, g⟩ = Σ_μ conj(f(μ)) g(μ) / k(μ, μ)` over the real zeros of
//! `s_0`; `AdaptiveQuadrature` integrates the weighted product on `[-X, X]` with
//! Gauss–Kronrod panels. Both truncate symmetrically, double the truncation up to
//! `max_doublings` times and Richardson-extrapolate the partial sums.

use super::gk;
use super::richardson::Richardson;
use crate::fncore::{DbSpace, EntireFn};
use crate::{exec, Cplx, DbError, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum IpMethod {
    /// Sampling series with `n` nodes on each side at the first level.
    SamplingSeries { n: usize },
    /// Panel quadrature on `[-half_width, half_width]` at the first level.
    AdaptiveQuadrature { half_width: f64, tol: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IpEngine {
    pub method: IpMethod,
    /// Convergence threshold relative to `‖f‖·‖g‖`.
    pub tol_ip: f64,
    pub max_doublings: usize,
}

impl IpEngine {
    pub fn sampling(n: usize, tol_ip: f64) -> Self {
        IpEngine { method: IpMethod::SamplingSeries { n }, tol_ip, max_doublings: 6 }
    }

    pub fn quadrature(half_width: f64, tol_ip: f64) -> Self {
        IpEngine {
            method: IpMethod::AdaptiveQuadrature { half_width, tol: 1e-13 },
            tol_ip,
            max_doublings: 8,
        }
    }

    pub fn default_sampling() -> Self {
        Self::sampling(128, 1e-11)
    }

    pub fn default_quadrature() -> Self {
        Self::quadrature(16.0, 1e-11)
    }

    pub fn is_quadrature(&self) -> bool {
        matches!(self.method, IpMethod::AdaptiveQuadrature { .. })
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self.method {
            IpMethod::SamplingSeries { n } => n >= 8,
            IpMethod::AdaptiveQuadrature { half_width, tol } => half_width >= 10.0 && tol > 0.0,
        };
        if !ok || !(self.tol_ip > 0.0 && self.tol_ip <= 1e-4) {
            return Err(DbError::invalid(format!("bad inner-product engine {self:?}")));
        }
        Ok(())
    }
}

/// Result of an inner product with convergence diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IpOutcome {
    pub value: Cplx,
    pub levels: usize,
    pub change: f64,
    pub norm_f: f64,
    pub norm_g: f64,
}

pub fn inner_b(space: &DbSpace, engine: &IpEngine, f: &EntireFn, g: &EntireFn) -> Result<Cplx> {
    inner_b_detailed(space, engine, f, g).map(|o| o.value)
}

pub fn norm_b(space: &DbSpace, engine: &IpEngine, f: &EntireFn) -> Result<f64> {
    Ok(inner_b(space, engine, f, f)?.re.max(0.0).sqrt())
}

pub fn inner_b_detailed(
    space: &DbSpace,
    engine: &IpEngine,
    f: &EntireFn,
    g: &EntireFn,
) -> Result<IpOutcome> {
    engine.validate()?;
    let mut acc = Accumulator::new(engine);
    match engine.method {
        IpMethod::SamplingSeries { n } => {
            let nodes = space.sampling_nodes(n, engine.max_doublings)?;
            for j in 0..=engine.max_doublings {
                let range = nodes.shell(j);
                let vals = exec::try_map(range.len(), |i| {
                    let k = range.start + i;
                    let x = Cplx::new(nodes.points[k], 0.0);
                    let fx = space.eval(f, x)?;
                    let gx = space.eval(g, x)?;
                    let w = nodes.weights[k];
                    Ok::<_, DbError>([fx.conj() * gx * w, (fx.norm_sqr() * w).into(), (gx.norm_sqr() * w).into()])
                })?;
                if let Some(out) = acc.level(&vals) {
                    return out;
                }
            }
        }
        IpMethod::AdaptiveQuadrature { half_width, tol } => {
            let weightfn = |x: f64| space.realization().weight(x);
            let integrand = |x: f64| -> Result<[Cplx; 3]> {
                let z = Cplx::new(x, 0.0);
                let fx = space.eval(f, z)?;
                let gx = space.eval(g, z)?;
                let w = weightfn(x);
                Ok([fx.conj() * gx * w, (fx.norm_sqr() * w).into(), (gx.norm_sqr() * w).into()])
            };
            let panels = PanelLayout::new(space.bandwidth(), half_width);
            // absolute panel floor: a fraction of the central mass
            let central = panels.shell(0);
            let masses = exec::try_map(central.len(), |i| gk::gk21(&integrand, central[i].0, central[i].1).map(|p| p.abs))?;
            let floor = 1e-2 * tol * masses.iter().sum::<f64>();
            for j in 0..=engine.max_doublings {
                let cuts = panels.shell(j);
                let vals = exec::try_map(cuts.len(), |i| {
                    let (lo, hi) = cuts[i];
                    gk::adaptive(&integrand, lo, hi, tol, floor).map(|p| p.value)
                })?;
                if let Some(out) = acc.level(&vals) {
                    return out;
                }
            }
        }
    }
    Err(acc.failure())
}

struct Accumulator {
    tol: f64,
    sums: [Cplx; 3],
    tables: [Richardson; 3],
    last_change: f64,
}

impl Accumulator {
    fn new(engine: &IpEngine) -> Self {
        Accumulator {
            tol: engine.tol_ip,
            sums: [Cplx::new(0.0, 0.0); 3],
            tables: Default::default(),
            last_change: f64::INFINITY,
        }
    }

    fn level(&mut self, vals: &[[Cplx; 3]]) -> Option<Result<IpOutcome>> {
        for v in vals {
            for (s, x) in self.sums.iter_mut().zip(v) {
                *s += x;
            }
        }
        let est: Vec<Cplx> = (0..3).map(|k| self.tables[k].push(self.sums[k])).collect();
        let j = self.tables[0].levels() - 1;
        if j < 2 {
            return None;
        }
        let change = (est[0] - self.tables[0].diagonal(j - 1)).norm();
        self.last_change = change;
        let nf = est[1].re.max(self.sums[1].re).max(0.0).sqrt();
        let ng = est[2].re.max(self.sums[2].re).max(0.0).sqrt();
        if change <= self.tol * nf * ng || nf * ng == 0.0 {
            return Some(Ok(IpOutcome { value: est[0], levels: j + 1, change, norm_f: nf, norm_g: ng }));
        }
        None
    }

    fn failure(&self) -> DbError {
        DbError::NonConvergence { levels: self.tables[0].levels(), change: self.last_change }
    }
}

/// Symmetric panel layout; panel width is half a period of `e^{2iax}`.
struct PanelLayout {
    x0: f64,
    width: f64,
}

impl PanelLayout {
    fn new(a: f64, half_width: f64) -> Self {
        let period = PI / a;
        let x0 = (half_width / period).ceil().max(1.0) * period;
        PanelLayout { x0, width: 0.5 * period }
    }

    fn edge(&self, j: usize) -> f64 {
        self.x0 * (1u64 << j) as f64
    }

    fn shell(&self, j: usize) -> Vec<(f64, f64)> {
        let (inner, outer) = if j == 0 { (0.0, self.edge(0)) } else { (self.edge(j - 1), self.edge(j)) };
        let m = ((outer - inner) / self.width).round() as usize;
        let h = (outer - inner) / m as f64;
        let mut cuts = Vec::with_capacity(2 * m);
        for i in 0..m {
            let lo = inner + h * i as f64;
            let hi = if i + 1 == m { outer } else { lo + h };
            cuts.push((lo, hi));
            cuts.push((-hi, -lo));
        }
        cuts
    }
}

/// Real sampling nodes grouped into nested symmetric levels.
#[derive(Clone, Debug)]
pub struct SamplingNodes {
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
    /// `ends[j]` is one past the last node of level `j`.
    pub ends: Vec<usize>,
}

impl SamplingNodes {
    pub fn shell(&self, j: usize) -> std::ops::Range<usize> {
        let start = if j == 0 { 0 } else { self.ends[j - 1] };
        start..self.ends[j]
    }

    /// Groups zeros by the cut-offs `(N_j + 1/2) π / a`.
    pub(crate) fn from_zeros(zeros: &[f64], a: f64, n0: usize, doublings: usize, space: &DbSpace) -> Result<Self> {
        let mut points = Vec::with_capacity(zeros.len());
        let mut ends = Vec::with_capacity(doublings + 1);
        let mut prev_cut = -1.0;
        for j in 0..=doublings {
            let cut = ((n0 << j) as f64 + 0.5) * PI / a;
            // Centre outwards: 0, +1, -1, +2, -2, ... within the shell.
            let mut shell: Vec<f64> = zeros.iter().copied().filter(|x| x.abs() <= cut && x.abs() > prev_cut).collect();
            shell.sort_by(|x, y| x.abs().total_cmp(&y.abs()).then(y.total_cmp(x)));
            points.extend(shell);
            ends.push(points.len());
            prev_cut = cut;
        }
        let weights = exec::try_map(points.len(), |i| {
            let x = Cplx::new(points[i], 0.0);
            Ok::<_, DbError>(1.0 / space.kernel(x, x)?.re)
        })?;
        Ok(SamplingNodes { points, weights, ends })
    }
}

/// Values of one function at a fixed set of sampling nodes, reusable across
/// many inner products.
#[derive(Clone, Debug)]
pub struct Sampled {
    values: Vec<Cplx>,
}

impl Sampled {
    pub fn new(space: &DbSpace, engine: &IpEngine, f: &EntireFn) -> Result<Self> {
        let IpMethod::SamplingSeries { n } = engine.method else {
            return Err(DbError::invalid("sampled representations need a sampling engine"));
        };
        let nodes = space.sampling_nodes(n, engine.max_doublings)?;
        let values = exec::try_map(nodes.points.len(), |k| space.eval(f, Cplx::new(nodes.points[k], 0.0)))?;
        Ok(Sampled { values })
    }

    /// Same extrapolation and stopping rule as [`inner_b`].
    pub fn inner(space: &DbSpace, engine: &IpEngine, f: &Sampled, g: &Sampled) -> Result<Cplx> {
        let IpMethod::SamplingSeries { n } = engine.method else {
            return Err(DbError::invalid("sampled representations need a sampling engine"));
        };
        let nodes = space.sampling_nodes(n, engine.max_doublings)?;
        let mut acc = Accumulator::new(engine);
        for j in 0..=engine.max_doublings {
            let vals: Vec<[Cplx; 3]> = nodes
                .shell(j)
                .map(|k| {
                    let (fx, gx, w) = (f.values[k], g.values[k], nodes.weights[k]);
                    [fx.conj() * gx * w, (fx.norm_sqr() * w).into(), (gx.norm_sqr() * w).into()]
                })
                .collect();
            if let Some(out) = acc.level(&vals) {
                return out.map(|o| o.value);
            }
        }
        Err(acc.failure())
    }
}
