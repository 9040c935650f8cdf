use super::entire::{EntireFn, Node, Quotient};
use super::jet::{Jet, JET_LEN};
use super::realization::HbRealization;
use crate::numerics::inner::{inner_b, IpEngine, SamplingNodes};
use crate::numerics::roots::{find_zeros, RootWindow};
use crate::{Cplx, DbError, Result, I};
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{Arc, Mutex};

/// Default distance below which difference quotients switch to Taylor jets.
pub const DELTA_REM: f64 = 1e-6;
/// Default bound on `|Im z|` for top-level evaluation.
pub const IM_GUARD: f64 = 10.0;

type NodeCache = Arc<Mutex<Option<(usize, usize, Arc<SamplingNodes>)>>>;

/// A de Branges space `B(e)` together with its numerical configuration.
///
/// `engine` is the primary inner-product route and `oracle` the independent one
/// used for cross-checks and for integrals of functions outside the space.
#[derive(Clone)]
pub struct DbSpace {
    realization: HbRealization,
    delta_rem: f64,
    im_guard: f64,
    engine: IpEngine,
    oracle: IpEngine,
    nodes: NodeCache,
}

impl std::fmt::Debug for DbSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DbSpace")
            .field("realization", &self.realization)
            .field("engine", &self.engine)
            .field("oracle", &self.oracle)
            .finish()
    }
}

impl DbSpace {
    pub fn new(realization: HbRealization) -> Self {
        DbSpace {
            realization,
            delta_rem: DELTA_REM,
            im_guard: IM_GUARD,
            engine: IpEngine::default_sampling(),
            oracle: IpEngine::default_quadrature(),
            nodes: Arc::new(Mutex::new(None)),
        }
    }

    pub fn paley_wiener(a: f64) -> Result<Self> {
        Ok(Self::new(HbRealization::paley_wiener(a)?))
    }

    pub fn shifted_paley_wiener(a: f64) -> Result<Self> {
        Ok(Self::new(HbRealization::shifted(HbRealization::paley_wiener(a)?)?))
    }

    pub fn with_engine(mut self, engine: IpEngine) -> Result<Self> {
        engine.validate()?;
        self.engine = engine;
        Ok(self)
    }

    pub fn with_oracle(mut self, oracle: IpEngine) -> Result<Self> {
        oracle.validate()?;
        self.oracle = oracle;
        Ok(self)
    }

    pub fn with_im_guard(mut self, guard: f64) -> Self {
        self.im_guard = guard;
        self
    }

    /// Same space with the primary and oracle engines exchanged.
    pub fn swapped(&self) -> Self {
        let mut s = self.clone();
        std::mem::swap(&mut s.engine, &mut s.oracle);
        s
    }

    pub fn realization(&self) -> &HbRealization {
        &self.realization
    }

    pub fn bandwidth(&self) -> f64 {
        self.realization.bandwidth()
    }

    pub fn engine(&self) -> &IpEngine {
        &self.engine
    }

    pub fn oracle(&self) -> &IpEngine {
        &self.oracle
    }

    pub fn delta_rem(&self) -> f64 {
        self.delta_rem
    }

    /// The quadrature engine among the two configured ones, if any.
    pub fn quadrature_engine(&self) -> IpEngine {
        if self.engine.is_quadrature() {
            self.engine
        } else if self.oracle.is_quadrature() {
            self.oracle
        } else {
            IpEngine::default_quadrature()
        }
    }

    fn guard(&self, z: Cplx) -> Result<()> {
        if z.im.abs() > self.im_guard || !z.re.is_finite() || !z.im.is_finite() {
            return Err(DbError::OverflowGuard { im: z.im, guard: self.im_guard });
        }
        Ok(())
    }

    pub fn eval(&self, f: &EntireFn, z: Cplx) -> Result<Cplx> {
        self.guard(z)?;
        self.value(f, z)
    }

    /// Taylor coefficients `f^(k)(z)/k!` for `k < len`.
    pub fn jet(&self, f: &EntireFn, z: Cplx, len: usize) -> Result<Jet> {
        self.guard(z)?;
        self.jet_at(f, z, len.clamp(1, JET_LEN))
    }

    pub fn derivative(&self, f: &EntireFn, z: Cplx) -> Result<Cplx> {
        Ok(self.jet(f, z, 2)?.derivative(1))
    }

    pub fn e(&self, z: Cplx) -> Result<Cplx> {
        self.guard(z)?;
        Ok(self.realization.e(z))
    }

    pub fn e_sharp(&self, z: Cplx) -> Result<Cplx> {
        self.guard(z)?;
        Ok(self.realization.e_sharp(z))
    }

    /// `s_γ(z) = (i/2)[e^{iγ} e(z) - e^{-iγ} e#(z)]`.
    pub fn s_gamma(&self, gamma: f64, z: Cplx) -> Result<Cplx> {
        self.guard(z)?;
        Ok(self.s_raw(gamma, z))
    }

    pub fn s_gamma_jet(&self, gamma: f64, z: Cplx, len: usize) -> Result<Jet> {
        self.guard(z)?;
        Ok(self.s_jet(gamma, z, len))
    }

    fn s_raw(&self, gamma: f64, z: Cplx) -> Cplx {
        let p = Cplx::from_polar(1.0, gamma);
        0.5 * I * (p * self.realization.e(z) - p.conj() * self.realization.e_sharp(z))
    }

    fn s_jet(&self, gamma: f64, z: Cplx, len: usize) -> Jet {
        let p = Cplx::from_polar(1.0, gamma);
        let e = self.realization.e_jet(z, len).scale(0.5 * I * p);
        let es = self.realization.e_sharp_jet(z, len).scale(0.5 * I * p.conj());
        e - es
    }

    /// Reproducing kernel `k(z, w) = [e#(z) e(w̄) - e(z) e#(w̄)] / (2πi (z - w̄))`.
    pub fn kernel(&self, z: Cplx, w: Cplx) -> Result<Cplx> {
        self.guard(z)?;
        self.guard(w)?;
        Ok(self.kernel_raw(z, w))
    }

    /// `k(w, w)`, which is real and positive.
    pub fn kernel_diag(&self, w: Cplx) -> Result<f64> {
        Ok(self.kernel(w, w)?.re)
    }

    fn kernel_raw(&self, z: Cplx, w: Cplx) -> Cplx {
        let wb = w.conj();
        let t = z - wb;
        if t.norm() >= self.delta_rem {
            let r = &self.realization;
            (r.e_sharp(z) * r.e(wb) - r.e(z) * r.e_sharp(wb)) / (2.0 * PI * I * t)
        } else {
            self.kernel_jet(z, w, 1).value()
        }
    }

    fn kernel_jet(&self, z0: Cplx, w: Cplx, len: usize) -> Jet {
        let r = &self.realization;
        let wb = w.conj();
        let (ew, esw) = (r.e(wb), r.e_sharp(wb));
        let numer = |at: Cplx, l: usize| r.e_sharp_jet(at, l).scale(ew) - r.e_jet(at, l).scale(esw);
        let norm = 1.0 / (2.0 * PI * I);
        let d = z0 - wb;
        if d.norm() >= self.delta_rem {
            numer(z0, len).div_affine(z0, wb).scale(norm)
        } else {
            numer(wb, (len + 1).min(JET_LEN)).shift_down().recenter(d).scale(norm).truncate(len)
        }
    }

    /// The kernel through `s_{γ0}` and `s_{γ0+π/2}`:
    /// `k(z, w) = [s_{γ0+π/2}(z) s_{γ0}(w̄) - s_{γ0+π/2}(w̄) s_{γ0}(z)] / (π (z - w̄))`.
    pub fn kernel_via_s(&self, gamma0: f64, z: Cplx, w: Cplx) -> Result<Cplx> {
        self.guard(z)?;
        self.guard(w)?;
        let wb = w.conj();
        let g1 = gamma0 + FRAC_PI_2;
        let (a0, a1) = (self.s_raw(gamma0, wb), self.s_raw(g1, wb));
        let d = z - wb;
        if d.norm() >= self.delta_rem {
            Ok((self.s_raw(g1, z) * a0 - a1 * self.s_raw(gamma0, z)) / (PI * d))
        } else {
            let numer = self.s_jet(g1, wb, 3).scale(a0) - self.s_jet(gamma0, wb, 3).scale(a1);
            Ok(numer.shift_down().recenter(d).value() / PI)
        }
    }

    /// Builds `(term - c·pivot)/(z - w)` after checking the numerator vanishes at `w`.
    pub fn diff_quotient(&self, term: &EntireFn, c: Cplx, pivot: &EntireFn, w: Cplx) -> Result<EntireFn> {
        self.guard(w)?;
        let tw = self.value(term, w)?;
        let pw = self.value(pivot, w)?;
        let residual = (tw - c * pw).norm();
        let scale = 1.0f64.max(tw.norm() + (c * pw).norm());
        if residual > self.delta_rem * scale {
            return Err(DbError::RemovabilityViolation { w, residual });
        }
        Ok(EntireFn::quotient_unchecked(term.clone(), c, pivot.clone(), w))
    }

    /// `(f - f(w))/(z - w)`.
    pub fn divided_difference(&self, f: &EntireFn, w: Cplx) -> Result<EntireFn> {
        let fw = self.eval(f, w)?;
        self.diff_quotient(f, fw, &EntireFn::user("1", |_| 1.0.into()), w)
    }

    pub fn inner(&self, f: &EntireFn, g: &EntireFn) -> Result<Cplx> {
        inner_b(self, &self.engine, f, g)
    }

    pub fn inner_oracle(&self, f: &EntireFn, g: &EntireFn) -> Result<Cplx> {
        inner_b(self, &self.oracle, f, g)
    }

    pub fn norm(&self, f: &EntireFn) -> Result<f64> {
        Ok(self.inner(f, f)?.re.max(0.0).sqrt())
    }

    /// Sampling nodes (zeros of `s_0`) for levels `n0·2^j`, `j ≤ doublings`.
    pub(crate) fn sampling_nodes(&self, n0: usize, doublings: usize) -> Result<Arc<SamplingNodes>> {
        let mut guard = self.nodes.lock().unwrap_or_else(|p| p.into_inner());
        if let Some((n, d, nodes)) = guard.as_ref() {
            if *n == n0 && *d == doublings {
                return Ok(nodes.clone());
            }
        }
        let a = self.bandwidth();
        let n_max = n0 << doublings;
        let zeros: Vec<f64> = if self.realization.is_paley_wiener() {
            (-(n_max as i64)..=n_max as i64).map(|n| n as f64 * PI / a).collect()
        } else {
            let reach = (n_max as f64 + 0.5) * PI / a;
            find_zeros(self, 0.0, RootWindow::for_space(self, -reach, reach)?)?
        };
        let nodes = Arc::new(SamplingNodes::from_zeros(&zeros, a, n0, doublings, self)?);
        *guard = Some((n0, doublings, nodes.clone()));
        Ok(nodes)
    }

    pub(crate) fn value(&self, f: &EntireFn, z: Cplx) -> Result<Cplx> {
        let r = &self.realization;
        Ok(match f.node() {
            Node::E => r.e(z),
            Node::ESharp => r.e_sharp(z),
            Node::S(g) => self.s_raw(*g, z),
            Node::Kernel(w) => self.kernel_raw(z, *w),
            Node::User(u) => u.eval(z),
            Node::LinComb(ts) => {
                let mut acc = Cplx::new(0.0, 0.0);
                for (c, t) in ts {
                    acc += c * self.value(t, z)?;
                }
                acc
            }
            Node::MulAffine(w, t) => (z - w) * self.value(t, z)?,
            Node::DiffQuotient(q) => {
                let d = z - q.w;
                if d.norm() >= self.delta_rem {
                    (self.value(&q.term, z)? - q.c * self.value(&q.pivot, z)?) / d
                } else {
                    self.quotient_jet(q, z, 1)?.value()
                }
            }
        })
    }

    fn jet_at(&self, f: &EntireFn, z: Cplx, len: usize) -> Result<Jet> {
        let r = &self.realization;
        Ok(match f.node() {
            Node::E => r.e_jet(z, len),
            Node::ESharp => r.e_sharp_jet(z, len),
            Node::S(g) => self.s_jet(*g, z, len),
            Node::Kernel(w) => self.kernel_jet(z, *w, len),
            Node::User(u) => user_jet(|x| u.eval(x), z, len, self.bandwidth()),
            Node::LinComb(ts) => {
                let mut acc = Jet::zero(len);
                for (c, t) in ts {
                    acc = acc + self.jet_at(t, z, len)?.scale(*c);
                }
                acc
            }
            Node::MulAffine(w, t) => self.jet_at(t, z, len)?.mul_affine(z, *w),
            Node::DiffQuotient(q) => self.quotient_jet(q, z, len)?,
        })
    }

    fn quotient_jet(&self, q: &Quotient, z0: Cplx, len: usize) -> Result<Jet> {
        let d = z0 - q.w;
        if d.norm() >= self.delta_rem {
            let n = self.jet_at(&q.term, z0, len)? - self.jet_at(&q.pivot, z0, len)?.scale(q.c);
            return Ok(n.div_affine(z0, q.w));
        }
        let l = (len + 1).min(JET_LEN);
        let tj = self.jet_at(&q.term, q.w, l)?;
        let pj = self.jet_at(&q.pivot, q.w, l)?.scale(q.c);
        let n = tj - pj;
        let residual = n.value().norm();
        let scale = 1.0f64.max(tj.value().norm() + pj.value().norm());
        if residual > 10.0 * self.delta_rem * scale {
            return Err(DbError::RemovabilityViolation { w: q.w, residual });
        }
        Ok(n.shift_down().recenter(d).truncate(len))
    }
}

/// Taylor coefficients of a black-box entire function by the trapezoid rule
/// on a circle (Cauchy's integral formula).
fn user_jet<F: Fn(Cplx) -> Cplx>(f: F, z0: Cplx, len: usize, a: f64) -> Jet {
    if len == 1 {
        return Jet::constant(f(z0), 1);
    }
    const M: usize = 32;
    let r = 0.5f64.min(1.0 / a.max(1e-3));
    let samples: Vec<Cplx> = (0..M)
        .map(|j| f(z0 + Cplx::from_polar(r, 2.0 * PI * j as f64 / M as f64)))
        .collect();
    let mut coeffs = vec![f(z0)];
    for k in 1..len {
        let mut s = Cplx::new(0.0, 0.0);
        for (j, v) in samples.iter().enumerate() {
            s += v * Cplx::from_polar(1.0, -2.0 * PI * (j * k) as f64 / M as f64);
        }
        coeffs.push(s / (M as f64 * r.powi(k as i32)));
    }
    Jet::from_coeffs(&coeffs)
}
