//! The Paley–Wiener example showing that multiplication by
//! `(z - w̄₀)/(z - w₀)` is not a `+F` isometry.

use crate::fncore::{DbSpace, EntireFn};
use crate::numerics::gk;
use crate::{Cplx, DbError, Result, I};
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CounterexampleReport {
    pub a: f64,
    /// `|f(w₀)|` for `f(z) = 2 sin((z+i)a)/(z+i)`, `w₀ = π/a - i`.
    pub zero_residual: f64,
    /// `‖φ'‖²` on `[-a, a]` by quadrature, `φ(x) = e^{-x}`.
    pub norm_phi_prime_sq: f64,
    /// `sinh(2a)`.
    pub norm_phi_prime_sq_exact: f64,
    pub norm_eta_prime_sq: f64,
    /// `|‖η'‖ - ‖φ'‖| / ‖φ'‖`.
    pub relative_gap: f64,
    /// `|‖η‖² - ‖φ‖²| / ‖φ‖²`; zero when the Cayley factor is unitary.
    pub eta_norm_defect: f64,
    /// Max over test points of `|∫ e^{izx} η(x) dx - (z-w̄₀)/(z-w₀) f(z)|`.
    pub transform_residual: f64,
    /// `‖f‖²_B / ‖φ‖²_{L²(-a,a)}`.
    pub plancherel_ratio: f64,
}

/// `2 sin((z+i)a)/(z+i)`, the transform of `e^{-x}` on `[-a, a]`.
pub fn example_f(a: f64) -> EntireFn {
    EntireFn::user("2sin((z+i)a)/(z+i)", move |z: Cplx| {
        let t = z + I;
        if t.norm() < 1e-4 {
            // 2a Σ (-1)^k (at)^{2k} / (2k+1)!
            let u = (a * t) * (a * t);
            2.0 * a * (Cplx::from(1.0) - u / 6.0 + u * u / 120.0 - u * u * u / 5040.0)
        } else {
            2.0 * (a * t).sin() / t
        }
    })
}

fn integrate<F: Fn(f64) -> Cplx>(f: F, a: f64) -> Result<Cplx> {
    let g = |x: f64| Ok([f(x)]);
    let m = 8;
    let h = 2.0 * a / m as f64;
    let mut s = Cplx::new(0.0, 0.0);
    for k in 0..m {
        let lo = -a + h * k as f64;
        s += gk::adaptive(&g, lo, lo + h, 1e-14, 0.0)?.value[0];
    }
    Ok(s)
}

pub fn counterexample_run(a: f64) -> Result<CounterexampleReport> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(DbError::invalid(format!("a must be positive, got {a}")));
    }
    let space = DbSpace::paley_wiener(a)?;
    let f = example_f(a);
    let w0 = Cplx::new(PI / a, -1.0);
    let zero_residual = space.eval(&f, w0)?.norm();

    let c = 2.0 * a / PI;
    let phi = |x: f64| Cplx::from((-x).exp());
    let eta = |x: f64| {
        let osc = Cplx::from_polar(1.0, -PI * x / a);
        (-x).exp() * (Cplx::from(1.0) + I * c * (Cplx::from(1.0) + osc))
    };
    let eta_prime = |x: f64| {
        let e = (-x).exp();
        let osc = Cplx::from_polar(1.0, -PI * x / a);
        -e * (Cplx::from(1.0) + I * c * (Cplx::from(1.0) + osc)) + e * I * c * (-I * PI / a) * osc
    };
    let norm_phi_prime_sq = integrate(|x| Cplx::from(phi(x).norm_sqr()), a)?.re;
    let norm_eta_prime_sq = integrate(|x| Cplx::from(eta_prime(x).norm_sqr()), a)?.re;
    let norm_phi_sq = norm_phi_prime_sq;
    let norm_eta_sq = integrate(|x| Cplx::from(eta(x).norm_sqr()), a)?.re;

    let mut transform_residual = 0.0f64;
    for z in [Cplx::new(0.3, 0.0), Cplx::new(-1.1, 0.4), Cplx::new(2.0, -0.5), Cplx::new(0.0, 1.0)] {
        let lhs = integrate(|x| (I * z * x).exp() * eta(x), a)?;
        let rhs = (z - w0.conj()) / (z - w0) * space.eval(&f, z)?;
        transform_residual = transform_residual.max((lhs - rhs).norm());
    }
    let plancherel_ratio = space.norm(&f)?.powi(2) / norm_phi_sq;

    let (pn, en) = (norm_phi_prime_sq.sqrt(), norm_eta_prime_sq.sqrt());
    Ok(CounterexampleReport {
        a,
        zero_residual,
        norm_phi_prime_sq,
        norm_phi_prime_sq_exact: (2.0 * a).sinh(),
        norm_eta_prime_sq,
        relative_gap: (en - pn).abs() / pn,
        eta_norm_defect: (norm_eta_sq - norm_phi_sq).abs() / norm_phi_sq,
        transform_residual,
        plancherel_ratio,
    })
}
