//! Real zeros of `s_γ` by scanning, bracketing and safeguarded Newton.

use crate::fncore::DbSpace;
use crate::{exec, Cplx, DbError, Result};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootWindow {
    pub lo: f64,
    pub hi: f64,
    pub scan_step: f64,
}

impl RootWindow {
    pub fn new(lo: f64, hi: f64, scan_step: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(DbError::invalid(format!("invalid window [{lo}, {hi}]")));
        }
        if scan_step.is_nan() || scan_step <= 0.0 {
            return Err(DbError::invalid(format!("scan step must be positive, got {scan_step}")));
        }
        Ok(RootWindow { lo, hi, scan_step })
    }

    /// Window with the default step `π / (4a)`.
    pub fn for_space(space: &DbSpace, lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, PI / (4.0 * space.bandwidth()))
    }
}

/// Sorted real zeros of `s_γ` in the window.
///
/// The scan step must be below `π/(2a)`, a quarter of the zero spacing of
/// `s_γ` in the Paley–Wiener case.
pub fn find_zeros(space: &DbSpace, gamma: f64, window: RootWindow) -> Result<Vec<f64>> {
    let limit = PI / (2.0 * space.bandwidth());
    if window.scan_step >= limit {
        return Err(DbError::StepTooCoarse { x: window.lo, step: window.scan_step });
    }
    find_real_zeros(
        |x| {
            let j = space.s_gamma_jet(gamma, Cplx::new(x, 0.0), 2)?;
            Ok((j.coeff(0).re, j.coeff(1).re))
        },
        window,
    )
}

/// Sorted zeros of a smooth real function given as `x ↦ (f(x), f'(x))`.
pub fn find_real_zeros<F>(f: F, window: RootWindow) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<(f64, f64)> + Sync + Send,
{
    let RootWindow { lo, hi, scan_step } = window;
    let m = ((hi - lo) / scan_step).ceil().max(1.0) as usize;
    let h = (hi - lo) / m as f64;
    let xs: Vec<f64> = (0..=m).map(|i| if i == m { hi } else { lo + h * i as f64 }).collect();
    let fd = exec::try_map(xs.len(), |i| f(xs[i]))?;
    let scale = fd.iter().map(|p| p.0.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let tiny = 1e-13 * scale;
    let sign = |v: f64| if v.abs() <= tiny { 0 } else if v > 0.0 { 1 } else { -1 };

    let mut roots = Vec::new();
    for i in 0..=m {
        if sign(fd[i].0) == 0 {
            let a = xs[i.saturating_sub(1)];
            let b = xs[(i + 1).min(m)];
            roots.push(polish(&f, xs[i], a, b)?);
        }
    }
    for i in 0..m {
        let (s0, s1) = (sign(fd[i].0), sign(fd[i + 1].0));
        let expected = usize::from(s0 * s1 < 0);
        if hermite_sign_changes(fd[i], fd[i + 1], xs[i + 1] - xs[i], tiny) > expected {
            return Err(DbError::StepTooCoarse { x: xs[i], step: scan_step });
        }
        if expected == 1 {
            roots.push(bracket(&f, xs[i], xs[i + 1], fd[i].0)?);
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * (1.0 + b.abs()));
    roots.retain(|x| *x >= lo && *x <= hi);
    Ok(roots)
}

/// Sign changes of the cubic Hermite interpolant on one scan interval.
fn hermite_sign_changes(p0: (f64, f64), p1: (f64, f64), h: f64, tiny: f64) -> usize {
    const SAMPLES: usize = 32;
    let mut last = 0i8;
    let mut changes = 0;
    for k in 0..=SAMPLES {
        let t = k as f64 / SAMPLES as f64;
        let (t2, t3) = (t * t, t * t * t);
        let v = (2.0 * t3 - 3.0 * t2 + 1.0) * p0.0
            + (t3 - 2.0 * t2 + t) * h * p0.1
            + (-2.0 * t3 + 3.0 * t2) * p1.0
            + (t3 - t2) * h * p1.1;
        let s = if v.abs() <= tiny { 0 } else if v > 0.0 { 1 } else { -1 };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

fn bracket<F>(f: &F, a: f64, b: f64, fa: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    // Orient so that f(lo) < 0 < f(hi).
    let (mut lo, mut hi) = if fa < 0.0 { (a, b) } else { (b, a) };
    let mut x = 0.5 * (a + b);
    let mut dx_old = (b - a).abs();
    let mut dx = dx_old;
    let (mut fx, mut dfx) = f(x)?;
    for _ in 0..200 {
        let newton_ok = dfx != 0.0
            && ((x - hi) * dfx - fx) * ((x - lo) * dfx - fx) < 0.0
            && (2.0 * fx).abs() <= (dx_old * dfx).abs();
        dx_old = dx;
        if newton_ok {
            dx = fx / dfx;
            x -= dx;
        } else {
            dx = 0.5 * (hi - lo);
            x = lo + dx;
        }
        if dx.abs() <= 1e-15 * (1.0 + x.abs()) {
            return Ok(x);
        }
        (fx, dfx) = f(x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        if (hi - lo).abs() <= 4e-16 * (1.0 + x.abs()) {
            return Ok(x);
        }
    }
    Ok(x)
}

fn polish<F>(f: &F, x0: f64, a: f64, b: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    let mut x = x0;
    for _ in 0..4 {
        let (v, d) = f(x)?;
        if v == 0.0 || d == 0.0 {
            break;
        }
        let next = (x - v / d).clamp(a.min(b), a.max(b));
        if (next - x).abs() <= 1e-16 * (1.0 + x.abs()) {
            x = next;
            break;
        }
        x = next;
    }
    Ok(x)
}

/// Checks that exactly one element of `b` lies strictly between consecutive
/// elements of `a`; returns the number of violating gaps.
pub fn interlace_check(a: &[f64], b: &[f64]) -> usize {
    a.windows(2)
        .filter(|w| b.iter().filter(|&&x| x > w[0] && x < w[1]).count() != 1)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn win(lo: f64, hi: f64, step: f64) -> RootWindow {
        RootWindow::new(lo, hi, step).unwrap()
    }

    #[test]
    fn cosine_zeros() {
        let r = find_real_zeros(|x| Ok((x.cos(), -x.sin())), win(0.0, 10.0, 0.3)).unwrap();
        let expect: Vec<f64> = (0..3).map(|k| PI / 2.0 + k as f64 * PI).collect();
        assert_eq!(r.len(), 3);
        for (x, y) in r.iter().zip(&expect) {
            assert!((x - y).abs() < 1e-13);
        }
    }

    #[test]
    fn grid_point_zero_found_once() {
        let r = find_real_zeros(|x| Ok(((PI * x).sin(), PI * (PI * x).cos())), win(-2.0, 2.0, 0.25)).unwrap();
        assert_eq!(r.len(), 5);
        for (k, x) in r.iter().enumerate() {
            assert!((x - (k as f64 - 2.0)).abs() < 1e-12, "{r:?}");
        }
    }

    #[test]
    fn coarse_step_detected() {
        let r = find_real_zeros(|x| Ok(((8.0 * x).sin() + 0.2, 8.0 * (8.0 * x).cos())), win(0.0, 3.0, 0.7));
        assert!(matches!(r, Err(DbError::StepTooCoarse { .. })));
    }

    #[test]
    fn invalid_window() {
        assert!(RootWindow::new(1.0, 1.0, 0.1).is_err());
    }

    #[test]
    fn interlacing_counter() {
        assert_eq!(interlace_check(&[0.0, 1.0, 2.0], &[0.5, 1.5]), 0);
        assert_eq!(interlace_check(&[0.0, 1.0, 2.0], &[0.5, 0.7]), 2);
    }
}
