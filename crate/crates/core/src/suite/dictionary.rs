use crate::fncore::{DbSpace, EntireFn};
use crate::numerics::{find_zeros, RootWindow};
use crate::operator::ExtensionHandle;
use crate::{c, Cplx, Result, I};
use std::f64::consts::{FRAC_PI_2, PI};

/// Twenty elements of `B`, closed under `f ↦ f#` up to pairing:
/// kernels, resolvent images, eigenfunctions, combinations and one
/// closed-form function.
pub fn dictionary(space: &DbSpace, gamma: f64) -> Result<Vec<EntireFn>> {
    let a = space.bandwidth();
    let mut d: Vec<EntireFn> = [c(0.0, 0.0), c(0.5, 0.0), c(-0.5, 0.0), c(1.0, 0.0), c(-1.0, 0.0), I, -I, c(1.0, 1.0), c(1.0, -1.0)]
        .iter()
        .map(|&w| EntireFn::kernel(w))
        .collect();
    let pairs: [(f64, Cplx, Cplx); 3] =
        [(0.0, I, c(0.0, 0.0)), (FRAC_PI_2, c(0.0, 0.5), c(1.0, 0.0)), (gamma, c(1.0, 1.0), c(-0.5, 0.0))];
    for (g, w, v) in pairs {
        let ext = ExtensionHandle::new(space, g);
        d.push(ext.resolvent_apply(w, &EntireFn::kernel(v))?);
        d.push(ext.resolvent_apply(w.conj(), &EntireFn::kernel(v))?);
    }
    let reach = 1.6 * PI / a;
    let zeros = find_zeros(space, 0.0, RootWindow::for_space(space, -0.1 * PI / a, reach)?)?;
    let ext0 = ExtensionHandle::new(space, 0.0);
    for &mu in zeros.iter().take(2) {
        d.push(ext0.eigen_quotient(mu)?);
    }
    let combo = EntireFn::kernel(c(0.3, 0.2)).axpy(2.0.into(), &EntireFn::kernel(c(-0.7, 0.0)));
    d.push(combo.sharp());
    d.push(combo);
    d.push(EntireFn::user("sin²(az/2)/z²", move |z: Cplx| {
        let h = 0.5 * a * z;
        let sinc = if h.norm() < 1e-4 { 1.0 - h * h / 6.0 } else { h.sin() / h };
        0.25 * a * a * sinc * sinc
    }));
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twenty_finite_norm_elements() {
        let sp = DbSpace::paley_wiener(PI).unwrap();
        let d = dictionary(&sp, PI / 4.0).unwrap();
        assert_eq!(d.len(), 20);
        for f in &d {
            let n = sp.norm(f).unwrap();
            assert!(n.is_finite() && n > 1e-3, "{f:?}: {n}");
        }
    }
}
