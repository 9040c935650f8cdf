//! Numerical toolkit for de Branges spaces `B(e)`: reproducing kernels, the
//! multiplication operator and its selfadjoint extensions, the Hilbert scale
//! `B₊₂ ⊂ F₊₁ ⊂ B ⊂ F₋₁ ⊂ B₋₂`, and singular rank-one perturbations.
//!
//! Every structural identity is exposed twice: once as a closed form and once
//! through its definition, so the two routes can be compared numerically.

pub mod error;
pub mod exec;
pub mod fncore;
pub mod numerics;
pub mod operator;
pub mod perturbation;
pub mod report;
pub mod scale;
pub mod suite;

pub use error::{DbError, Result};
pub use num_complex::Complex64 as Cplx;

pub use fncore::{DbSpace, EntireFn, HbRealization, Jet};
pub use numerics::{IpEngine, IpMethod, RootWindow};
pub use operator::{ExtensionHandle, GammaDomainElement, StarDomainElement};

/// The imaginary unit.
pub const I: Cplx = Cplx::new(0.0, 1.0);

/// Shorthand for a complex number.
#[inline]
pub fn c(re: f64, im: f64) -> Cplx {
    Cplx::new(re, im)
}
