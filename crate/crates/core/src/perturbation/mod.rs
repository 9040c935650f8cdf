//! Singular rank-one perturbations of `S_{π/2}` in the direction `s₀`.
//!
//! All `B₋₂`-valued objects are handled through closed forms and pairings.

mod boundary;
mod cyclic;
mod domain;
mod krein;

pub use boundary::{boundary_functional, boundary_functional_alt, half_extension, rhat_on_s0};
pub use cyclic::{cyclicity_check, CyclicityReport, COND_LIMIT};
pub use domain::{dom_gamma_decompose, pairing_s0_f, s_tilde_gamma_pairing_check, PerturbedDomainElement};
pub use krein::{
    krein_denominator, krein_diff_check, lambda_of_gamma, qfunc, rank_one_eigenvalues, KreinData, KreinReport, QForm,
    DEGENERATE_TOL,
};
