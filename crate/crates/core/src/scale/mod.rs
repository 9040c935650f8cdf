//! The scales `B₊₂ ⊂ F₊₁ ⊂ B ⊂ F₋₁ ⊂ B₋₂`: graph norms, dual pairings and the
//! realization of `F₋₁` by associated functions.

mod assoc;
mod counterexample;
mod dual;
mod norms;

pub use assoc::{assoc_roundtrip, pairing_f, AssocFunction};
pub use counterexample::{counterexample_run, CounterexampleReport};
pub use dual::{pairing_minus2, DualFunctional, Functional, Level, PairingRule};
pub use norms::{
    inner_plus2, inner_plus_f, inner_plus_f_definitional, kernel_plus2, minus2_lower, minus_f_lower,
    non_density, norm_plus2, norm_plus_f, scale_norms, sharp_gamma, NonDensityReport, ScaleNorms,
};
