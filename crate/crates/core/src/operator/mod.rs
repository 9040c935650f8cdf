//! The multiplication operator `S`, its selfadjoint extensions `S_γ`, their
//! resolvents and Cayley transforms, and the adjoint `S*`.

mod extension;
mod star;

pub use extension::{ExtensionHandle, GammaDomainElement, SPECTRAL_TOL};
pub use star::{DeficiencyForm, StarDomainElement};
