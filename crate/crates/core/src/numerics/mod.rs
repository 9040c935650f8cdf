//! Inner products, quadrature and real-root location.

pub mod gk;
pub mod inner;
pub mod linalg;
pub mod richardson;
pub mod roots;

pub use inner::{inner_b, inner_b_detailed, norm_b, IpEngine, IpMethod, IpOutcome, Sampled};
pub use roots::{find_real_zeros, find_zeros, interlace_check, RootWindow};
