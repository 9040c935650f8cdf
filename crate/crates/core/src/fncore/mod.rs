//! Function core: realizations, entire-function trees and the space itself.

mod entire;
mod jet;
mod realization;
mod space;

pub use entire::EntireFn;
pub use jet::{Jet, JET_LEN};
pub use realization::{hb_verify, HbRealization, HbReport};
pub use space::DbSpace;
