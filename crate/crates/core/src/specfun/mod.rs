//! Special functions needed by the closed-form moment and MGF expressions.

mod hypergeometric;
mod sici;

pub use hypergeometric::{hyp1f2, hyp_pfq, pochhammer, HypergeometricParams, MAX_TERMS};
pub use sici::{cos_integral, euler_gamma, sin_integral, EULER_GAMMA};
