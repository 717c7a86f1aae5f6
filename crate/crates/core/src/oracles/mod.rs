//! Ground truth for the bounds: exact tails of i.i.d. sums of a finite law
//! and an importance-sampling estimator under the conjugate measure.

mod binomial;
mod exact;
mod mc;

pub use binomial::{binom_sf, dbinom};
pub use exact::{
    convolve_iid, exact_tail_iid, SumDistribution, MAX_GENERAL_N, MAX_RADEMACHER_N, MAX_SUPPORT,
};
pub use mc::{mc_tail_importance, mc_tail_tilted, MCEstimate};
