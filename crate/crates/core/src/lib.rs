//! Sharp large-deviation bounds for sums of independent random variables
//! satisfying Bernstein's moment condition
//!
//! ```text
//! |E ξᵢᵏ| ≤ ½ k! εᵏ⁻² E ξᵢ²,   k ≥ 3.
//! ```
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: normal survival function, the Mills-ratio factor `M(x)`,
//!   the rational factor `R(t)` and `ψ(t) = t − log(1+t)`.
//! * [`distributions`]: finite discrete summand laws, their moments, the
//!   smallest admissible Bernstein `ε`, and the Esscher tilt.
//! * [`bounds_classical`]: Bernstein, Hoeffding and the Bennett–Poisson
//!   comparison bound.
//! * [`bounds_sharp`]: the normal-comparison upper bound, `B_n·F₂`, the
//!   small-range bound, the matching lower bound and the two-sided
//!   expansion around the Chernoff infimum.
//! * [`chernoff`]: cumulant function `Ψ_n`, tilted mean `T_n`, tilted
//!   variance, the Chernoff infimum, the rate function and a verifier for
//!   the auxiliary cumulant inequalities.
//! * [`oracles`]: exact tails of i.i.d. sums and an importance-sampling
//!   estimator under the conjugate measure.
//!
//! Every bound is expressed in the dimensionless pair `(x, r)` where the
//! threshold is `xσ` and `r = ε/σ`.

pub mod bounds_classical;
pub mod bounds_sharp;
pub mod chernoff;
pub mod distributions;
mod error;
pub mod oracles;
pub mod specfun;

pub use bounds_classical::BoundResult;
pub use bounds_sharp::TailInterval;
pub use chernoff::ChernoffSolution;
pub use distributions::{BernsteinEnv, DiscreteDistribution};
pub use error::{Error, Result};
pub use oracles::MCEstimate;
pub use specfun::ExtendedNonnegReal;
