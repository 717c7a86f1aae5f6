//! Cumulant machinery for i.i.d. sums of a finite discrete law.
//!
//! For `S_n = ξ₁ + … + ξ_n` with `ξᵢ` i.i.d. copies of `dist`:
//!
//! * `Ψ_n(λ) = n log E e^{λξ}` ([`cumulant`]),
//! * `T_n(λ) = Ψ_n'(λ) = n E_λ ξ` ([`cumulant_mean`]), the mean of `S_n`
//!   under the conjugate measure,
//! * `σ̄²(λ) = Ψ_n''(λ) = n Var_λ ξ` ([`tilted_variance`]),
//! * `inf_{λ≥0} E e^{λ(S_n − t)} = exp{Ψ_n(λ̄) − λ̄t}` with `T_n(λ̄) = t`
//!   ([`chernoff_infimum`]).

mod lemmas;

pub use lemmas::{verify_lemmas, Lemma, LemmaCheck, LemmaReport, LemmaSummary, BERRY_ESSEEN_CONST};

use crate::distributions::{DiscreteDistribution, EXP_GUARD};
use crate::error::{check_nonneg, domain, Result};

const MAX_ITER: usize = 200;
const LAMBDA_RTOL: f64 = 1e-12;

/// Result of the Chernoff infimum search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChernoffSolution {
    /// Optimal tilt `λ̄ ≥ 0`.
    pub lambda_bar: f64,
    /// `inf_{λ≥0} E e^{λ(S_n − t)}`, in `[0, 1]`.
    pub value: f64,
    pub converged: bool,
    pub iterations: usize,
    /// The infimum is a limit at `λ → ∞`; `lambda_bar` is the largest tilt
    /// the exponent guard allows and `value` is evaluated there.
    pub boundary: bool,
}

/// Mean and variance of the tilted law, from one pass over the weights.
fn tilted_moments(dist: &DiscreteDistribution, lambda: f64) -> Result<(f64, f64)> {
    let (w, total) = dist.tilt_weights(lambda)?;
    let mean = dist
        .values()
        .iter()
        .zip(&w)
        .map(|(v, wi)| v * wi)
        .sum::<f64>()
        / total;
    let var = dist
        .values()
        .iter()
        .zip(&w)
        .map(|(v, wi)| (v - mean) * (v - mean) * wi)
        .sum::<f64>()
        / total;
    Ok((mean, var))
}

fn check_n(n: u64) -> Result<f64> {
    if n == 0 {
        Err(domain("n must be >= 1"))
    } else {
        Ok(n as f64)
    }
}

/// `Ψ_n(λ) = n log E e^{λξ}`, via log-sum-exp.
pub fn cumulant(dist: &DiscreteDistribution, n: u64, lambda: f64) -> Result<f64> {
    Ok(check_n(n)? * dist.log_mgf(lambda)?)
}

/// `T_n(λ) = n E_λ ξ`.
pub fn cumulant_mean(dist: &DiscreteDistribution, n: u64, lambda: f64) -> Result<f64> {
    Ok(check_n(n)? * tilted_moments(dist, lambda)?.0)
}

/// `σ̄²(λ) = n Var_λ ξ`.
pub fn tilted_variance(dist: &DiscreteDistribution, n: u64, lambda: f64) -> Result<f64> {
    Ok(check_n(n)? * tilted_moments(dist, lambda)?.1)
}

struct TiltRoot {
    lambda: f64,
    iterations: usize,
    converged: bool,
    boundary: bool,
}

/// Solves `E_λ ξ = target` for `λ ≥ 0`, given `mean ≤ target < max atom`.
///
/// Bisection keeps a bracket on the monotone tilted mean; Newton steps
/// (slope = tilted variance) are taken whenever they stay inside it.
fn solve_tilted_mean(dist: &DiscreteDistribution, target: f64) -> Result<TiltRoot> {
    let cap = EXP_GUARD / dist.max_abs_value();
    let mut lo = 0.0;
    let mut hi = (1.0 / dist.max_abs_value()).min(cap);
    let mut iterations = 0;
    loop {
        iterations += 1;
        if tilted_moments(dist, hi)?.0 >= target {
            break;
        }
        if hi >= cap {
            return Ok(TiltRoot {
                lambda: cap,
                iterations,
                converged: true,
                boundary: true,
            });
        }
        lo = hi;
        hi = (2.0 * hi).min(cap);
    }
    let mut lambda = 0.5 * (lo + hi);
    let mut converged = false;
    while iterations < MAX_ITER {
        iterations += 1;
        let (mean, var) = tilted_moments(dist, lambda)?;
        let resid = mean - target;
        if resid == 0.0 {
            converged = true;
            break;
        }
        if resid > 0.0 {
            hi = lambda;
        } else {
            lo = lambda;
        }
        let newton = lambda - resid / var;
        let next = if var > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - lambda).abs();
        lambda = next;
        if step <= LAMBDA_RTOL * lambda || hi - lo <= LAMBDA_RTOL * hi {
            converged = true;
            break;
        }
    }
    Ok(TiltRoot {
        lambda,
        iterations,
        converged,
        boundary: false,
    })
}

/// `inf_{λ≥0} E e^{λ(S_n − t)}` for a centered law and `t ≥ 0`.
///
/// When `t ≥ n·max(atom)` no finite minimiser exists; the value is then
/// reported at the exponent-guard tilt `λ_cap = 700/max|atom|` with
/// `boundary = true` (the true infimum is `P(ξ = max)ⁿ` at equality and 0
/// beyond).
pub fn chernoff_infimum(
    dist: &DiscreteDistribution,
    n: u64,
    threshold: f64,
) -> Result<ChernoffSolution> {
    if !dist.is_centered() {
        return Err(domain("Chernoff infimum requires a centered law"));
    }
    check_nonneg("threshold", threshold)?;
    let nf = check_n(n)?;
    if threshold == 0.0 {
        return Ok(ChernoffSolution {
            lambda_bar: 0.0,
            value: 1.0,
            converged: true,
            iterations: 0,
            boundary: false,
        });
    }
    let root = if threshold >= nf * dist.max_value() {
        TiltRoot {
            lambda: EXP_GUARD / dist.max_abs_value(),
            iterations: 0,
            converged: true,
            boundary: true,
        }
    } else {
        solve_tilted_mean(dist, threshold / nf)?
    };
    let log_value = nf * dist.log_mgf(root.lambda)? - root.lambda * threshold;
    Ok(ChernoffSolution {
        lambda_bar: root.lambda,
        value: log_value.exp().clamp(0.0, 1.0),
        converged: root.converged,
        iterations: root.iterations,
        boundary: root.boundary,
    })
}

/// Rate function `Λ*(y) = sup_{λ≥0} {λy − log E e^{λξ}}` for a centered law
/// and `0 ≤ y < max atom`, so that
/// `inf_{λ≥0} E e^{λ(S_n − t)} = exp{−n Λ*(t/n)}`.
pub fn rate_function(dist: &DiscreteDistribution, y: f64) -> Result<f64> {
    if !dist.is_centered() {
        return Err(domain("rate function requires a centered law"));
    }
    check_nonneg("y", y)?;
    if y >= dist.max_value() {
        return Err(domain(format!(
            "y = {y} is not below the largest atom {}; the infimum degenerates",
            dist.max_value()
        )));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let root = solve_tilted_mean(dist, y)?;
    if root.boundary {
        log::warn!("rate function at y = {y}: optimal tilt exceeds the exponent guard");
    }
    Ok((root.lambda * y - dist.log_mgf(root.lambda)?).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn cumulant_examples() {
        let rad = DiscreteDistribution::rademacher();
        let asym = DiscreteDistribution::asym_2_1();
        assert_eq!(cumulant(&rad, 7, 0.0).unwrap(), 0.0);
        assert!(cumulant(&asym, 7, 0.0).unwrap().abs() < 1e-16);
        assert!(rel(cumulant(&rad, 10, 1.0).unwrap(), 10.0 * 1f64.cosh().ln()) < 1e-14);
        let direct = 5.0 * ((2.0 / 3.0) * (-0.1f64).exp() + (1.0 / 3.0) * 0.2f64.exp()).ln();
        assert!(rel(cumulant(&asym, 5, 0.1).unwrap(), direct) < 1e-13);
        assert!(cumulant(&rad, 0, 0.1).is_err());
        assert!(cumulant(&rad, 3, 701.0).is_err());
    }

    #[test]
    fn cumulant_mean_examples() {
        let rad = DiscreteDistribution::rademacher();
        assert!(
            cumulant_mean(&DiscreteDistribution::asym_2_1(), 4, 0.0)
                .unwrap()
                .abs()
                < 1e-15
        );
        assert!(rel(cumulant_mean(&rad, 9, 0.3).unwrap(), 9.0 * 0.3f64.tanh()) < 1e-14);
    }

    #[test]
    fn tilted_variance_examples() {
        let rad = DiscreteDistribution::rademacher();
        assert!(rel(tilted_variance(&rad, 12, 0.0).unwrap(), 12.0) < 1e-15);
        let c = 0.5f64.cosh();
        assert!(rel(tilted_variance(&rad, 12, 0.5).unwrap(), 12.0 / (c * c)) < 1e-14);
        let asym = DiscreteDistribution::asym_2_1();
        assert!(rel(tilted_variance(&asym, 3, 0.0).unwrap(), 6.0) < 1e-14);
    }

    #[test]
    fn infimum_examples() {
        let rad = DiscreteDistribution::rademacher();
        let s = chernoff_infimum(&rad, 100, 0.0).unwrap();
        assert_eq!((s.lambda_bar, s.value), (0.0, 1.0));
        let s = chernoff_infimum(&rad, 100, 10.0).unwrap();
        assert!(s.converged && !s.boundary);
        assert!((s.lambda_bar - 0.1f64.atanh()).abs() < 1e-12);
        assert!((s.lambda_bar - 0.1003353).abs() < 1e-7);
    }

    #[test]
    fn infimum_boundary_cases() {
        let rad = DiscreteDistribution::rademacher();
        let s = chernoff_infimum(&rad, 4, 4.0).unwrap();
        assert!(s.boundary);
        assert!(rel(s.value, 0.5f64.powi(4)) < 1e-12);
        let beyond = chernoff_infimum(&rad, 4, 5.0).unwrap();
        assert!(beyond.boundary && beyond.value < 1e-300);
    }

    #[test]
    fn infimum_rejects_uncentered_and_negative() {
        let d = DiscreteDistribution::new(vec![(0.0, 0.5), (1.0, 0.5)], false).unwrap();
        assert!(chernoff_infimum(&d, 3, 1.0).is_err());
        assert!(chernoff_infimum(&DiscreteDistribution::rademacher(), 3, -1.0).is_err());
    }

    #[test]
    fn rate_function_examples() {
        let rad = DiscreteDistribution::rademacher();
        assert_eq!(rate_function(&rad, 0.0).unwrap(), 0.0);
        let y: f64 = 0.5;
        let entropy = (1.0 + y) / 2.0 * y.ln_1p() + (1.0 - y) / 2.0 * (-y).ln_1p();
        assert!(rel(rate_function(&rad, y).unwrap(), entropy) < 1e-12);
        assert!((entropy - 0.130812).abs() < 1e-6);
        assert!(rate_function(&rad, 1.0).is_err());
        let inf = chernoff_infimum(&rad, 100, 10.0).unwrap().value;
        let via_rate = (-100.0 * rate_function(&rad, 0.1).unwrap()).exp();
        assert!(rel(via_rate, inf) < 1e-10);
    }

    #[test]
    fn residual_within_tolerance_for_asym_law() {
        let asym = DiscreteDistribution::asym_2_1();
        for &(n, t) in &[(10u64, 3.0), (50, 40.0), (7, 13.9)] {
            let s = chernoff_infimum(&asym, n, t).unwrap();
            assert!(s.converged && !s.boundary);
            let resid = cumulant_mean(&asym, n, s.lambda_bar).unwrap() - t;
            assert!(resid.abs() <= 1e-9 * t.max(1.0), "resid {resid}");
        }
    }
}
