//! The reference bounds: Bernstein (sharp and weak form), Hoeffding, and the
//! Bennett–Poisson comparison bound.
//!
//! All bounds take the dimensionless pair `(x, r)`: threshold `xσ`, ratio
//! `r = ε/σ`. Use [`standardize`] to get there from a [`BernsteinEnv`].

use crate::distributions::BernsteinEnv;
use crate::error::{check_nonneg, domain, Result};

/// A tail-probability bound and the context needed to read it.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    /// Bound value in `[0, 1]`. Still populated when `valid` is false.
    pub value: f64,
    /// Whether `(x, r)` lies inside the range where the bound is proved.
    pub valid: bool,
    /// The transformed abscissa (`x̂`, `x̃` or `x̌`) fed to the normal tail.
    pub transformed_x: Option<f64>,
    pub range_note: String,
}

impl BoundResult {
    pub(crate) fn valid(value: f64, transformed_x: Option<f64>) -> Self {
        BoundResult {
            value,
            valid: true,
            transformed_x,
            range_note: String::new(),
        }
    }

    pub(crate) fn invalid(value: f64, transformed_x: Option<f64>, note: String) -> Self {
        BoundResult {
            value,
            valid: false,
            transformed_x,
            range_note: note,
        }
    }
}

/// Maps a raw threshold `t` to `(x, r) = (t/σ, ε/σ)`.
pub fn standardize(env: &BernsteinEnv, threshold: f64) -> (f64, f64) {
    (env.x_of(threshold), env.r())
}

pub(crate) fn check_xr(x: f64, r: f64) -> Result<()> {
    check_nonneg("x", x)?;
    check_nonneg("r", r)
}

/// `x̂ = 2x / (1 + √(1 + 2xr))`.
pub fn bernstein_xhat(x: f64, r: f64) -> Result<f64> {
    check_xr(x, r)?;
    Ok(xhat(x, r))
}

pub(crate) fn xhat(x: f64, r: f64) -> f64 {
    2.0 * x / (1.0 + (1.0 + 2.0 * x * r).sqrt())
}

/// Bernstein's bound `B(x, r) = exp{−x̂²/2}`.
pub fn bernstein_bound(x: f64, r: f64) -> Result<BoundResult> {
    check_xr(x, r)?;
    let xh = xhat(x, r);
    Ok(BoundResult::valid((-0.5 * xh * xh).exp(), Some(xh)))
}

/// The weaker closed form `exp{−x²/(2(1 + xr))}`.
pub fn bernstein_weak_bound(x: f64, r: f64) -> Result<BoundResult> {
    check_xr(x, r)?;
    Ok(BoundResult::valid(
        (-x * x / (2.0 * (1.0 + x * r))).exp(),
        None,
    ))
}

/// Hoeffding's bound
///
/// ```text
/// H_n(x, σ) = {(σ/(x+σ))^{xσ+σ²} (n/(n−xσ))^{n−xσ}}^{n/(n+σ²)}
/// ```
///
/// for summands bounded above by 1. That boundedness cannot be checked from
/// `(x, σ, n)` and is the caller's responsibility. Returns `valid = false`
/// and value 0 once `xσ ≥ n`.
pub fn hoeffding_bound(x: f64, sigma: f64, n: u64) -> Result<BoundResult> {
    check_nonneg("x", x)?;
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(domain(format!("σ must be > 0, got {sigma}")));
    }
    if n == 0 {
        return Err(domain("n must be >= 1"));
    }
    let n = n as f64;
    let xs = x * sigma;
    if xs >= n {
        return Ok(BoundResult::invalid(
            0.0,
            None,
            format!("xσ = {xs} >= n = {n}: outside the range of the bound (value 0 by convention)"),
        ));
    }
    let s2 = sigma * sigma;
    let log_inner = (xs + s2) * (sigma / (x + sigma)).ln() + (n - xs) * (n / (n - xs)).ln();
    Ok(BoundResult::valid(
        (log_inner * n / (n + s2)).exp().min(1.0),
        None,
    ))
}

/// `f(λ, δ, σ) = λ²/2 (1−δ)σ² + (e^λ − 1 − λ) δσ`.
pub fn bennett_poisson_f(lambda: f64, delta: f64, sigma: f64) -> f64 {
    0.5 * lambda * lambda * (1.0 - delta) * sigma * sigma + exp_m1_minus_id(lambda) * delta * sigma
}

fn bennett_poisson_fprime(lambda: f64, delta: f64, sigma: f64) -> f64 {
    lambda * (1.0 - delta) * sigma * sigma + lambda.exp_m1() * delta * sigma
}

/// `e^λ − 1 − λ` without cancellation for small λ.
fn exp_m1_minus_id(lambda: f64) -> f64 {
    if lambda.abs() < 0.1 {
        let mut term = lambda * lambda / 2.0;
        let mut acc = 0.0;
        for k in 3..30 {
            acc += term;
            term *= lambda / k as f64;
            if term.abs() <= 1e-18 * acc.abs() {
                break;
            }
        }
        acc
    } else {
        lambda.exp_m1() - lambda
    }
}

/// The optimiser behind [`bennett_poisson_bound`], exposed for residual checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BennettPoissonSolution {
    pub lambda: f64,
    pub value: f64,
    pub residual: f64,
}

/// `inf_{λ≥0} exp{−λy + f(λ, δ, σ)}`, found by solving `f'(λ) = y`.
pub fn bennett_poisson_bound(y: f64, delta: f64, sigma: f64) -> Result<BoundResult> {
    let sol = bennett_poisson_solve(y, delta, sigma)?;
    Ok(BoundResult::valid(sol.value, None))
}

pub fn bennett_poisson_solve(y: f64, delta: f64, sigma: f64) -> Result<BennettPoissonSolution> {
    check_nonneg("y", y)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(domain(format!("δ must lie in (0, 1), got {delta}")));
    }
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(domain(format!("σ must be > 0, got {sigma}")));
    }
    if y == 0.0 {
        return Ok(BennettPoissonSolution {
            lambda: 0.0,
            value: 1.0,
            residual: 0.0,
        });
    }
    // Each term of f' alone reaches y at one of these points.
    let mut hi = (y / ((1.0 - delta) * sigma * sigma)).min((y / (delta * sigma)).ln_1p());
    let mut lo = 0.0;
    let g = |l: f64| bennett_poisson_fprime(l, delta, sigma) - y;
    let mut lambda = 0.5 * hi;
    for _ in 0..200 {
        let gv = g(lambda);
        if gv > 0.0 {
            hi = lambda;
        } else {
            lo = lambda;
        }
        let slope = (1.0 - delta) * sigma * sigma + lambda.exp() * delta * sigma;
        let mut next = lambda - gv / slope;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let done = (next - lambda).abs() <= 1e-15 * next.max(f64::MIN_POSITIVE);
        lambda = next;
        if done || hi - lo <= 1e-15 * hi {
            break;
        }
    }
    let value = (-lambda * y + bennett_poisson_f(lambda, delta, sigma))
        .exp()
        .min(1.0);
    Ok(BennettPoissonSolution {
        lambda,
        value,
        residual: g(lambda),
    })
}
