//! Sharp bounds that recover the normal-tail factor `M(x)`.
//!
//! | function          | statement                                                        |
//! |-------------------|------------------------------------------------------------------|
//! | [`thm1_upper`]    | `(1−Φ(x̃))[1 + C_δ(1+x̃)r]`, all `x ≥ 0`                          |
//! | [`bn_bound`]      | `B_n = B·exp{−nψ(x̂²/(2n√(1+2xr)))}`                              |
//! | [`thm2_upper`]    | `B_n·F₂`, `F₂ = (M(x) + 27.99 R(xr) r) ∧ 1`, all `x ≥ 0`         |
//! | [`cor4_upper`]    | `(1−Φ(x̂))[1 + 70.17 R(α)(1+x̂)r]`, `xr ≤ α < 1/3`                |
//! | [`thm3_lower`]    | `(1−Φ(x̌))[1 − c_α(1+x̌)r]`, `xr ≤ α ≤ 1/9.6`                      |
//! | [`thm5_interval`] | `inf_λ E e^{λ(S_n−xσ)}·(M(x) ± 27.99 R(4xr) r)`, `xr < 1/12`     |
//!
//! Upper bounds are capped at 1 and lower bounds floored at 0.

use crate::bounds_classical::{check_xr, xhat, BoundResult};
use crate::error::{domain, Result};
use crate::specfun::{mill, psi, r_factor, std_normal_sf};

/// Coefficient of `R(xr)·r` in `F₂` and in the two-sided expansion.
pub const F2_COEFF: f64 = 27.99;
/// Coefficient of `R(α)` in the small-range upper bound.
pub const COR_COEFF: f64 = 70.17;
/// Coefficient of `R(·)` in `c_α`.
pub const LOWER_COEFF: f64 = 67.38;
/// Largest `α` admitted by the lower bound.
pub const LOWER_ALPHA_MAX: f64 = 1.0 / 9.6;

/// `C_δ = max(62.493/δ + 212.813, 180.48/δ)`: the explicit constant of the
/// normal-comparison upper bound, for `δ ∈ (0, 1]`.
pub fn thm1_constant(delta: f64) -> Result<f64> {
    check_delta(delta)?;
    Ok((62.493 / delta + 212.813).max(180.48 / delta))
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta <= 1.0 {
        Ok(())
    } else {
        Err(domain(format!("δ must lie in (0, 1], got {delta}")))
    }
}

/// `x̃ = 2x / (1 + √(1 + 2(1+δ)xr))`.
pub fn thm1_xtilde(x: f64, r: f64, delta: f64) -> Result<f64> {
    check_xr(x, r)?;
    check_delta(delta)?;
    Ok(2.0 * x / (1.0 + (1.0 + 2.0 * (1.0 + delta) * x * r).sqrt()))
}

/// Normal-comparison upper bound valid for every `x ≥ 0`.
pub fn thm1_upper(x: f64, r: f64, delta: f64) -> Result<BoundResult> {
    let xt = thm1_xtilde(x, r, delta)?;
    let c = thm1_constant(delta)?;
    let value = std_normal_sf(xt)? * (1.0 + c * (1.0 + xt) * r);
    Ok(BoundResult::valid(value.min(1.0), Some(xt)))
}

/// Argument of `ψ` inside `B_n`: `x̂² / (2n√(1+2xr))`.
fn bn_psi_arg(x: f64, r: f64, n: u64) -> f64 {
    let xh = xhat(x, r);
    xh * xh / (2.0 * n as f64 * (1.0 + 2.0 * x * r).sqrt())
}

/// `−ln(B_n/B) = nψ(x̂²/(2n√(1+2xr)))`.
pub fn bn_log_gain(x: f64, r: f64, n: u64) -> Result<f64> {
    check_xr(x, r)?;
    if n == 0 {
        return Err(domain("n must be >= 1"));
    }
    Ok(n as f64 * psi(bn_psi_arg(x, r, n))?)
}

/// `B_n(x, r) = exp{−x̂²/2 − nψ(x̂²/(2n√(1+2xr)))}`.
pub fn bn_bound(x: f64, r: f64, n: u64) -> Result<BoundResult> {
    let gain = bn_log_gain(x, r, n)?;
    let xh = xhat(x, r);
    Ok(BoundResult::valid((-0.5 * xh * xh - gain).exp(), Some(xh)))
}

/// `F₂(x, r) = (M(x) + 27.99 R(xr) r) ∧ 1`; equals 1 wherever `R(xr) = ∞`.
pub fn f2_factor(x: f64, r: f64) -> Result<f64> {
    check_xr(x, r)?;
    let m = mill(x)?;
    if r == 0.0 {
        return Ok(m.min(1.0));
    }
    Ok(match r_factor(x * r)?.finite() {
        Some(rv) => (m + F2_COEFF * rv * r).min(1.0),
        None => 1.0,
    })
}

/// `B_n·F₂`, valid for all `x ≥ 0`.
pub fn thm2_upper(x: f64, r: f64, n: u64) -> Result<BoundResult> {
    let bn = bn_bound(x, r, n)?;
    let f2 = f2_factor(x, r)?;
    Ok(BoundResult::valid(bn.value * f2, bn.transformed_x))
}

/// `B_n·F₂ / B = exp{−nψ(·)}·F₂`, computed without forming either bound so
/// that it stays meaningful after `B` underflows.
pub fn thm2_ratio_to_bernstein(x: f64, r: f64, n: u64) -> Result<f64> {
    Ok((-bn_log_gain(x, r, n)?).exp() * f2_factor(x, r)?)
}

/// Upper bound with `x̂` inside the normal tail, for `xr ≤ α`, `0 ≤ α < 1/3`.
pub fn cor4_upper(x: f64, r: f64, alpha: f64) -> Result<BoundResult> {
    check_xr(x, r)?;
    if !(alpha >= 0.0 && 3.0 * alpha < 1.0) {
        return Err(domain(format!("α must lie in [0, 1/3), got {alpha}")));
    }
    let xh = xhat(x, r);
    let r_alpha = r_factor(alpha)?.value();
    let value = (std_normal_sf(xh)? * (1.0 + COR_COEFF * r_alpha * (1.0 + xh) * r)).min(1.0);
    if x * r <= alpha {
        Ok(BoundResult::valid(value, Some(xh)))
    } else {
        Ok(BoundResult::invalid(
            value,
            Some(xh),
            format!("xr = {} exceeds α = {alpha}", x * r),
        ))
    }
}

/// `c_α = 67.38 R(2α / (1 + √(1 − 9.6α)))` for `0 ≤ α ≤ 1/9.6`.
pub fn thm3_c_alpha(alpha: f64) -> Result<f64> {
    check_lower_alpha(alpha)?;
    let arg = 2.0 * alpha / (1.0 + (1.0 - 9.6 * alpha).max(0.0).sqrt());
    Ok(LOWER_COEFF * r_factor(arg)?.value())
}

fn check_lower_alpha(alpha: f64) -> Result<()> {
    if (0.0..=LOWER_ALPHA_MAX).contains(&alpha) {
        Ok(())
    } else {
        Err(domain(format!("α must lie in [0, 1/9.6], got {alpha}")))
    }
}

/// `x̌ = λσ/(1 − λε)³` with `λσ = 2x/(1 + √(1 − 9.6xr))`; requires `xr ≤ 1/9.6`.
pub fn thm3_xcheck(x: f64, r: f64) -> Result<f64> {
    check_xr(x, r)?;
    let xr = x * r;
    if xr > LOWER_ALPHA_MAX {
        return Err(domain(format!("x̌ needs xr <= 1/9.6, got {xr}")));
    }
    let lambda_sigma = 2.0 * x / (1.0 + (1.0 - 9.6 * xr).max(0.0).sqrt());
    let lambda_eps = lambda_sigma * r;
    Ok(lambda_sigma / (1.0 - lambda_eps).powi(3))
}

/// Lower bound for `xr ≤ α`, `0 ≤ α ≤ 1/9.6`.
pub fn thm3_lower(x: f64, r: f64, alpha: f64) -> Result<BoundResult> {
    check_xr(x, r)?;
    let c_alpha = thm3_c_alpha(alpha)?;
    if x * r > alpha {
        return Ok(BoundResult::invalid(
            0.0,
            None,
            format!("xr = {} exceeds α = {alpha}", x * r),
        ));
    }
    let xc = thm3_xcheck(x, r)?;
    let value = std_normal_sf(xc)? * (1.0 - c_alpha * (1.0 + xc) * r);
    Ok(BoundResult::valid(value.max(0.0), Some(xc)))
}

/// Two-sided bracket around the Chernoff infimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailInterval {
    pub lo: f64,
    pub hi: f64,
    pub valid: bool,
    /// The `inf_λ E e^{λ(S_n − xσ)}` factor the bracket was built from.
    pub chernoff_value: f64,
}

impl TailInterval {
    pub fn contains(&self, p: f64) -> bool {
        self.lo <= p && p <= self.hi
    }

    /// `chernoff_value·M(x)`, the centre of the expansion.
    pub fn midpoint(&self, x: f64) -> Result<f64> {
        Ok(self.chernoff_value * mill(x)?)
    }
}

/// Half-width `Δ = 27.99 R(4xr) r` of the factor `F₃ = M(x) ± Δ`.
pub fn thm5_halfwidth(x: f64, r: f64) -> Result<f64> {
    check_xr(x, r)?;
    if r == 0.0 {
        return Ok(0.0);
    }
    Ok(F2_COEFF * r_factor(4.0 * x * r)?.value() * r)
}

/// `[c·(M(x) − Δ)⁺, c·(M(x) + Δ) ∧ 1]` where `c` is the Chernoff infimum
/// (or any upper proxy for it, such as Bernstein's bound). Valid for
/// `0 ≤ xr < 1/12`.
pub fn thm5_interval(x: f64, r: f64, chernoff_value: f64) -> Result<TailInterval> {
    check_xr(x, r)?;
    if !(0.0..=1.0).contains(&chernoff_value) {
        return Err(domain(format!(
            "chernoff value must lie in [0, 1], got {chernoff_value}"
        )));
    }
    let valid = 12.0 * x * r < 1.0;
    let m = mill(x)?;
    let half = thm5_halfwidth(x, r)?;
    let (lo, hi) = if half.is_finite() {
        (
            (chernoff_value * (m - half)).max(0.0),
            (chernoff_value * (m + half)).min(1.0),
        )
    } else {
        (0.0, chernoff_value.min(1.0))
    };
    Ok(TailInterval {
        lo,
        hi,
        valid,
        chernoff_value,
    })
}
