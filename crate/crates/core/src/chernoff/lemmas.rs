//! Literal checks of the Bernstein-envelope inequalities for `T_n`, `Ψ_n` and
//! `σ̄²`, and of the two normal-approximation bounds for the tilted sum.
//!
//! With `ε` the smallest Bernstein parameter of the law, `σ² = n Var ξ` and
//! `u = λε ∈ [0, 1)`:
//!
//! ```text
//! (1 − 2.4u)λσ² ≤ (1 − 1.5u)(1 − u)/(1 − u + 6u²)·λσ² ≤ T_n(λ) ≤ (1 − 0.5u)/(1 − u)²·λσ²
//! Ψ_n(λ) ≤ n log(1 + λ²σ²/(2n(1 − u))) ≤ λ²σ²/(2(1 − u))
//! −λT_n(λ) + Ψ_n(λ) ≥ −λ²σ²/(2(1 − u)⁶)
//! (1 − u)²(1 − 3u)/(1 − u + 6u²)²·σ² ≤ σ̄²(λ) ≤ σ²/(1 − u)³
//! sup_y |P_λ(Y_n/σ̄ ≤ y) − Φ(y)| ≤ 13.44 σ²ε/(σ̄³(1 − u)⁴)
//! sup_y |P_λ(Y_n ≤ yσ/(1 − u)) − Φ(y)| ≤ 1.07u + 42.45ε/σ        (u ≤ 0.1)
//! ```
//!
//! where `Y_n = S_n − T_n(λ)` under the tilted measure.

use crate::distributions::{min_bernstein_eps, DiscreteDistribution, DEFAULT_K_MAX};
use crate::error::{domain, Result};
use crate::oracles::convolve_iid;

use super::{cumulant, cumulant_mean, tilted_variance};

/// Berry–Esseen constant in the normal-approximation bound (24 × 0.56).
pub const BERRY_ESSEEN_CONST: f64 = 13.44;

const SCALED_CLT_U_MAX: f64 = 0.1;
const MAX_CLT_N: u64 = 40;
/// Relative slack absorbing rounding when both sides agree to the last bits.
/// A law is accepted as centered when its mean is below `1e-12`, so `T_n(0)`
/// and `Ψ_n(0)` may sit that far from 0; the slack is measured against
/// `max(|lhs|, |rhs|, n(1 + max|v|)²)` to cover that.
const ROUNDING_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lemma {
    /// Two-sided bound on the tilted mean `T_n`.
    TiltedMean,
    /// Upper bound on `Ψ_n` and lower bound on `Ψ_n − λT_n`.
    Cumulant,
    /// Two-sided bound on the tilted variance `σ̄²`.
    TiltedVariance,
    /// Berry–Esseen bound for the standardized tilted sum.
    NormalApprox,
    /// Normal approximation with the untilted scale `σ/(1 − λε)`.
    ScaledNormalApprox,
}

impl Lemma {
    pub fn name(self) -> &'static str {
        match self {
            Lemma::TiltedMean => "tilted-mean",
            Lemma::Cumulant => "cumulant",
            Lemma::TiltedVariance => "tilted-variance",
            Lemma::NormalApprox => "normal-approx",
            Lemma::ScaledNormalApprox => "scaled-normal-approx",
        }
    }
}

/// One inequality `lhs ≤ rhs` at one tilt.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaCheck {
    pub lemma: Lemma,
    pub check: &'static str,
    pub lambda: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`; negative beyond rounding means a violation.
    pub margin: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaSummary {
    pub lemma: Lemma,
    pub checks: usize,
    pub passed: usize,
    pub worst_margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    pub n: u64,
    pub eps: f64,
    pub sigma2: f64,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Per-lemma totals in a fixed order, skipping lemmas with no checks.
    pub fn summary(&self) -> Vec<LemmaSummary> {
        let mut out: Vec<LemmaSummary> = Vec::new();
        let mut lemmas: Vec<Lemma> = self.checks.iter().map(|c| c.lemma).collect();
        lemmas.sort();
        lemmas.dedup();
        for lemma in lemmas {
            let rows = self.checks.iter().filter(|c| c.lemma == lemma);
            let mut s = LemmaSummary {
                lemma,
                checks: 0,
                passed: 0,
                worst_margin: f64::INFINITY,
            };
            for c in rows {
                s.checks += 1;
                s.passed += usize::from(c.pass);
                s.worst_margin = s.worst_margin.min(c.margin);
            }
            out.push(s);
        }
        out
    }

    pub fn passes(&self, lemma: Lemma) -> bool {
        self.checks
            .iter()
            .filter(|c| c.lemma == lemma)
            .all(|c| c.pass)
    }
}

fn check(
    lemma: Lemma,
    name: &'static str,
    lambda: f64,
    lhs: f64,
    rhs: f64,
    floor: f64,
) -> LemmaCheck {
    let margin = rhs - lhs;
    let scale = lhs.abs().max(rhs.abs()).max(floor);
    LemmaCheck {
        lemma,
        check: name,
        lambda,
        lhs,
        rhs,
        margin,
        pass: margin >= -ROUNDING_SLACK * scale,
    }
}

/// Evaluates every inequality on `lambda_grid` using exact tilted moments.
///
/// With `check_clt` the tilted sum is convolved exactly (`n ≤ 40`) and its
/// Kolmogorov distance to `Φ` is compared with both normal-approximation
/// bounds; the scaled one only where `λε ≤ 0.1`.
pub fn verify_lemmas(
    dist: &DiscreteDistribution,
    n: u64,
    lambda_grid: &[f64],
    check_clt: bool,
) -> Result<LemmaReport> {
    if !dist.is_centered() {
        return Err(domain("lemma verification requires a centered law"));
    }
    if n == 0 {
        return Err(domain("n must be >= 1"));
    }
    if check_clt && n > MAX_CLT_N {
        return Err(domain(format!(
            "exact normal-approximation check needs n <= {MAX_CLT_N}, got {n}"
        )));
    }
    let eps = min_bernstein_eps(dist, DEFAULT_K_MAX)?;
    if let Some(&bad) = lambda_grid.iter().find(|&&l| !(l >= 0.0 && l * eps < 1.0)) {
        return Err(domain(format!(
            "grid point {bad} outside [0, 1/eps) with eps = {eps}"
        )));
    }
    let nf = n as f64;
    let sigma2 = nf * dist.variance();
    let sigma = sigma2.sqrt();
    let floor = nf * (1.0 + dist.max_abs_value()).powi(2);
    let mut checks = Vec::new();
    for &lambda in lambda_grid {
        let u = lambda * eps;
        let t = cumulant_mean(dist, n, lambda)?;
        let psi = cumulant(dist, n, lambda)?;
        let var = tilted_variance(dist, n, lambda)?;
        let ls2 = lambda * sigma2;
        let l2s2 = lambda * ls2;

        let mean_lo = (1.0 - 1.5 * u) * (1.0 - u) / (1.0 - u + 6.0 * u * u) * ls2;
        checks.push(check(
            Lemma::TiltedMean,
            "linear <= rational",
            lambda,
            (1.0 - 2.4 * u) * ls2,
            mean_lo,
            floor,
        ));
        checks.push(check(
            Lemma::TiltedMean,
            "rational <= T_n",
            lambda,
            mean_lo,
            t,
            floor,
        ));
        checks.push(check(
            Lemma::TiltedMean,
            "T_n <= upper",
            lambda,
            t,
            (1.0 - 0.5 * u) / (1.0 - u).powi(2) * ls2,
            floor,
        ));

        let log_form = nf * (l2s2 / (2.0 * nf * (1.0 - u))).ln_1p();
        checks.push(check(
            Lemma::Cumulant,
            "Psi_n <= log form",
            lambda,
            psi,
            log_form,
            floor,
        ));
        checks.push(check(
            Lemma::Cumulant,
            "log form <= quadratic",
            lambda,
            log_form,
            l2s2 / (2.0 * (1.0 - u)),
            floor,
        ));
        checks.push(check(
            Lemma::Cumulant,
            "Psi_n - lambda T_n >= lower",
            lambda,
            -l2s2 / (2.0 * (1.0 - u).powi(6)),
            psi - lambda * t,
            floor,
        ));

        let var_lo = (1.0 - u).powi(2) * (1.0 - 3.0 * u) / (1.0 - u + 6.0 * u * u).powi(2) * sigma2;
        checks.push(check(
            Lemma::TiltedVariance,
            "lower <= var",
            lambda,
            var_lo,
            var,
            floor,
        ));
        checks.push(check(
            Lemma::TiltedVariance,
            "var <= upper",
            lambda,
            var,
            sigma2 / (1.0 - u).powi(3),
            floor,
        ));

        if check_clt {
            let sum = convolve_iid(&dist.tilt(lambda)?, n)?;
            let sbar = var.sqrt();
            let d = sum.kolmogorov_distance(t, sbar)?;
            let rhs = BERRY_ESSEEN_CONST * sigma2 * eps / (sbar.powi(3) * (1.0 - u).powi(4));
            checks.push(check(
                Lemma::NormalApprox,
                "Kolmogorov <= Berry-Esseen",
                lambda,
                d,
                rhs,
                1.0,
            ));
            if u <= SCALED_CLT_U_MAX {
                let d = sum.kolmogorov_distance(t, sigma / (1.0 - u))?;
                let rhs = 1.07 * u + 42.45 * eps / sigma;
                checks.push(check(
                    Lemma::ScaledNormalApprox,
                    "Kolmogorov <= scaled bound",
                    lambda,
                    d,
                    rhs,
                    1.0,
                ));
            }
        }
    }
    Ok(LemmaReport {
        n,
        eps,
        sigma2,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rademacher_grid_passes() {
        let rad = DiscreteDistribution::rademacher();
        let report = verify_lemmas(&rad, 20, &[0.0, 0.5, 1.0, 2.0, 3.0], false).unwrap();
        assert!(
            report.all_pass(),
            "{:?}",
            report.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>()
        );
        assert_eq!(report.summary().len(), 3);
        assert!((report.eps - 1.0 / 12f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn zero_tilt_is_trivial() {
        let asym = DiscreteDistribution::asym_2_1();
        let report = verify_lemmas(&asym, 5, &[0.0], false).unwrap();
        assert!(report.all_pass());
        for c in &report.checks {
            if c.lemma != Lemma::TiltedVariance {
                assert!(c.lhs.abs() < 1e-14 && c.rhs.abs() < 1e-14, "{c:?}");
            }
        }
    }

    #[test]
    fn clt_check_rademacher() {
        let rad = DiscreteDistribution::rademacher();
        let report = verify_lemmas(&rad, 20, &[0.0, 0.5], true).unwrap();
        assert!(report.passes(Lemma::NormalApprox));
        assert!(report.passes(Lemma::ScaledNormalApprox));
        assert!(report.all_pass());
    }

    #[test]
    fn rejects_bad_inputs() {
        let rad = DiscreteDistribution::rademacher();
        assert!(verify_lemmas(&rad, 20, &[4.0], false).is_err());
        assert!(verify_lemmas(&rad, 20, &[-0.1], false).is_err());
        assert!(verify_lemmas(&rad, 41, &[0.0], true).is_err());
        assert!(verify_lemmas(&rad, 41, &[0.0], false).is_ok());
    }
}
