//! Finite discrete summand laws.

use crate::error::{domain, Error, Result};

const PROB_SUM_TOL: f64 = 1e-12;
const MEAN_TOL: f64 = 1e-12;
/// Largest `|λ·v|` accepted before `exp` would overflow.
pub const EXP_GUARD: f64 = 700.0;
/// Default highest moment order used when searching for Bernstein's `ε`.
pub const DEFAULT_K_MAX: u32 = 60;

/// A finite-support law: strictly increasing atom values with strictly
/// positive probabilities summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    values: Vec<f64>,
    probs: Vec<f64>,
    centered: bool,
}

impl DiscreteDistribution {
    /// Builds a law from `(value, probability)` pairs.
    ///
    /// Atoms are sorted into canonical order; duplicate values are rejected
    /// rather than merged. With `centered = true` the first moment must
    /// vanish (within `1e-12`); nothing is shifted to make it so.
    pub fn new(atoms: Vec<(f64, f64)>, centered: bool) -> Result<Self> {
        if atoms.is_empty() {
            return Err(domain("distribution needs at least one atom"));
        }
        let mut atoms = atoms;
        for &(v, p) in &atoms {
            if !v.is_finite() {
                return Err(domain(format!("atom value {v} is not finite")));
            }
            if !(p.is_finite() && p > 0.0) {
                return Err(domain(format!("atom probability {p} must be > 0")));
            }
        }
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        if let Some(w) = atoms.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(domain(format!("duplicate atom value {}", w[0].0)));
        }
        let (values, probs): (Vec<f64>, Vec<f64>) = atoms.into_iter().unzip();
        let total = neumaier_sum(probs.iter().copied());
        if (total - 1.0).abs() > PROB_SUM_TOL {
            return Err(domain(format!("probabilities sum to {total}, not 1")));
        }
        let dist = DiscreteDistribution {
            values,
            probs,
            centered,
        };
        if centered {
            let mean = dist.moment(1);
            if mean.abs() > MEAN_TOL {
                return Err(domain(format!(
                    "distribution flagged centered but has mean {mean}"
                )));
            }
        }
        Ok(dist)
    }

    /// `±1` with probability ½ each.
    pub fn rademacher() -> Self {
        DiscreteDistribution {
            values: vec![-1.0, 1.0],
            probs: vec![0.5, 0.5],
            centered: true,
        }
    }

    /// The asymmetric law `{−1: 2/3, +2: 1/3}`.
    pub fn asym_2_1() -> Self {
        DiscreteDistribution {
            values: vec![-1.0, 2.0],
            probs: vec![2.0 / 3.0, 1.0 / 3.0],
            centered: true,
        }
    }

    /// Built-in laws addressable by name: `rademacher`, `asym-2-1`.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "rademacher" => Some(Self::rademacher()),
            "asym-2-1" => Some(Self::asym_2_1()),
            _ => None,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn atoms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().copied().zip(self.probs.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_centered(&self) -> bool {
        self.centered
    }

    pub fn max_value(&self) -> f64 {
        *self.values.last().expect("non-empty by construction")
    }

    pub fn min_value(&self) -> f64 {
        self.values[0]
    }

    pub fn max_abs_value(&self) -> f64 {
        self.max_value().abs().max(self.min_value().abs())
    }

    /// True for exactly the Rademacher law.
    pub fn is_rademacher(&self) -> bool {
        self.values == [-1.0, 1.0] && self.probs == [0.5, 0.5]
    }

    /// `E ξᵏ` as a compensated sum.
    pub fn moment(&self, k: u32) -> f64 {
        neumaier_sum(self.atoms().map(|(v, p)| p * v.powi(k as i32)))
    }

    pub fn mean(&self) -> f64 {
        self.moment(1)
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        neumaier_sum(self.atoms().map(|(v, p)| p * (v - m) * (v - m)))
    }

    /// `E (ξ⁺)ᵏ`.
    pub fn positive_part_moment(&self, k: u32) -> f64 {
        neumaier_sum(
            self.atoms()
                .filter(|(v, _)| *v > 0.0)
                .map(|(v, p)| p * v.powi(k as i32)),
        )
    }

    /// The law of `c·ξ` for `c > 0`. The centered flag carries over.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(domain(format!("scale factor must be > 0, got {c}")));
        }
        Ok(DiscreteDistribution {
            values: self.values.iter().map(|v| v * c).collect(),
            probs: self.probs.clone(),
            centered: self.centered,
        })
    }

    /// Esscher tilt: `p'ᵢ ∝ pᵢ e^{λ vᵢ}`, normalised by log-sum-exp.
    ///
    /// The tilted law is never flagged centered.
    pub fn tilt(&self, lambda: f64) -> Result<Self> {
        let (weights, total) = self.tilt_weights(lambda)?;
        Ok(DiscreteDistribution {
            values: self.values.clone(),
            probs: weights.iter().map(|w| w / total).collect(),
            centered: false,
        })
    }

    /// Unnormalised tilt weights `pᵢ e^{λvᵢ − m}` (with `m = max λvᵢ`) and
    /// their sum. `log Σ pᵢ e^{λvᵢ} = m + ln(sum)`.
    pub(crate) fn tilt_weights(&self, lambda: f64) -> Result<(Vec<f64>, f64)> {
        self.check_exp_guard(lambda)?;
        let shift = self
            .values
            .iter()
            .map(|v| lambda * v)
            .fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> = self
            .atoms()
            .map(|(v, p)| p * (lambda * v - shift).exp())
            .collect();
        let total = neumaier_sum(weights.iter().copied());
        Ok((weights, total))
    }

    /// `log E e^{λξ}`.
    pub fn log_mgf(&self, lambda: f64) -> Result<f64> {
        self.check_exp_guard(lambda)?;
        let shift = self
            .values
            .iter()
            .map(|v| lambda * v)
            .fold(f64::NEG_INFINITY, f64::max);
        let s = neumaier_sum(self.atoms().map(|(v, p)| p * (lambda * v - shift).exp()));
        Ok(shift + s.ln())
    }

    pub(crate) fn check_exp_guard(&self, lambda: f64) -> Result<()> {
        if !lambda.is_finite() {
            return Err(domain(format!(
                "tilt parameter must be finite, got {lambda}"
            )));
        }
        if self.values.iter().any(|v| (lambda * v).abs() > EXP_GUARD) {
            return Err(domain(format!(
                "|λ·v| exceeds {EXP_GUARD} for λ = {lambda}; exp would overflow"
            )));
        }
        Ok(())
    }

    /// Parses the `value,prob` text format: one atom per line, `#` starts a
    /// comment, blank lines are skipped. The result is flagged centered.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut atoms = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split(',').map(str::trim);
            let (Some(v), Some(p), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected `value,prob`, got `{line}`"),
                });
            };
            let parse = |s: &str, what: &str| {
                s.parse::<f64>().map_err(|e| Error::Parse {
                    line: line_no,
                    msg: format!("bad {what} `{s}`: {e}"),
                })
            };
            atoms.push((parse(v, "value")?, parse(p, "probability")?));
        }
        if atoms.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: "no atoms found".into(),
            });
        }
        Self::new(atoms, true)
    }
}

/// The smallest Bernstein `ε` found over moment orders `3..=k_max`, and the
/// order that attains it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BernsteinEps {
    pub eps: f64,
    pub argmax_k: u32,
    pub k_max: u32,
}

impl BernsteinEps {
    /// The supremum was attained at the last order checked, so a larger
    /// `k_max` might raise it.
    pub fn saturated(&self) -> bool {
        self.argmax_k == self.k_max
    }
}

/// `sup_{3≤k≤k_max} (2|E ξᵏ| / (k! E ξ²))^{1/(k−2)}`, the smallest `ε` for
/// which the law satisfies Bernstein's moment condition up to order `k_max`.
pub fn min_bernstein_eps(dist: &DiscreteDistribution, k_max: u32) -> Result<f64> {
    Ok(min_bernstein_eps_report(dist, k_max)?.eps)
}

pub fn min_bernstein_eps_report(dist: &DiscreteDistribution, k_max: u32) -> Result<BernsteinEps> {
    if !dist.is_centered() {
        return Err(domain("Bernstein's ε is defined for centered laws"));
    }
    if k_max < 3 {
        return Err(domain(format!("k_max must be >= 3, got {k_max}")));
    }
    let m2 = dist.moment(2);
    if m2 <= 0.0 {
        return Err(domain("second moment is zero (point mass at 0)"));
    }
    let ln_m2 = m2.ln();
    let mut best = BernsteinEps {
        eps: 0.0,
        argmax_k: 3,
        k_max,
    };
    let mut ln_fact = 2f64.ln();
    for k in 3..=k_max {
        ln_fact += (k as f64).ln();
        let mk = dist.moment(k).abs();
        if mk == 0.0 {
            continue;
        }
        let cand = ((2f64.ln() + mk.ln() - ln_fact - ln_m2) / (k - 2) as f64).exp();
        if cand > best.eps {
            best.eps = cand;
            best.argmax_k = k;
        }
    }
    if best.saturated() {
        log::warn!("Bernstein ε still growing at k_max = {k_max}; the estimate may be low");
    }
    Ok(best)
}

/// Checks `|E ξᵏ| ≤ ½ k! εᵏ⁻² E ξ²` for every `3 ≤ k ≤ k_max`.
pub fn satisfies_bernstein(dist: &DiscreteDistribution, eps: f64, k_max: u32) -> bool {
    let m2 = dist.moment(2);
    let mut half_fact = 1.0; // ½·k!, starting at k = 2
    (3..=k_max).all(|k| {
        half_fact *= k as f64;
        dist.moment(k).abs() <= half_fact * eps.powi(k as i32 - 2) * m2
    })
}

/// The `(n, σ², ε)` triple that every bound consumes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BernsteinEnv {
    n: u64,
    sigma2: f64,
    eps: f64,
}

impl BernsteinEnv {
    pub fn new(n: u64, sigma2: f64, eps: f64) -> Result<Self> {
        if n == 0 {
            return Err(domain("n must be >= 1"));
        }
        if !(sigma2.is_finite() && sigma2 > 0.0) {
            return Err(domain(format!("σ² must be > 0, got {sigma2}")));
        }
        if !(eps.is_finite() && eps > 0.0) {
            return Err(domain(format!("ε must be > 0, got {eps}")));
        }
        Ok(BernsteinEnv { n, sigma2, eps })
    }

    /// Environment of `n` i.i.d. copies of `dist`, with the minimal `ε`.
    pub fn iid(dist: &DiscreteDistribution, n: u64) -> Result<Self> {
        let eps = min_bernstein_eps(dist, DEFAULT_K_MAX)?;
        Self::new(n, n as f64 * dist.moment(2), eps)
    }

    /// Same as [`BernsteinEnv::iid`] but with a caller-chosen `ε`.
    pub fn iid_with_eps(dist: &DiscreteDistribution, n: u64, eps: f64) -> Result<Self> {
        Self::new(n, n as f64 * dist.moment(2), eps)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn sigma(&self) -> f64 {
        self.sigma2.sqrt()
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// `r = ε/σ`.
    pub fn r(&self) -> f64 {
        self.eps / self.sigma()
    }

    /// Converts a raw threshold `t` into the standardised `x = t/σ`.
    pub fn x_of(&self, threshold: f64) -> f64 {
        threshold / self.sigma()
    }
}

/// Neumaier's compensated summation.
pub(crate) fn neumaier_sum(it: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in it {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn moments_of_builtins() {
        let rad = DiscreteDistribution::rademacher();
        assert_eq!(rad.moment(3), 0.0);
        assert_eq!(rad.moment(4), 1.0);
        let asym = DiscreteDistribution::asym_2_1();
        // (2/3)(−1) + (1/3)(8)
        assert!(close(asym.moment(3), 2.0, 1e-15));
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(DiscreteDistribution::new(vec![], false).is_err());
        assert!(DiscreteDistribution::new(vec![(0.0, 0.5), (0.0, 0.5)], false).is_err());
        assert!(DiscreteDistribution::new(vec![(0.0, 0.5), (1.0, 0.4)], false).is_err());
        assert!(DiscreteDistribution::new(vec![(0.0, 1.0), (1.0, 0.0)], false).is_err());
        assert!(DiscreteDistribution::new(vec![(0.0, 0.5), (1.0, 0.5)], true).is_err());
        let d = DiscreteDistribution::new(vec![(1.0, 0.5), (-1.0, 0.5)], true).unwrap();
        assert!(d.is_rademacher());
    }

    #[test]
    fn min_eps_examples() {
        // Brute force: k = 4 binds for both laws.
        let rad = min_bernstein_eps_report(&DiscreteDistribution::rademacher(), 60).unwrap();
        assert!(close(rad.eps, 1.0 / 12f64.sqrt(), 1e-13));
        assert_eq!(rad.argmax_k, 4);
        let asym = min_bernstein_eps_report(&DiscreteDistribution::asym_2_1(), 60).unwrap();
        assert!(close(asym.eps, 0.5, 1e-13));
        assert_eq!(asym.argmax_k, 4);
        let two = DiscreteDistribution::new(vec![(-2.0, 0.5), (2.0, 0.5)], true).unwrap();
        assert!(close(
            min_bernstein_eps(&two, 60).unwrap(),
            2.0 / 12f64.sqrt(),
            1e-13
        ));
    }

    #[test]
    fn min_eps_degenerate_and_bad_args() {
        let point = DiscreteDistribution::new(vec![(0.0, 1.0)], true).unwrap();
        assert!(min_bernstein_eps(&point, 60).is_err());
        assert!(min_bernstein_eps(&DiscreteDistribution::rademacher(), 2).is_err());
        let uncentered = DiscreteDistribution::new(vec![(0.0, 0.5), (1.0, 0.5)], false).unwrap();
        assert!(min_bernstein_eps(&uncentered, 60).is_err());
    }

    #[test]
    fn tilt_examples() {
        let rad = DiscreteDistribution::rademacher();
        assert_eq!(rad.tilt(0.0).unwrap().probs(), rad.probs());
        let t = rad.tilt(3f64.ln()).unwrap();
        assert!(close(t.probs()[1], 0.9, 1e-15));
        assert!(!t.is_centered());
        let m = rad.tilt(0.5).unwrap().moment(1);
        assert!(close(m, 0.5f64.tanh(), 1e-15));
    }

    #[test]
    fn tilt_overflow_guard() {
        let rad = DiscreteDistribution::rademacher();
        assert!(rad.tilt(700.0).is_ok());
        assert!(rad.tilt(700.5).is_err());
        assert!(rad.tilt(f64::NAN).is_err());
    }

    #[test]
    fn parse_text_format() {
        let d = DiscreteDistribution::parse_text("# law\n-1, 0.5\n\n1,0.5 # up\n").unwrap();
        assert!(d.is_rademacher());
        match DiscreteDistribution::parse_text("-1,0.5\n1;0.5\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match DiscreteDistribution::parse_text("-1,abc\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(DiscreteDistribution::parse_text("# nothing\n").is_err());
    }

    #[test]
    fn env_invariants() {
        assert!(BernsteinEnv::new(0, 1.0, 1.0).is_err());
        assert!(BernsteinEnv::new(1, 0.0, 1.0).is_err());
        assert!(BernsteinEnv::new(1, 1.0, 0.0).is_err());
        let env = BernsteinEnv::iid(&DiscreteDistribution::rademacher(), 100).unwrap();
        assert!(close(env.sigma(), 10.0, 1e-15));
        assert!(close(env.r(), 1.0 / 12f64.sqrt() / 10.0, 1e-14));
        assert!(close(env.x_of(20.0), 2.0, 1e-15));
    }
}
