use crate::distributions::{neumaier_sum, DiscreteDistribution};
use crate::error::{domain, Error, Result};
use crate::specfun::std_normal_cdf;

use super::binomial::binom_sf;

/// Largest denominator tried when rescaling atoms onto an integer lattice.
const MAX_DENOM: u32 = 1000;
const LATTICE_TOL: f64 = 1e-9;
/// Largest `n` for the general (non-Rademacher) convolution.
pub const MAX_GENERAL_N: u64 = 5000;
/// Largest `n` for the Rademacher binomial path.
pub const MAX_RADEMACHER_N: u64 = 10_000_000;
/// Support-size budget for the exact convolution table.
pub const MAX_SUPPORT: usize = 20_000_000;

/// Sum values `(base + j·step)/denom` for `j = 0..len`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Lattice {
    base: i64,
    step: i64,
    denom: i64,
}

impl Lattice {
    /// Fractional index of `t`, snapped to an integer when within tolerance.
    fn position(&self, t: f64) -> (f64, bool) {
        let p = (t * self.denom as f64 - self.base as f64) / self.step as f64;
        let r = p.round();
        if (p - r).abs() <= LATTICE_TOL * r.abs().max(1.0) {
            (r, true)
        } else {
            (p, false)
        }
    }
}

/// Exact law of `S_n` for i.i.d. summands: sorted support and probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct SumDistribution {
    support: Vec<f64>,
    probs: Vec<f64>,
    lattice: Option<Lattice>,
}

impl SumDistribution {
    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        neumaier_sum(self.probs.iter().copied())
    }

    /// Number of support points `≤ t` (`inclusive`) or `< t`.
    fn count_below(&self, t: f64, inclusive: bool) -> usize {
        let len = self.support.len();
        match self.lattice {
            Some(lat) => {
                let (p, hit) = lat.position(t);
                let c = if hit && !inclusive {
                    p
                } else {
                    p.floor() + 1.0
                };
                c.clamp(0.0, len as f64) as usize
            }
            None if inclusive => self.support.partition_point(|&v| v <= t),
            None => self.support.partition_point(|&v| v < t),
        }
    }

    /// `P(S_n > t)` (`strict`) or `P(S_n ≥ t)`.
    pub fn tail(&self, t: f64, strict: bool) -> f64 {
        let from = self.count_below(t, strict);
        neumaier_sum(self.probs[from..].iter().rev().copied())
    }

    /// `P(S_n ≤ t)`.
    pub fn cdf(&self, t: f64) -> f64 {
        let to = self.count_below(t, true);
        neumaier_sum(self.probs[..to].iter().copied())
    }

    /// `P(S_n = t)`.
    pub fn point_mass(&self, t: f64) -> f64 {
        let lo = self.count_below(t, false);
        let hi = self.count_below(t, true);
        self.probs[lo..hi].iter().sum()
    }

    /// `sup_y |P((S_n − center)/scale ≤ y) − Φ(y)|`, attained at the atoms.
    pub fn kolmogorov_distance(&self, center: f64, scale: f64) -> Result<f64> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(domain(format!("scale must be positive, got {scale}")));
        }
        let mut below = 0.0f64;
        let mut comp = 0.0f64;
        let mut worst = 0.0f64;
        for (&s, &p) in self.support.iter().zip(&self.probs) {
            let phi = std_normal_cdf((s - center) / scale)?;
            let before = below + comp;
            let t = below + p;
            comp += if below.abs() >= p {
                (below - t) + p
            } else {
                (p - t) + below
            };
            below = t;
            let after = below + comp;
            worst = worst.max((before - phi).abs()).max((after - phi).abs());
        }
        Ok(worst)
    }
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Smallest `q ≤ 1000` putting every atom on `ℤ/q`, with the scaled integers.
fn detect_lattice(values: &[f64]) -> Option<(i64, Vec<i64>)> {
    (1..=MAX_DENOM).find_map(|q| {
        let q = f64::from(q);
        let ints: Option<Vec<i64>> = values
            .iter()
            .map(|&v| {
                let s = v * q;
                let r = s.round();
                (r.abs() < 1e12 && (s - r).abs() <= LATTICE_TOL * r.abs().max(1.0))
                    .then_some(r as i64)
            })
            .collect();
        ints.map(|k| (q as i64, k))
    })
}

fn convolve_lattice(
    dist: &DiscreteDistribution,
    n: u64,
    denom: i64,
    ints: &[i64],
) -> Result<SumDistribution> {
    let kmin = *ints.iter().min().expect("nonempty law");
    let step = ints.iter().fold(0, |g, &k| gcd(g, k - kmin)).max(1);
    let offsets: Vec<usize> = ints.iter().map(|&k| ((k - kmin) / step) as usize).collect();
    let span = *offsets.iter().max().expect("nonempty law");
    let len = (n as usize)
        .checked_mul(span)
        .and_then(|m| m.checked_add(1))
        .filter(|&l| l <= MAX_SUPPORT)
        .ok_or_else(|| {
            Error::Capacity(format!(
                "lattice support for n = {n} exceeds {MAX_SUPPORT} points"
            ))
        })?;
    let mut cur = vec![0.0; len];
    let mut next = vec![0.0; len];
    cur[0] = 1.0;
    for stage in 0..n as usize {
        let reach = stage * span + 1;
        next[..reach + span].fill(0.0);
        for (&o, &w) in offsets.iter().zip(dist.probs()) {
            for (dst, &src) in next[o..o + reach].iter_mut().zip(&cur[..reach]) {
                *dst += src * w;
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    let base = kmin * n as i64;
    let support = (0..len)
        .map(|j| (base + j as i64 * step) as f64 / denom as f64)
        .collect();
    Ok(SumDistribution {
        support,
        probs: cur,
        lattice: Some(Lattice { base, step, denom }),
    })
}

fn convolve_general(dist: &DiscreteDistribution, n: u64) -> Result<SumDistribution> {
    let mut cur: Vec<(f64, f64)> = vec![(0.0, 1.0)];
    for _ in 0..n {
        let mut next: Vec<(f64, f64)> = Vec::with_capacity(cur.len() * dist.len());
        for &(s, p) in &cur {
            next.extend(dist.atoms().map(|(v, w)| (s + v, p * w)));
        }
        next.sort_by(|a, b| a.0.total_cmp(&b.0));
        cur.clear();
        for (s, p) in next {
            match cur.last_mut() {
                Some(last) if last.0 == s => last.1 += p,
                _ => cur.push((s, p)),
            }
        }
        if cur.len() > MAX_SUPPORT {
            return Err(Error::Capacity(format!(
                "non-lattice support exceeds {MAX_SUPPORT} points before n = {n}"
            )));
        }
    }
    let (support, probs) = cur.into_iter().unzip();
    Ok(SumDistribution {
        support,
        probs,
        lattice: None,
    })
}

/// Exact law of `ξ₁ + … + ξ_n` by dynamic-programming convolution.
///
/// Atoms on a common rational grid `ℤ/q` (`q ≤ 1000`) are convolved on the
/// integer lattice; otherwise the reachable sums are enumerated and merged
/// only when exactly equal.
pub fn convolve_iid(dist: &DiscreteDistribution, n: u64) -> Result<SumDistribution> {
    if n == 0 {
        return Err(domain("n must be >= 1"));
    }
    if n > MAX_GENERAL_N {
        return Err(Error::Capacity(format!(
            "exact convolution limited to n <= {MAX_GENERAL_N}, got {n}"
        )));
    }
    match detect_lattice(dist.values()) {
        Some((q, ints)) => convolve_lattice(dist, n, q, &ints),
        None => convolve_general(dist, n),
    }
}

/// Exact `P(S_n > threshold)` (`strict`) or `P(S_n ≥ threshold)`.
///
/// Rademacher summands go through the binomial survival function for any
/// `n ≤ 10⁷`; other laws through [`convolve_iid`] (`n ≤ 5000`).
pub fn exact_tail_iid(
    dist: &DiscreteDistribution,
    n: u64,
    threshold: f64,
    strict: bool,
) -> Result<f64> {
    if n == 0 {
        return Err(domain("n must be >= 1"));
    }
    if !threshold.is_finite() {
        return Err(domain(format!("threshold must be finite, got {threshold}")));
    }
    if dist.is_rademacher() {
        if n > MAX_RADEMACHER_N {
            return Err(Error::Capacity(format!(
                "binomial path limited to n <= {MAX_RADEMACHER_N}, got {n}"
            )));
        }
        // S_n = 2K − n with K ~ Bin(n, ½).
        let half = 0.5 * (n as f64 + threshold);
        let r = half.round();
        let on_atom = (half - r).abs() <= LATTICE_TOL * r.abs().max(1.0);
        let k0 = match (on_atom, strict) {
            (true, true) => r + 1.0,
            (true, false) => r,
            (false, _) => half.floor() + 1.0,
        };
        let k0 = k0.clamp(0.0, n as f64 + 1.0) as i64;
        return Ok(binom_sf(k0, n, 0.5));
    }
    Ok(convolve_iid(dist, n)?.tail(threshold, strict))
}
