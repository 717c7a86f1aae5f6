use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chernoff::chernoff_infimum;
use crate::distributions::{neumaier_sum, DiscreteDistribution};
use crate::error::{check_nonneg, domain, Result};

/// Samples per work unit. Chunk boundaries depend only on the sample index,
/// so the reduction order is fixed whatever the thread count.
const CHUNK: u64 = 4096;

/// Monte-Carlo tail estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MCEstimate {
    pub estimate: f64,
    /// Sample standard deviation of the weights over `√n_samples`.
    pub std_error: f64,
    pub n_samples: u64,
    pub lambda_used: f64,
    pub seed: u64,
    /// The Chernoff tilt sat on the boundary, so plain sampling (`λ = 0`) was used.
    pub plain_fallback: bool,
    /// A single sample: the standard error is reported as 0.
    pub degenerate: bool,
}

/// Random stream of sample `index`: ChaCha8 keyed by `seed`, stream `index`.
fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Importance-sampling estimate of `P(S_n > threshold)` under the Chernoff
/// tilt `λ̄`: each sum is drawn from the tilted law and weighted by
/// `exp{Ψ_n(λ̄) − λ̄S_n}·1{S_n > threshold}`.
pub fn mc_tail_importance(
    dist: &DiscreteDistribution,
    n: u64,
    threshold: f64,
    n_samples: u64,
    seed: u64,
) -> Result<MCEstimate> {
    let sol = chernoff_infimum(dist, n, threshold)?;
    if sol.boundary {
        log::warn!("Chernoff tilt on the boundary; falling back to plain Monte Carlo");
        let mut est = mc_tail_tilted(dist, n, threshold, 0.0, true, n_samples, seed)?;
        est.plain_fallback = true;
        return Ok(est);
    }
    mc_tail_tilted(dist, n, threshold, sol.lambda_bar, true, n_samples, seed)
}

/// As [`mc_tail_importance`] with a caller-chosen tilt (`λ = 0` is plain
/// Monte Carlo) and a choice of event: `S_n > threshold` when `strict`,
/// otherwise `S_n ≥ threshold`.
pub fn mc_tail_tilted(
    dist: &DiscreteDistribution,
    n: u64,
    threshold: f64,
    lambda: f64,
    strict: bool,
    n_samples: u64,
    seed: u64,
) -> Result<MCEstimate> {
    if !dist.is_centered() {
        return Err(domain("Monte-Carlo tail requires a centered law"));
    }
    check_nonneg("threshold", threshold)?;
    check_nonneg("lambda", lambda)?;
    if n == 0 || n_samples == 0 {
        return Err(domain("n and n_samples must be >= 1"));
    }
    let tilted = dist.tilt(lambda)?;
    let log_mgf_n = n as f64 * dist.log_mgf(lambda)?;
    let mut cum = Vec::with_capacity(tilted.len());
    let mut acc = 0.0;
    for &p in tilted.probs() {
        acc += p;
        cum.push(acc);
    }
    let values = tilted.values();
    let last = values.len() - 1;

    let weight = |index: u64| -> f64 {
        let mut rng = sample_rng(seed, index);
        let mut s = 0.0;
        for _ in 0..n {
            let u: f64 = rng.random::<f64>() * acc;
            let j = cum.partition_point(|&c| c <= u).min(last);
            s += values[j];
        }
        let hit = if strict {
            s > threshold
        } else {
            s >= threshold
        };
        if hit {
            (log_mgf_n - lambda * s).exp()
        } else {
            0.0
        }
    };

    let chunks = n_samples.div_ceil(CHUNK);
    let partial: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let ws: Vec<f64> = (c * CHUNK..((c + 1) * CHUNK).min(n_samples))
                .map(weight)
                .collect();
            (
                neumaier_sum(ws.iter().copied()),
                neumaier_sum(ws.iter().map(|w| w * w)),
            )
        })
        .collect();
    let total = neumaier_sum(partial.iter().map(|p| p.0));
    let total_sq = neumaier_sum(partial.iter().map(|p| p.1));
    let m = n_samples as f64;
    let estimate = total / m;
    let std_error = if n_samples == 1 {
        0.0
    } else {
        let var = ((total_sq - m * estimate * estimate) / (m - 1.0)).max(0.0);
        (var / m).sqrt()
    };
    Ok(MCEstimate {
        estimate,
        std_error,
        n_samples,
        lambda_used: lambda,
        seed,
        plain_fallback: false,
        degenerate: n_samples == 1,
    })
}
