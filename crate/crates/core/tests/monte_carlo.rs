//! Importance-sampling estimator against the exact binomial tail.

use bernstein_ld::oracles::{exact_tail_iid, mc_tail_importance, mc_tail_tilted};
use bernstein_ld::DiscreteDistribution;

#[test]
fn estimate_within_four_standard_errors() {
    let rad = DiscreteDistribution::rademacher();
    let exact = exact_tail_iid(&rad, 100, 30.0, true).unwrap();
    let est = mc_tail_importance(&rad, 100, 30.0, 100_000, 7).unwrap();
    assert!(!est.plain_fallback);
    assert!((est.lambda_used - 0.3f64.atanh()).abs() < 1e-10);
    assert!(
        (est.estimate - exact).abs() < 4.0 * est.std_error,
        "{est:?} vs {exact}"
    );
}

#[test]
fn pooled_mean_is_unbiased() {
    let rad = DiscreteDistribution::rademacher();
    for t in [10.0, 20.0, 30.0] {
        let exact = exact_tail_iid(&rad, 100, t, true).unwrap();
        let runs: Vec<_> = (0..20u64)
            .map(|s| mc_tail_importance(&rad, 100, t, 10_000, 1000 + s).unwrap())
            .collect();
        let mean = runs.iter().map(|e| e.estimate).sum::<f64>() / 20.0;
        let pooled_se = runs
            .iter()
            .map(|e| e.std_error * e.std_error)
            .sum::<f64>()
            .sqrt()
            / 20.0;
        assert!(
            (mean - exact).abs() < 4.0 * pooled_se,
            "t={t}: {mean} vs {exact} (se {pooled_se})"
        );
    }
}

#[test]
fn tilting_reduces_standard_error_tenfold() {
    let rad = DiscreteDistribution::rademacher();
    let is = mc_tail_importance(&rad, 100, 30.0, 100_000, 7).unwrap();
    let plain = mc_tail_tilted(&rad, 100, 30.0, 0.0, true, 100_000, 7).unwrap();
    assert!(
        plain.std_error >= 10.0 * is.std_error,
        "{} vs {}",
        plain.std_error,
        is.std_error
    );
}

#[test]
fn independent_of_thread_count() {
    let rad = DiscreteDistribution::rademacher();
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| mc_tail_importance(&rad, 60, 12.0, 30_000, 5).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(3));
    assert_eq!(one.estimate.to_bits(), run(8).estimate.to_bits());
}
