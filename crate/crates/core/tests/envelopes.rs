//! Bounds against exact tails of Rademacher sums.

use bernstein_ld::bounds_classical::{
    bennett_poisson_bound, bernstein_bound, bernstein_weak_bound,
};
use bernstein_ld::bounds_sharp::{
    bn_bound, cor4_upper, thm1_upper, thm2_upper, thm3_lower, thm5_interval,
};
use bernstein_ld::chernoff::{chernoff_infimum, verify_lemmas, Lemma};
use bernstein_ld::oracles::exact_tail_iid;
use bernstein_ld::specfun::{mill, r_factor};
use bernstein_ld::DiscreteDistribution;

const NS: [u64; 4] = [10, 50, 100, 500];

/// Thresholds in `(0, 0.1n]`: an even grid, every integer and a point just
/// below each integer, where the strict tail jumps.
fn thresholds(n: u64) -> Vec<f64> {
    let top = 0.1 * n as f64;
    let mut ts: Vec<f64> = (1..=200).map(|j| j as f64 * top / 200.0).collect();
    for k in 1..=top.floor() as u64 {
        ts.push(k as f64);
        ts.push(k as f64 - 1e-9);
    }
    ts
}

#[test]
fn upper_bounds_dominate_and_lower_bound_is_below() {
    let rad = DiscreteDistribution::rademacher();
    for n in NS {
        let sigma = (n as f64).sqrt();
        let r = 1.0 / sigma;
        for t in thresholds(n) {
            let x = t / sigma;
            let exact = exact_tail_iid(&rad, n, t, true).unwrap();
            let uppers = [
                ("bernstein", bernstein_bound(x, r).unwrap()),
                ("thm1", thm1_upper(x, r, 1.0).unwrap()),
                ("thm2", thm2_upper(x, r, n).unwrap()),
                ("cor4", cor4_upper(x, r, 0.1).unwrap()),
            ];
            for (name, b) in uppers {
                assert!(b.valid, "{name} invalid at n={n} t={t}");
                assert!(
                    b.value >= exact,
                    "{name}: {} < {exact} at n={n} t={t}",
                    b.value
                );
            }
            let lower = thm3_lower(x, r, 0.1).unwrap();
            assert!(
                lower.valid && lower.value <= exact,
                "lower {} > {exact} at n={n} t={t}",
                lower.value
            );
        }
    }
}

#[test]
fn interval_contains_exact_tail() {
    let rad = DiscreteDistribution::rademacher();
    for n in NS {
        let sigma = (n as f64).sqrt();
        let r = 1.0 / sigma;
        for t in thresholds(n) {
            let x = t / sigma;
            if x * r >= 1.0 / 12.0 {
                continue;
            }
            let exact = exact_tail_iid(&rad, n, t, true).unwrap();
            let inf = chernoff_infimum(&rad, n, t).unwrap().value;
            let iv = thm5_interval(x, r, inf).unwrap();
            assert!(
                iv.valid && iv.contains(exact),
                "n={n} t={t}: {exact} not in [{}, {}]",
                iv.lo,
                iv.hi
            );
            let m = mill(x).unwrap();
            let halfwidth = 27.99 * r_factor(4.0 * x * r).unwrap().value() * r;
            assert!((exact / (inf * m) - 1.0).abs() <= halfwidth / m);
        }
    }
}

#[test]
fn interval_example_n100_x2() {
    let rad = DiscreteDistribution::rademacher();
    let exact = exact_tail_iid(&rad, 100, 20.0, true).unwrap();
    let inf = chernoff_infimum(&rad, 100, 20.0).unwrap().value;
    assert!(thm5_interval(2.0, 0.1, inf).unwrap().contains(exact));
}

#[test]
fn infimum_below_bernstein_with_minimal_eps() {
    let rad = DiscreteDistribution::rademacher();
    let eps = 1.0 / 12f64.sqrt();
    for n in [10u64, 100, 1000] {
        let sigma = (n as f64).sqrt();
        for k in 0..=40 {
            let t = k as f64 * 0.025 * n as f64;
            let inf = chernoff_infimum(&rad, n, t).unwrap().value;
            let b = bernstein_bound(t / sigma, eps / sigma).unwrap().value;
            assert!(inf <= b * (1.0 + 1e-12), "n={n} t={t}: {inf} > {b}");
        }
    }
}

#[test]
fn dominance_chain_on_grid() {
    for n in [25u64, 100, 400] {
        for r in [0.005, 0.01, 0.05, 0.1] {
            for k in 0..=200 {
                let x = k as f64 * 0.05;
                let t2 = thm2_upper(x, r, n).unwrap().value;
                let bn = bn_bound(x, r, n).unwrap().value;
                let b = bernstein_bound(x, r).unwrap().value;
                let w = bernstein_weak_bound(x, r).unwrap().value;
                assert!(t2 <= bn && bn <= b && b <= w, "x={x} r={r} n={n}");
            }
        }
    }
}

/// Rademacher summands rescaled to `±1/√n`, so that `σ = 1` and
/// `δ = n E(ξ⁺)³ / σ = 1/(2√n)`.
#[test]
fn bennett_poisson_dominates_chernoff_for_unit_variance_sums() {
    for n in [1u64, 4, 25, 100] {
        let s = (n as f64).sqrt();
        let law = DiscreteDistribution::rademacher().scaled(1.0 / s).unwrap();
        let delta = 0.5 / s;
        for k in 0..=30 {
            let y = k as f64 * 0.1 * s;
            let inf = chernoff_infimum(&law, n, y).unwrap().value;
            let bp = bennett_poisson_bound(y, delta, 1.0).unwrap().value;
            assert!(inf <= bp * (1.0 + 1e-12), "n={n} y={y}: {inf} > {bp}");
        }
    }
}

#[test]
fn lemma_suite_for_both_laws() {
    for law in [
        DiscreteDistribution::rademacher(),
        DiscreteDistribution::asym_2_1(),
    ] {
        let eps = bernstein_ld::distributions::min_bernstein_eps(&law, 60).unwrap();
        let grid: Vec<f64> = (0..=18).map(|k| k as f64 * 0.05 / eps).collect();
        for n in [5u64, 20] {
            let report = verify_lemmas(&law, n, &grid, false).unwrap();
            assert!(report.all_pass(), "{law:?} n={n}");
        }
        for n in [10u64, 20, 40] {
            let report = verify_lemmas(&law, n, &[0.0, 0.5 / eps], true).unwrap();
            assert!(report.passes(Lemma::NormalApprox), "{law:?} n={n}");
        }
    }
}
