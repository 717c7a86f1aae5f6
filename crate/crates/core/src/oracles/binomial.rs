//! Binomial probabilities without cancellation, after C. Loader's
//! saddle-point formulation (`stirlerr` + `bd0`).

use std::f64::consts::PI;

/// `log(n!) − ((n + ½) log n − n + ½ log 2π)` for `n = 0..=15`.
#[allow(clippy::excessive_precision)]
const STIRLERR_TABLE: [f64; 16] = [
    0.0,
    0.081_061_466_795_327_258,
    0.041_340_695_955_409_294,
    0.027_677_925_684_998_339,
    0.020_790_672_103_765_093,
    0.016_644_691_189_821_192,
    0.013_876_128_823_070_748,
    0.011_896_709_945_891_770,
    0.010_411_265_261_972_096,
    0.009_255_462_182_712_733,
    0.008_330_563_433_362_871,
    0.007_573_675_487_951_841,
    0.006_942_840_107_209_530,
    0.006_408_994_188_004_207,
    0.005_951_370_112_758_848,
    0.005_554_733_551_962_801,
];

fn stirlerr(n: u64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    if n <= 15 {
        return STIRLERR_TABLE[n as usize];
    }
    let nf = n as f64;
    let nn = nf * nf;
    if n > 500 {
        (S0 - S1 / nn) / nf
    } else if n > 80 {
        (S0 - (S1 - S2 / nn) / nn) / nf
    } else if n > 35 {
        (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / nf
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / nf
    }
}

/// Deviance term `x log(x/np) + np − x`, accurate when `x ≈ np`.
fn bd0(x: f64, np: f64) -> f64 {
    if (x - np).abs() < 0.1 * (x + np) {
        let v = (x - np) / (x + np);
        let mut s = (x - np) * v;
        let mut ej = 2.0 * x * v;
        let v2 = v * v;
        for j in 1..1000 {
            ej *= v2;
            let s1 = s + ej / f64::from(2 * j + 1);
            if s1 == s {
                return s1;
            }
            s = s1;
        }
        s
    } else {
        x * (x / np).ln() + np - x
    }
}

/// `P(K = k)` for `K ~ Bin(n, p)`, `0 < p < 1`.
pub fn dbinom(k: u64, n: u64, p: f64) -> f64 {
    if k > n {
        return 0.0;
    }
    let nf = n as f64;
    let q = 1.0 - p;
    if k == 0 {
        return (nf * (-p).ln_1p()).exp();
    }
    if k == n {
        return (nf * p.ln()).exp();
    }
    let kf = k as f64;
    let lc = stirlerr(n) - stirlerr(k) - stirlerr(n - k) - bd0(kf, nf * p) - bd0(nf - kf, nf * q);
    let lf = (2.0 * PI).ln() + kf.ln() + (-kf / nf).ln_1p();
    (lc - 0.5 * lf).exp()
}

/// `P(K ≥ k0)` for `K ~ Bin(n, p)`.
///
/// Sums whichever side of the mode does not contain `k0`'s complement, so a
/// tiny upper tail is summed directly rather than obtained as `1 − cdf`.
pub fn binom_sf(k0: i64, n: u64, p: f64) -> f64 {
    if k0 <= 0 {
        return 1.0;
    }
    let k0 = k0 as u64;
    if k0 > n {
        return 0.0;
    }
    let ratio = p / (1.0 - p);
    let mode = ((n + 1) as f64 * p).floor() as u64;
    if k0 > mode {
        let mut term = dbinom(k0, n, p);
        let mut terms = vec![term];
        let mut k = k0;
        while k < n {
            term *= (n - k) as f64 / (k + 1) as f64 * ratio;
            k += 1;
            terms.push(term);
            if term < 1e-18 * terms[0] {
                break;
            }
        }
        crate::distributions::neumaier_sum(terms.into_iter().rev())
    } else {
        let mut k = k0 - 1;
        let mut term = dbinom(k, n, p);
        let mut terms = vec![term];
        while k > 0 {
            term *= k as f64 / (n - k + 1) as f64 / ratio;
            k -= 1;
            terms.push(term);
            if term < 1e-18 * terms[0] {
                break;
            }
        }
        1.0 - crate::distributions::neumaier_sum(terms.into_iter().rev())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binomial_exact() {
        let c = [
            1.0, 10.0, 45.0, 120.0, 210.0, 252.0, 210.0, 120.0, 45.0, 10.0, 1.0,
        ];
        for (k, &ck) in c.iter().enumerate() {
            let exact = ck / 1024.0;
            assert!(
                (dbinom(k as u64, 10, 0.5) - exact).abs() <= 4e-15 * exact,
                "k={k}"
            );
        }
        assert!((binom_sf(7, 10, 0.5) - 176.0 / 1024.0).abs() < 1e-15);
        assert!((binom_sf(6, 10, 0.5) - 386.0 / 1024.0).abs() < 1e-15);
        assert_eq!(binom_sf(0, 10, 0.5), 1.0);
        assert_eq!(binom_sf(11, 10, 0.5), 0.0);
    }

    #[test]
    fn stirlerr_continuity_at_table_edge() {
        let lg = |n: f64| -> f64 {
            // log n! by summation; exact enough for n ≤ 20.
            (1..=n as u64).map(|i| (i as f64).ln()).sum()
        };
        for n in [16u64, 17, 20] {
            let nf = n as f64;
            let direct = lg(nf) - (nf + 0.5) * nf.ln() + nf - 0.5 * (2.0 * PI).ln();
            assert!((stirlerr(n) - direct).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn large_n_sums_to_one() {
        let n = 1_000_000u64;
        let upper = binom_sf(500_001, n, 0.5);
        let lower = 1.0 - binom_sf(500_000, n, 0.5);
        let mid = dbinom(500_000, n, 0.5);
        assert!((upper + lower + mid - 1.0).abs() < 1e-12);
        assert!((upper - lower).abs() < 1e-14);
    }
}
