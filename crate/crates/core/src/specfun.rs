//! Scalar special functions shared by every bound.
//!
//! The normal tail is built on a scaled complementary error function
//! `erfcx(z) = e^{z²} erfc(z)` (W. J. Cody's rational approximations), so that
//! the Mills-ratio factor `M(x) = (1 − Φ(x)) e^{x²/2} = ½ erfcx(x/√2)` never
//! passes through an underflowing `1 − Φ(x)`.

use crate::error::{check_nonneg, domain, Result};

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

/// A nonnegative real that may be `+∞`.
///
/// `+∞` is a legitimate state (for instance `R(t)` for `t ≥ 1/3`), not an
/// overflow artefact.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ExtendedNonnegReal(f64);

impl ExtendedNonnegReal {
    pub const INFINITY: Self = ExtendedNonnegReal(f64::INFINITY);

    pub fn new(value: f64) -> Result<Self> {
        if value >= 0.0 {
            Ok(ExtendedNonnegReal(value))
        } else {
            Err(domain(format!(
                "extended nonnegative real must be >= 0, got {value}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn finite(self) -> Option<f64> {
        if self.is_infinite() {
            None
        } else {
            Some(self.0)
        }
    }
}

// Cody, "Rational Chebyshev approximations for the error function" (1969).
#[allow(clippy::excessive_precision)]
const ERF_A: [f64; 5] = [
    3.161_123_743_870_565_6,
    113.864_154_151_050_16,
    377.485_237_685_302,
    3_209.377_589_138_469_4,
    0.185_777_706_184_603_15,
];
#[allow(clippy::excessive_precision)]
const ERF_B: [f64; 4] = [
    23.601_290_952_344_12,
    244.024_637_934_444_17,
    1_282.616_526_077_372_3,
    2_844.236_833_439_170_6,
];
#[allow(clippy::excessive_precision)]
const ERFC_C: [f64; 9] = [
    0.564_188_496_988_670_1,
    8.883_149_794_388_376,
    66.119_190_637_141_63,
    298.635_138_197_400_13,
    881.952_221_241_769_1,
    1_712.047_612_634_070_6,
    2_051.078_377_826_071_5,
    1_230.339_354_797_997_2,
    2.153_115_354_744_038_5e-8,
];
#[allow(clippy::excessive_precision)]
const ERFC_D: [f64; 8] = [
    15.744_926_110_709_835,
    117.693_950_891_312_5,
    537.181_101_862_009_9,
    1_621.389_574_566_690_2,
    3_290.799_235_733_459_6,
    4_362.619_090_143_247,
    3_439.367_674_143_721_6,
    1_230.339_354_803_749_4,
];
#[allow(clippy::excessive_precision)]
const ERFC_P: [f64; 6] = [
    0.305_326_634_961_232_34,
    0.360_344_899_949_804_4,
    0.125_781_726_111_229_25,
    0.016_083_785_148_742_277,
    6.587_491_615_298_378e-4,
    0.016_315_387_137_302_098,
];
#[allow(clippy::excessive_precision)]
const ERFC_Q: [f64; 5] = [
    2.568_520_192_289_822_4,
    1.872_952_849_923_460_5,
    0.527_905_102_951_428_4,
    0.060_518_341_312_441_32,
    0.002_335_204_976_268_691_8,
];

const ERF_SMALL: f64 = 0.46875;

/// `erf(z)/z` for `|z| ≤ 0.46875`, as a rational function of `z²`.
fn erf_over_z(z2: f64) -> f64 {
    let a = &ERF_A;
    let b = &ERF_B;
    ((((a[4] * z2 + a[0]) * z2 + a[1]) * z2 + a[2]) * z2 + a[3])
        / ((((z2 + b[0]) * z2 + b[1]) * z2 + b[2]) * z2 + b[3])
}

/// Scaled complementary error function `e^{z²} erfc(z)` for `z ≥ 0`.
fn erfcx_nonneg(z: f64) -> f64 {
    debug_assert!(z >= 0.0);
    if z <= ERF_SMALL {
        let z2 = z * z;
        z2.exp() * (1.0 - z * erf_over_z(z2))
    } else if z <= 4.0 {
        let c = &ERFC_C;
        let d = &ERFC_D;
        let mut num = c[8] * z;
        let mut den = z;
        for i in 0..7 {
            num = (num + c[i]) * z;
            den = (den + d[i]) * z;
        }
        (num + c[7]) / (den + d[7])
    } else {
        let w = 1.0 / (z * z);
        let p = &ERFC_P;
        let q = &ERFC_Q;
        let mut num = p[5] * w;
        let mut den = w;
        for i in 0..4 {
            num = (num + p[i]) * w;
            den = (den + q[i]) * w;
        }
        let r = w * (num + p[4]) / (den + q[4]);
        (FRAC_1_SQRT_PI - r) / z
    }
}

fn sf_nonneg(x: f64) -> f64 {
    let z = x * std::f64::consts::FRAC_1_SQRT_2;
    if z <= ERF_SMALL {
        0.5 * (1.0 - z * erf_over_z(z * z))
    } else {
        // x² split exactly into hi + lo so its rounding does not leak into
        // the exponent. The O(1) factors go first; the product may be subnormal.
        let hi = x * x;
        let lo = x.mul_add(x, -hi);
        let scaled = 0.5 * erfcx_nonneg(z) * (-0.5 * lo).exp();
        scaled * (-0.5 * hi).exp()
    }
}

/// Standard normal survival function `1 − Φ(x)`.
pub fn std_normal_sf(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain(format!(
            "std_normal_sf needs a finite argument, got {x}"
        )));
    }
    Ok(if x >= 0.0 {
        sf_nonneg(x)
    } else {
        1.0 - sf_nonneg(-x)
    })
}

/// Standard normal distribution function `Φ(x)`.
pub fn std_normal_cdf(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain(format!(
            "std_normal_cdf needs a finite argument, got {x}"
        )));
    }
    Ok(if x >= 0.0 {
        1.0 - sf_nonneg(x)
    } else {
        sf_nonneg(-x)
    })
}

/// Mills-ratio factor `M(x) = (1 − Φ(x)) e^{x²/2}` for `x ≥ 0`.
///
/// Evaluated as `½ erfcx(x/√2)`, which stays finite and accurate for any
/// `x` up to the largest finite double.
pub fn mill(x: f64) -> Result<f64> {
    check_nonneg("mill argument", x)?;
    Ok(0.5 * erfcx_nonneg(x * std::f64::consts::FRAC_1_SQRT_2))
}

/// The rational factor
///
/// ```text
/// R(t) = (1 − t + 6t²)³ / ((1 − 3t)^{3/2} (1 − t)⁷),   0 ≤ t < 1/3,
/// ```
///
/// and `+∞` for `t ≥ 1/3`.
pub fn r_factor(t: f64) -> Result<ExtendedNonnegReal> {
    if t.is_nan() || t < 0.0 {
        return Err(domain(format!("r_factor needs t >= 0, got {t}")));
    }
    if 3.0 * t >= 1.0 {
        return Ok(ExtendedNonnegReal::INFINITY);
    }
    let num = (1.0 - t + 6.0 * t * t).powi(3);
    let den = (1.0 - 3.0 * t).powf(1.5) * (1.0 - t).powi(7);
    Ok(ExtendedNonnegReal(num / den))
}

/// `ψ(t) = t − log(1 + t)`.
pub fn psi(t: f64) -> Result<f64> {
    check_nonneg("psi argument", t)?;
    if t < 0.25 {
        // Alternating series Σ_{k≥2} (−t)^k / k; converges fast below 1/4.
        let mut term = t * t;
        let mut acc = 0.0;
        for k in 2..64 {
            let add = term / k as f64;
            acc += add;
            if add.abs() <= 1e-18 * acc {
                break;
            }
            term *= -t;
        }
        Ok(acc)
    } else {
        Ok(t - t.ln_1p())
    }
}
