//! Normal tail and Mills factor against a frozen high-precision table
//! (`oracle/normal_tail.csv`, regenerated by `oracle/normal_tail.py`).

use bernstein_ld::specfun::{mill, std_normal_cdf, std_normal_sf};

const TABLE: &str = include_str!("oracle/normal_tail.csv");

struct Row {
    x: f64,
    sf: f64,
    mill: Option<f64>,
}

fn rows() -> Vec<Row> {
    TABLE
        .lines()
        .skip(1)
        .map(|line| {
            let cells: Vec<&str> = line.split(',').collect();
            Row {
                x: cells[0].parse().unwrap(),
                sf: cells[1].parse().unwrap(),
                mill: cells[2].parse().ok(),
            }
        })
        .collect()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn sf_relative_error_on_normal_range() {
    for row in rows() {
        let got = std_normal_sf(row.x).unwrap();
        if row.sf >= f64::MIN_POSITIVE {
            assert!(
                rel(got, row.sf) <= 1e-13,
                "x={}: {got:e} vs {:e}",
                row.x,
                row.sf
            );
        } else {
            // Subnormal results carry fewer than 53 bits; allow a few of their ulps.
            let ulp = f64::from_bits(1);
            assert!(
                (got - row.sf).abs() <= 4.0 * ulp,
                "x={}: {got:e} vs {:e}",
                row.x,
                row.sf
            );
        }
    }
}

#[test]
fn sf_known_values() {
    assert_eq!(std_normal_sf(0.0).unwrap(), 0.5);
    assert!((std_normal_sf(1.0).unwrap() - 0.158_655_253_931_457_05).abs() < 1e-16);
    let a = std_normal_sf(-1.0).unwrap();
    let b = 1.0 - std_normal_sf(1.0).unwrap();
    assert!((a - b).abs() <= f64::EPSILON * a);
}

#[test]
fn cdf_complements_sf() {
    for row in rows() {
        let s = std_normal_sf(row.x).unwrap() + std_normal_sf(-row.x).unwrap();
        assert!((s - 1.0).abs() <= 1e-14, "x={}", row.x);
        let c = std_normal_cdf(-row.x).unwrap();
        if row.sf >= f64::MIN_POSITIVE {
            assert!(rel(c, row.sf) <= 1e-13, "x={}", row.x);
        }
    }
}

#[test]
fn mill_relative_error() {
    for row in rows() {
        if let Some(m) = row.mill {
            let got = mill(row.x).unwrap();
            assert!(rel(got, m) <= 1e-13, "x={}: {got:e} vs {m:e}", row.x);
        }
    }
    assert!((mill(1.0).unwrap() - 0.261_578).abs() < 1e-6);
}

#[test]
fn mill_envelope_and_monotone_on_grid() {
    let c_lo = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    let c_hi = 1.0 / std::f64::consts::PI.sqrt();
    let mut prev = f64::INFINITY;
    for k in 0..=4000 {
        let x = k as f64 * 0.01;
        let m = mill(x).unwrap();
        assert!(c_lo / (1.0 + x) <= m && m <= c_hi / (1.0 + x), "x={x}");
        assert!(m < prev, "not decreasing at x={x}");
        prev = m;
    }
}
