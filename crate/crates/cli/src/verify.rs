use std::io::Write;

use bernstein_ld::bounds_classical::bernstein_bound;
use bernstein_ld::bounds_sharp::{cor4_upper, thm1_upper, thm2_upper, thm3_lower, thm5_interval};
use bernstein_ld::chernoff::{chernoff_infimum, verify_lemmas};
use bernstein_ld::distributions::{min_bernstein_eps, DEFAULT_K_MAX};
use bernstein_ld::oracles::{exact_tail_iid, mc_tail_importance, mc_tail_tilted};
use bernstein_ld::DiscreteDistribution;

use crate::args::{EnvelopesArgs, LemmasArgs, McArgs, VerifyCmd};
use crate::output::format_num;
use crate::{CliError, CliResult, EXIT_CLAIM, EXIT_OK};

/// One `lhs ≤ rhs` (or `<`) check of a verification suite.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub check: String,
    pub param: String,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

impl CheckRow {
    fn le(check: impl Into<String>, param: String, lhs: f64, rhs: f64) -> Self {
        CheckRow {
            check: check.into(),
            param,
            lhs,
            rhs,
            pass: lhs <= rhs,
        }
    }
}

/// A built-in law by name (`rademacher`, `asym-2-1`) or a `value,prob` file.
pub fn load_dist(spec: &str) -> CliResult<DiscreteDistribution> {
    if let Some(d) = DiscreteDistribution::builtin(spec) {
        return Ok(d);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| {
        CliError::Usage(format!(
            "--dist {spec:?} is neither a built-in law nor a readable file: {e}"
        ))
    })?;
    Ok(DiscreteDistribution::parse_text(&text)?)
}

pub(crate) fn run(cmd: &VerifyCmd, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let rows = match cmd {
        VerifyCmd::Lemmas(a) => lemmas(a)?,
        VerifyCmd::Envelopes(a) => envelopes(a)?,
        VerifyCmd::Mc(a) => mc(a, err)?,
    };
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["check", "param", "lhs", "rhs", "pass"])?;
    for r in &rows {
        w.write_record([
            r.check.clone(),
            r.param.clone(),
            format_num(r.lhs),
            format_num(r.rhs),
            if r.pass { "PASS" } else { "FAIL" }.to_string(),
        ])?;
    }
    w.flush()?;
    let failed = rows.iter().filter(|r| !r.pass).count();
    writeln!(err, "{} checks, {} failed", rows.len(), failed)?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_CLAIM })
}

pub(crate) fn lemmas(a: &LemmasArgs) -> CliResult<Vec<CheckRow>> {
    let dist = load_dist(&a.dist)?;
    let grid = if a.grid.is_empty() {
        let eps = min_bernstein_eps(&dist, DEFAULT_K_MAX)?;
        (0..10).map(|k| k as f64 * 0.1 / eps).collect()
    } else {
        a.grid.clone()
    };
    let report = verify_lemmas(&dist, a.n, &grid, a.clt)?;
    Ok(report
        .checks
        .iter()
        .map(|c| CheckRow {
            check: format!("{}: {}", c.lemma.name(), c.check),
            param: format!("lambda={}", c.lambda),
            lhs: c.lhs,
            rhs: c.rhs,
            pass: c.pass,
        })
        .collect())
}

pub(crate) fn envelopes(a: &EnvelopesArgs) -> CliResult<Vec<CheckRow>> {
    let dist = load_dist(&a.dist)?;
    if a.n == 0 || a.points == 0 {
        return Err(CliError::Usage("--n and --points must be >= 1".into()));
    }
    let eps = match a.eps {
        Some(e) => e,
        None => min_bernstein_eps(&dist, DEFAULT_K_MAX)?,
    };
    let sigma = (a.n as f64 * dist.variance()).sqrt();
    let r = eps / sigma;
    let x_max = a.alpha / r;
    let mut rows = Vec::new();
    for j in 1..=a.points {
        let x = j as f64 * x_max / a.points as f64;
        let t = x * sigma;
        let param = format!("x={x}");
        let exact = exact_tail_iid(&dist, a.n, t, true)?;
        let uppers = [
            ("bernstein >= exact", bernstein_bound(x, r)?),
            ("thm1 >= exact", thm1_upper(x, r, a.delta)?),
            ("thm2 >= exact", thm2_upper(x, r, a.n)?),
            ("cor4 >= exact", cor4_upper(x, r, a.alpha)?),
        ];
        for (name, b) in uppers {
            if b.valid {
                rows.push(CheckRow::le(name, param.clone(), exact, b.value));
            }
        }
        let lower = thm3_lower(x, r, a.alpha)?;
        if lower.valid {
            rows.push(CheckRow::le(
                "thm3-lower <= exact",
                param.clone(),
                lower.value,
                exact,
            ));
        }
        let iv = thm5_interval(x, r, chernoff_infimum(&dist, a.n, t)?.value)?;
        if iv.valid {
            rows.push(CheckRow::le(
                "thm5 lo <= exact",
                param.clone(),
                iv.lo,
                exact,
            ));
            rows.push(CheckRow::le("exact <= thm5 hi", param, exact, iv.hi));
        }
    }
    Ok(rows)
}

pub(crate) fn mc(a: &McArgs, err: &mut dyn Write) -> CliResult<Vec<CheckRow>> {
    let dist = load_dist(&a.dist)?;
    let exact = exact_tail_iid(&dist, a.n, a.threshold, true)?;
    let est = mc_tail_importance(&dist, a.n, a.threshold, a.samples, a.seed)?;
    writeln!(
        err,
        "estimate {} (se {}, lambda {}, seed {}), exact {}",
        est.estimate, est.std_error, est.lambda_used, est.seed, exact
    )?;
    let param = format!("n={},t={},samples={}", a.n, a.threshold, a.samples);
    let diff = (est.estimate - exact).abs();
    let mut rows = vec![CheckRow {
        check: "|estimate - exact| < 4 SE".into(),
        param: param.clone(),
        lhs: diff,
        rhs: 4.0 * est.std_error,
        pass: diff < 4.0 * est.std_error,
    }];
    if let Some(ratio) = a.min_se_ratio {
        let plain = mc_tail_tilted(&dist, a.n, a.threshold, 0.0, true, a.samples, a.seed)?;
        writeln!(
            err,
            "plain estimate {} (se {})",
            plain.estimate, plain.std_error
        )?;
        rows.push(CheckRow::le(
            format!("{ratio} x tilted SE <= plain SE"),
            param,
            ratio * est.std_error,
            plain.std_error,
        ));
    }
    Ok(rows)
}
