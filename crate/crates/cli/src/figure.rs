use std::io::Write;

use bernstein_ld::bounds_sharp::{f2_factor, thm2_ratio_to_bernstein, thm5_halfwidth};
use bernstein_ld::chernoff::chernoff_infimum;
use bernstein_ld::oracles::{exact_tail_iid, mc_tail_tilted};
use bernstein_ld::specfun::mill;
use bernstein_ld::DiscreteDistribution;

use crate::args::{F2Args, FigureCmd, RatioBnArgs, RatiosArgs};
use crate::output::{csv_writer, format_num, parse_range};
use crate::{CliError, CliResult, EXIT_CLAIM, EXIT_OK};

pub(crate) fn run(cmd: &FigureCmd, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    match cmd {
        FigureCmd::F2(a) => f2(a, out),
        FigureCmd::RatioBn(a) => ratio_bn(a, out, err),
        FigureCmd::Ratios(a) => ratios(a, out),
    }
}

fn f2(a: &F2Args, out: &mut dyn Write) -> CliResult<i32> {
    let xs = parse_range(&a.x)?;
    let mut w = csv_writer(a.out.as_deref(), out)?;
    let mut header = vec!["x".to_string()];
    header.extend(a.r.iter().map(|r| format!("f2_r={r}")));
    w.write_record(&header)?;
    for &x in &xs {
        let mut row = vec![format_num(x)];
        for &r in &a.r {
            row.push(format_num(f2_factor(x, r)?));
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(EXIT_OK)
}

fn ratio_bn(a: &RatioBnArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let xs = parse_range(&a.x)?;
    let mut series: Vec<(u64, f64, String)> = Vec::new();
    for &n in &a.n {
        if n == 0 {
            return Err(CliError::Usage("n must be >= 1".into()));
        }
        if a.r.is_empty() {
            series.push((n, 1.0 / (n as f64).sqrt(), format!("ratio_n={n}")));
        } else {
            series.extend(a.r.iter().map(|&r| (n, r, format!("ratio_n={n}_r={r}"))));
        }
    }
    let mut w = csv_writer(a.out.as_deref(), out)?;
    let mut header = vec!["x".to_string()];
    header.extend(series.iter().map(|s| s.2.clone()));
    w.write_record(&header)?;
    let mut violations = 0usize;
    for &x in &xs {
        let mut row = vec![format_num(x)];
        for (n, r, name) in &series {
            let v = thm2_ratio_to_bernstein(x, *r, *n)?;
            if v > 1.0 {
                violations += 1;
                writeln!(err, "claim violated: {name} = {v} > 1 at x = {x}")?;
            }
            row.push(format_num(v));
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(if violations == 0 { EXIT_OK } else { EXIT_CLAIM })
}

fn ratios(a: &RatiosArgs, out: &mut dyn Write) -> CliResult<i32> {
    let xs = parse_range(&a.x)?;
    if !(a.eps > 0.0 && a.eps.is_finite()) {
        return Err(CliError::Usage(format!(
            "--eps must be positive, got {}",
            a.eps
        )));
    }
    let rad = DiscreteDistribution::rademacher();
    let mut header = vec!["x".to_string()];
    for n in &a.n {
        header.push(format!("ratio_n={n}"));
        header.push(format!("lo_n={n}"));
        header.push(format!("hi_n={n}"));
        if a.mc_samples > 0 {
            header.push(format!("mc_ratio_n={n}"));
        }
    }
    let mut w = csv_writer(a.out.as_deref(), out)?;
    w.write_record(&header)?;
    for &x in &xs {
        let mut row = vec![format_num(x)];
        for &n in &a.n {
            let sigma = (n as f64).sqrt();
            let r = a.eps / sigma;
            let t = x * sigma;
            let exact = exact_tail_iid(&rad, n, t, a.strict)?;
            let sol = chernoff_infimum(&rad, n, t)?;
            let denom = mill(x)? * sol.value;
            row.push(format_num(exact / denom));
            if 12.0 * x * r < 1.0 {
                let rel = thm5_halfwidth(x, r)? / mill(x)?;
                row.push(format_num(1.0 - rel));
                row.push(format_num(1.0 + rel));
            } else {
                row.push("NA".into());
                row.push("NA".into());
            }
            if a.mc_samples > 0 {
                let lambda = if sol.boundary { 0.0 } else { sol.lambda_bar };
                let est = mc_tail_tilted(&rad, n, t, lambda, a.strict, a.mc_samples, a.seed)?;
                row.push(format_num(est.estimate / denom));
            }
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(EXIT_OK)
}
