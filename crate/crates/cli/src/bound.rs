use std::io::Write;

use bernstein_ld::bounds_classical::{
    bennett_poisson_bound, bernstein_bound, bernstein_weak_bound, hoeffding_bound,
};
use bernstein_ld::bounds_sharp::{
    bn_bound, cor4_upper, thm1_upper, thm2_upper, thm3_lower, thm5_interval,
};
use bernstein_ld::BoundResult;

use crate::args::{BoundArgs, BoundKind};
use crate::output::{format_num, format_opt};
use crate::{CliError, CliResult, EXIT_OK, EXIT_OUT_OF_RANGE};

fn need<T: Copy>(v: Option<T>, flag: &str, kind: BoundKind) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for {kind:?}")))
}

pub(crate) fn run(a: &BoundArgs, out: &mut dyn Write) -> CliResult<i32> {
    let mut w = csv::Writer::from_writer(out);
    let kind = a.kind;
    if kind == BoundKind::Thm5 {
        let x = need(a.x, "x", kind)?;
        let c = match a.chernoff {
            Some(c) => c,
            None => bernstein_bound(x, a.r)?.value,
        };
        let iv = thm5_interval(x, a.r, c)?;
        let note = if iv.valid {
            String::new()
        } else {
            format!("xr = {} is not below 1/12", x * a.r)
        };
        w.write_record(["lo", "hi", "valid", "chernoff_value", "range_note"])?;
        w.write_record([
            format_num(iv.lo),
            format_num(iv.hi),
            iv.valid.to_string(),
            format_num(iv.chernoff_value),
            note,
        ])?;
        w.flush()?;
        return Ok(if iv.valid { EXIT_OK } else { EXIT_OUT_OF_RANGE });
    }
    let res: BoundResult = match kind {
        BoundKind::Bernstein => bernstein_bound(need(a.x, "x", kind)?, a.r)?,
        BoundKind::BernsteinWeak => bernstein_weak_bound(need(a.x, "x", kind)?, a.r)?,
        BoundKind::Hoeffding => hoeffding_bound(
            need(a.x, "x", kind)?,
            need(a.sigma, "sigma", kind)?,
            need(a.n, "n", kind)?,
        )?,
        BoundKind::Bn => bn_bound(need(a.x, "x", kind)?, a.r, need(a.n, "n", kind)?)?,
        BoundKind::Thm1 => thm1_upper(need(a.x, "x", kind)?, a.r, a.delta.unwrap_or(1.0))?,
        BoundKind::Thm2 => thm2_upper(need(a.x, "x", kind)?, a.r, need(a.n, "n", kind)?)?,
        BoundKind::Cor4 => cor4_upper(need(a.x, "x", kind)?, a.r, a.alpha)?,
        BoundKind::Thm3Lower => thm3_lower(need(a.x, "x", kind)?, a.r, a.alpha)?,
        BoundKind::BennettPoisson => bennett_poisson_bound(
            need(a.y, "y", kind)?,
            need(a.delta, "delta", kind)?,
            need(a.sigma, "sigma", kind)?,
        )?,
        BoundKind::Thm5 => unreachable!("handled above"),
    };
    w.write_record(["value", "valid", "transformed_x", "range_note"])?;
    w.write_record([
        format_num(res.value),
        res.valid.to_string(),
        format_opt(res.transformed_x),
        res.range_note.clone(),
    ])?;
    w.flush()?;
    Ok(if res.valid {
        EXIT_OK
    } else {
        EXIT_OUT_OF_RANGE
    })
}
