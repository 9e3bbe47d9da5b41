//! Parameter sweeps: range parsing, cartesian expansion and ordered
//! concurrent evaluation.

use rug::Float;

use crate::error::{Error, Result};
use crate::par;
use crate::precision::{PrecisionContext, Scalar};
use crate::registry::{Args, IdentityInfo, ParamArg, ParamKind};
use crate::report::{IdentityReport, Status};

/// Expands one axis: `start:stop[:step]` (stop inclusive, integer step
/// defaults to 1) or a comma list. An empty expansion is an error.
pub fn parse_axis(info: &IdentityInfo, name: &str, raw: &str, ctx: &PrecisionContext) -> Result<Vec<ParamArg>> {
    let spec = info
        .param(name)
        .ok_or_else(|| Error::InvalidParam(format!("`{}` takes no parameter --{name}", info.id)))?;
    let values = if raw.contains(':') {
        let parts: Vec<&str> = raw.split(':').collect();
        if parts.len() > 3 || parts.iter().any(|p| p.trim().is_empty()) {
            return Err(Error::Parse(format!("--{name}: range must be start:stop[:step], got `{raw}`")));
        }
        match spec.kind {
            ParamKind::Int => int_range(name, &parts)?,
            ParamKind::Real => real_range(name, &parts, ctx)?,
            ParamKind::Text => return Err(Error::Parse(format!("--{name}: ranges need a numeric parameter"))),
        }
    } else {
        raw.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| info.parse_value(name, s, ctx))
            .collect::<Result<Vec<_>>>()?
    };
    if values.is_empty() {
        return Err(Error::InvalidParam(format!("--{name}: range `{raw}` is empty")));
    }
    Ok(values)
}

fn int_range(name: &str, parts: &[&str]) -> Result<Vec<ParamArg>> {
    let parse = |s: &str| {
        s.trim().parse::<i64>().map_err(|_| Error::Parse(format!("--{name}: `{s}` is not an integer")))
    };
    let start = parse(parts[0])?;
    let stop = parse(parts[1])?;
    let step = if parts.len() == 3 { parse(parts[2])? } else { 1 };
    if step <= 0 {
        return Err(Error::InvalidParam(format!("--{name}: step must be positive")));
    }
    Ok((start..=stop).step_by(step as usize).map(ParamArg::Int).collect())
}

fn real_range(name: &str, parts: &[&str], ctx: &PrecisionContext) -> Result<Vec<ParamArg>> {
    if parts.len() != 3 {
        return Err(Error::Parse(format!("--{name}: real ranges need an explicit step")));
    }
    let start = ctx.parse(parts[0])?;
    let stop = ctx.parse(parts[1])?;
    let step = ctx.parse(parts[2])?;
    if step <= 0 || !step.is_finite() {
        return Err(Error::InvalidParam(format!("--{name}: step must be positive")));
    }
    // Decimal steps are inexact in binary; allow the stop value through.
    let slack = Float::with_val(ctx.prec(), &step * ctx.pow10(-(ctx.digits() as i32) / 2));
    let limit = Float::with_val(ctx.prec(), &stop + &slack);
    let mut out = Vec::new();
    let mut k = 0u32;
    loop {
        let v: Scalar = Float::with_val(ctx.prec(), &step * k) + &start;
        if v > limit {
            break;
        }
        out.push(ParamArg::Real(v));
        k += 1;
        if k as u64 > ctx.max_terms() {
            return Err(Error::InvalidParam(format!("--{name}: range has too many points")));
        }
    }
    Ok(out)
}

/// Cartesian product of the given axes in schema order (first schema
/// parameter varies slowest); unswept parameters take their defaults.
pub fn expand(info: &IdentityInfo, axes: &[(String, String)], ctx: &PrecisionContext) -> Result<Vec<Args>> {
    let mut points = vec![Args::new()];
    for (name, _) in axes {
        if info.param(name).is_none() {
            return Err(Error::InvalidParam(format!("`{}` takes no parameter --{name}", info.id)));
        }
    }
    for spec in info.params {
        let Some((_, raw)) = axes.iter().find(|(n, _)| n == spec.name) else {
            continue;
        };
        let values = parse_axis(info, spec.name, raw, ctx)?;
        points = points
            .into_iter()
            .flat_map(|p| values.iter().map(move |v| p.clone().with(spec.name, v.clone())))
            .collect();
    }
    points.into_iter().map(|p| info.complete(p, ctx)).collect()
}

/// Aggregate over a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSummary {
    pub count: usize,
    pub failures: usize,
    pub max_residual: Scalar,
    pub status: Status,
}

impl SweepSummary {
    pub fn of(reports: &[IdentityReport], ctx: &PrecisionContext) -> Self {
        let mut max_residual = ctx.zero();
        let mut failures = 0;
        let mut status = Status::Pass;
        for r in reports {
            let res = r.abs_residual();
            if res.is_finite() && res > max_residual {
                max_residual = res;
            }
            if !r.passed() {
                failures += 1;
            }
            status = worse(status, r.status);
        }
        Self { count: reports.len(), failures, max_residual, status }
    }

    pub fn footer(&self) -> String {
        format!(
            "sweep: {} points, {} not passing, max |residual| = {}",
            self.count,
            self.failures,
            crate::report::short(&self.max_residual)
        )
    }
}

/// Exit-code precedence across many reports: error > fail > unconverged > pass.
pub fn worse(a: Status, b: Status) -> Status {
    let rank = |s: Status| match s {
        Status::Pass => 0,
        Status::Unconverged => 1,
        Status::Fail => 2,
        Status::Error => 3,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

/// Evaluates every point; the result is in cartesian order regardless of
/// completion order.
pub fn run(info: &IdentityInfo, axes: &[(String, String)], ctx: &PrecisionContext) -> Result<Vec<IdentityReport>> {
    let points = expand(info, axes, ctx)?;
    Ok(par::map(&points, |p| info.evaluate(p, ctx)))
}
