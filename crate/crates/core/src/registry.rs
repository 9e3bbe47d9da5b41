//! Identity registry: every verifiable identity by id, with its anchor label,
//! parameter schema and evaluator.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::elliptic::{elliptic_bundle, modular_angle_series, quarter_modular_angle};
use crate::error::{Error, Result};
use crate::finite::{self, AngleParams, ReciprocalParams};
use crate::grid::{closed_form_report, dirichlet_identity_residual, GridSpec};
use crate::lemmas::{self, QUAD_TOL_DIGITS};
use crate::number_theory::{alternating_sum_check, legendre3_partial_sum, parity_sign};
use crate::precision::{PrecisionContext, Scalar};
use crate::report::{IdentityReport, Params, Status};
use crate::series::{self, GlaisherMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    Int,
    Real,
    Text,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    pub default: Option<&'static str>,
    pub doc: &'static str,
}

const fn int(name: &'static str, doc: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Int, default: None, doc }
}

const fn real(name: &'static str, doc: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Real, default: None, doc }
}

/// A bound parameter value.
#[derive(Clone, Debug, PartialEq)]
pub enum ParamArg {
    Int(i64),
    Real(Scalar),
    Text(String),
}

/// Parameter values bound against an identity's schema.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Args(BTreeMap<String, ParamArg>);

impl Args {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: ParamArg) -> Self {
        self.0.insert(name.to_string(), value);
        self
    }

    fn get(&self, name: &str) -> Result<&ParamArg> {
        self.0.get(name).ok_or_else(|| Error::InvalidParam(format!("missing parameter --{name}")))
    }

    pub fn int(&self, name: &str) -> Result<i64> {
        match self.get(name)? {
            ParamArg::Int(v) => Ok(*v),
            other => Err(Error::InvalidParam(format!("--{name} must be an integer, got {other:?}"))),
        }
    }

    /// Non-negative integer parameter.
    pub fn count(&self, name: &str) -> Result<u32> {
        let v = self.int(name)?;
        u32::try_from(v).map_err(|_| Error::InvalidParam(format!("--{name} must be a non-negative integer, got {v}")))
    }

    pub fn real(&self, name: &str) -> Result<Scalar> {
        match self.get(name)? {
            ParamArg::Real(v) => Ok(v.clone()),
            ParamArg::Int(v) => Err(Error::InvalidParam(format!("--{name} must be real, got integer {v}"))),
            ParamArg::Text(t) => Err(Error::InvalidParam(format!("--{name} must be real, got `{t}`"))),
        }
    }

    pub fn text(&self, name: &str) -> Result<&str> {
        match self.get(name)? {
            ParamArg::Text(t) => Ok(t),
            other => Err(Error::InvalidParam(format!("--{name} must be text, got {other:?}"))),
        }
    }

    /// Report parameter record in schema order.
    pub fn params(&self, schema: &[ParamSpec]) -> Params {
        let mut p = Params::new();
        for spec in schema {
            p = match self.0.get(spec.name) {
                Some(ParamArg::Int(v)) => p.int(spec.name, *v),
                Some(ParamArg::Real(v)) => p.real(spec.name, v),
                Some(ParamArg::Text(t)) => p.label(spec.name, t),
                None => p,
            };
        }
        p
    }
}

type Evaluator = fn(&Args, &PrecisionContext) -> Result<IdentityReport>;

/// One registered identity.
#[derive(Clone, Copy)]
pub struct IdentityInfo {
    pub id: &'static str,
    pub anchor: &'static str,
    pub summary: &'static str,
    pub params: &'static [ParamSpec],
    evaluate: Evaluator,
}

impl std::fmt::Debug for IdentityInfo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityInfo").field("id", &self.id).field("anchor", &self.anchor).finish()
    }
}

impl IdentityInfo {
    pub fn param(&self, name: &str) -> Option<&ParamSpec> {
        self.params.iter().find(|p| p.name == name)
    }

    /// Parses one raw value according to the parameter's kind.
    pub fn parse_value(&self, name: &str, raw: &str, ctx: &PrecisionContext) -> Result<ParamArg> {
        let spec = self
            .param(name)
            .ok_or_else(|| Error::InvalidParam(format!("`{}` takes no parameter --{name}", self.id)))?;
        match spec.kind {
            ParamKind::Int => raw
                .trim()
                .parse::<i64>()
                .map(ParamArg::Int)
                .map_err(|_| Error::Parse(format!("--{name} expects an integer, got `{raw}`"))),
            ParamKind::Real => ctx.parse(raw).map(ParamArg::Real),
            ParamKind::Text => Ok(ParamArg::Text(raw.trim().to_string())),
        }
    }

    /// Binds raw `(name, value)` pairs, filling defaults; every schema
    /// parameter must end up bound.
    pub fn bind(&self, raw: &[(String, String)], ctx: &PrecisionContext) -> Result<Args> {
        let mut args = Args::new();
        for (name, value) in raw {
            let parsed = self.parse_value(name, value, ctx)?;
            args.0.insert(name.clone(), parsed);
        }
        self.complete(args, ctx)
    }

    /// Fills defaults into already-typed arguments and checks completeness.
    pub fn complete(&self, mut args: Args, ctx: &PrecisionContext) -> Result<Args> {
        for name in args.0.keys() {
            if self.param(name).is_none() {
                return Err(Error::InvalidParam(format!("`{}` takes no parameter --{name}", self.id)));
            }
        }
        for spec in self.params {
            if !args.0.contains_key(spec.name) {
                match spec.default {
                    Some(d) => {
                        let v = self.parse_value(spec.name, d, ctx)?;
                        args.0.insert(spec.name.to_string(), v);
                    }
                    None => return Err(Error::InvalidParam(format!("`{}` needs --{}", self.id, spec.name))),
                }
            }
        }
        Ok(args)
    }

    /// Evaluates the identity; precondition violations come back as reports
    /// with status `error`.
    pub fn evaluate(&self, args: &Args, ctx: &PrecisionContext) -> IdentityReport {
        let start = Instant::now();
        let mut report = match (self.evaluate)(args, ctx) {
            Ok(r) => r,
            Err(e) => IdentityReport::errored(self.id, self.anchor, args.params(self.params), &e, ctx),
        };
        report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        report
    }
}

const N: ParamSpec = int("n", "first order");
const M: ParamSpec = int("m", "second order");
const ALPHA: ParamSpec = real("alpha", "scale parameter, > 0");
const THETA: ParamSpec = real("theta", "angle in (0, pi/2)");
const PHI: ParamSpec = real("phi", "angle in (0, pi/2)");
const J: ParamSpec = int("j", "index, |j| <= n");
const Z: ParamSpec = real("z", "evaluation point");

const RECIPROCAL: &[ParamSpec] = &[N, M, ALPHA];
const TWO_ANGLE: &[ParamSpec] = &[N, M, ALPHA, THETA, PHI];
const INDEXED: &[ParamSpec] = &[N, M, J, ALPHA];

fn reciprocal(a: &Args) -> Result<ReciprocalParams> {
    ReciprocalParams::new(a.count("n")?, a.count("m")?, a.real("alpha")?)
}

fn reciprocal_odd(a: &Args) -> Result<ReciprocalParams> {
    ReciprocalParams::odd(a.count("n")?, a.count("m")?, a.real("alpha")?)
}

fn angles(a: &Args, ctx: &PrecisionContext) -> Result<AngleParams> {
    AngleParams::new(a.real("theta")?, a.real("phi")?, ctx)
}

fn pair_report(id: &str, anchor: &str, params: Params, pair: (Scalar, Scalar), ctx: &PrecisionContext) -> IdentityReport {
    IdentityReport::evaluated(id, anchor, params, pair.0, pair.1, ctx)
}

fn exact_report(id: &str, anchor: &str, params: Params, got: i64, expected: i64, ctx: &PrecisionContext) -> IdentityReport {
    let mut r = IdentityReport::evaluated(id, anchor, params, ctx.real(got), ctx.real(expected), ctx);
    r.status = if got == expected { Status::Pass } else { Status::Fail };
    r
}

fn series_report(id: &str, anchor: &str, params: Params, out: &crate::SeriesOutcome, target: Scalar, ctx: &PrecisionContext) -> IdentityReport {
    IdentityReport::evaluated(id, anchor, params, ctx.real(&out.value), target, ctx).with_series([out])
}

macro_rules! entry {
    ($id:expr, $anchor:expr, $summary:expr, $params:expr, $eval:expr) => {
        IdentityInfo { id: $id, anchor: $anchor, summary: $summary, params: $params, evaluate: $eval }
    };
}

static REGISTRY: &[IdentityInfo] = &[
    entry!("th1", "Theorem 1", "cosine-kernel reciprocity, sum = pi/4", RECIPROCAL, |a, c| Ok(finite::th1_residual(&reciprocal(a)?, c))),
    entry!("th1-chi4", "Theorem 1", "cosine-kernel reciprocity in chi_4 form", RECIPROCAL, |a, c| Ok(finite::th1_chi4_form_residual(&reciprocal(a)?, c))),
    entry!("th2", "Theorem 2", "Legendre-symbol reciprocity for odd orders, sum = -pi/6", RECIPROCAL, |a, c| Ok(finite::th2_residual(&reciprocal_odd(a)?, c))),
    entry!("th3", "Theorem 3", "two-angle reciprocity, sum = pi/2 - theta - phi", TWO_ANGLE, |a, c| Ok(finite::th3_residual(&reciprocal_odd(a)?, &angles(a, c)?, c))),
    entry!("cor1", "Corollary 1", "self-dual cosine-kernel half sum = pi/8", &[N], |a, c| Ok(finite::cor1_residual(a.count("n")?, c))),
    entry!("cor2", "Corollary 2", "self-dual Legendre half sum = -pi/12, odd n", &[N], |a, c| {
        let n = a.count("n")?;
        finite::check_odd("n", n)?;
        Ok(finite::cor2_residual(n, c))
    }),
    entry!("cor3", "Corollary 3", "one-angle sum = pi/4 - theta, odd n", &[N, THETA], |a, c| Ok(finite::cor3_sum(a.count("n")?, &a.real("theta")?, c))),
    entry!("modular-angle", "Jacobi modular-angle series", "alternating arctan series in the nome = arcsin(k)/4", &[real("k", "elliptic modulus in (0, 1)")], |a, c| {
        let k = a.real("k")?;
        let bundle = elliptic_bundle(&k, c)?;
        let out = modular_angle_series(&bundle, c);
        Ok(series_report("modular-angle", "Jacobi modular-angle series", Params::new().real("k", &k), &out, quarter_modular_angle(&k, c), c))
    }),
    entry!("glaisher", "Glaisher series", "sum arctan(2/(2n+1)^2) = pi/2", &[ParamSpec { name: "mode", kind: ParamKind::Text, default: Some("telescoped"), doc: "telescoped | direct" }], |a, c| {
        let mode = match a.text("mode")? {
            "telescoped" => GlaisherMode::Telescoped,
            "direct" => GlaisherMode::Direct,
            other => return Err(Error::InvalidParam(format!("--mode must be telescoped or direct, got `{other}`"))),
        };
        let out = series::glaisher_sum(mode, c);
        let params = Params::new().label("mode", a.text("mode")?);
        Ok(series_report("glaisher", "Glaisher series", params, &out, c.pi() / 2u32, c))
    }),
    entry!("fibonacci", "Fibonacci series", "sum_{n>=1} (-1)^(n+1) arctan(1/F_2n) = arctan((sqrt5-1)/2)", &[], |_, c| {
        let out = series::fibonacci_arctan_sum(c);
        Ok(series_report("fibonacci", "Fibonacci series", Params::new(), &out, series::fibonacci_target(c), c)
            .with_note("summed from n=1; the n=0 term arctan(1/F_0) is undefined"))
    }),
    entry!("bragg", "Bragg series", "sum_{n>=0} arctan(sinh x/cosh nx) against 3pi/4 - arctan e^x", &[real("x", "x > 0")], |a, c| Ok(series::bragg_report(&a.real("x")?, c))),
    entry!("modular-chi4", "Jacobi modular-angle pair", "chi_4 arctan e^(-alpha n) pair, alpha*beta = pi^2/4, sum = pi/8", &[ALPHA], |a, c| Ok(series::modular_chi4_pair(&a.real("alpha")?, c))),
    entry!("cais", "Cais pair", "(n/3) arctan pair, alpha*beta = 4pi^2/9, sum = pi/18", &[ALPHA], |a, c| Ok(series::cais_pair(&a.real("alpha")?, c))),
    entry!("modular3", "Cubic modular pair", "((n-1)/3) arctan pair, alpha*beta = pi^2/9, sum = 2pi/9", &[ALPHA], |a, c| Ok(series::modular3_pair(&a.real("alpha")?, c))),
    entry!("theta-pair", "Theta transform pair", "theta-function transform pair, alpha*beta = 1 assumed", &[ALPHA, THETA, PHI], |a, c| {
        Ok(series::theta_transform_pair(&a.real("alpha")?, &a.real("theta")?, &a.real("phi")?, c))
    }),
    entry!("lemma1", "Lemma 1", "exponent substitution: both sides of the sinh-root identity", INDEXED, |a, c| {
        let pair = lemmas::lemma1_pair(a.count("n")?, a.count("m")?, a.int("j")?, &a.real("alpha")?, c)?;
        Ok(pair_report("lemma1", "Lemma 1", a.params(INDEXED), pair, c))
    }),
    entry!("lemma2", "Lemma 2", "sinh of multiple exponent as a cosine arctan sum", INDEXED, |a, c| {
        let pair = lemmas::lemma2_pair(a.count("n")?, a.count("m")?, a.int("j")?, &a.real("alpha")?, c)?;
        Ok(pair_report("lemma2", "Lemma 2", a.params(INDEXED), pair, c))
    }),
    entry!("lemma3", "Lemma 3", "odd-function reindexing of the cosine arctan sum", INDEXED, |a, c| {
        let pair = lemmas::lemma3_pair(a.count("n")?, a.count("m")?, a.int("j")?, &a.real("alpha")?, c)?;
        Ok(pair_report("lemma3", "Lemma 3", a.params(INDEXED), pair, c))
    }),
    entry!("lemma4", "Lemma 4", "alternating index count equals (-1)^n", &[N], |a, c| {
        let n = a.count("n")?;
        Ok(exact_report("lemma4", "Lemma 4", a.params(&[N]), alternating_sum_check(n), parity_sign(n as i64), c))
    }),
    entry!("lemma5", "Lemma 5", "partial fractions of the cosh kernel", &[Z, M], |a, c| {
        let pair = lemmas::lemma5_pair(&a.real("z")?, a.count("m")?, c);
        Ok(pair_report("lemma5", "Lemma 5", a.params(&[Z, M]), pair, c))
    }),
    entry!("lemma6", "Lemma 6", "z -> 1/z transformation of the cosh-kernel sums", &[Z, N, M], |a, c| {
        let res = lemmas::lemma6_residual(&a.real("z")?, a.count("n")?, a.count("m")?, c)?;
        Ok(IdentityReport::evaluated("lemma6", "Lemma 6", a.params(&[Z, N, M]), res, c.zero(), c))
    }),
    entry!("integration-step", "Lemma 6", "integrated transformation formula against the cosine-kernel half sum", RECIPROCAL, |a, c| {
        let pair = lemmas::integration_step_pair(a.count("n")?, a.count("m")?, &a.real("alpha")?, c)?;
        Ok(pair_report("integration-step", "Lemma 6", a.params(RECIPROCAL), pair, c))
    }),
    entry!("lemma7", "Lemma 7", "partial fractions of the tangent kernel", &[Z, M], |a, c| {
        let pair = lemmas::lemma7_pair(&a.real("z")?, a.count("m")?, c)?;
        Ok(pair_report("lemma7", "Lemma 7", a.params(&[Z, M]), pair, c))
    }),
    entry!("lemma8", "Lemma 8", "z -> 1/z transformation of the tangent-kernel sums", &[Z, N, M], |a, c| {
        let res = lemmas::lemma8_residual(&a.real("z")?, a.count("n")?, a.count("m")?, c)?;
        Ok(IdentityReport::evaluated("lemma8", "Lemma 8", a.params(&[Z, N, M]), res, c.zero(), c))
    }),
    entry!("lemma9", "Lemma 9", "logistic integral: two closed forms and quadrature", &[real("s", "lower limit")], |a, c| {
        let s = a.real("s")?;
        let quad_tol = c.pow10(-QUAD_TOL_DIGITS);
        let (quad, closed_tanh, closed_exp) = lemmas::lemma9_triple(&s, c)?;
        let quad_gap = (quad - &closed_exp).abs();
        let mut r = IdentityReport::evaluated("lemma9", "Lemma 9", Params::new().real("s", &s), closed_tanh, closed_exp, c)
            .with_note(format!("quadrature leg off by {} (tolerance 1e-{QUAD_TOL_DIGITS})", crate::report::short(&quad_gap)));
        if quad_gap > quad_tol {
            r.status = Status::Fail;
        }
        Ok(r)
    }),
    entry!("lemma10", "Lemma 10", "Legendre-symbol partial count equals 1 for odd n", &[N], |a, c| {
        let n = a.count("n")?;
        Ok(exact_report("lemma10", "Lemma 10", a.params(&[N]), legendre3_partial_sum(n as i64)?, 1, c))
    }),
    entry!("symmetric-form", "Theorem 3", "double-sum symmetric form of the two-angle half sum", TWO_ANGLE, |a, c| {
        let res = lemmas::th3_symmetric_form_residual(a.count("n")?, a.count("m")?, &a.real("alpha")?, &a.real("theta")?, &a.real("phi")?, c)?;
        Ok(IdentityReport::evaluated("symmetric-form", "Theorem 3", a.params(TWO_ANGLE), res, c.zero(), c))
    }),
    entry!("sign-count", "Theorem 3", "sum of signs of tan((phi + pi j)/n) equals 1", &[N, PHI], |a, c| {
        let got = lemmas::sign_count_check(a.count("n")?, &a.real("phi")?, c)?;
        Ok(exact_report("sign-count", "Theorem 3", a.params(&[N, PHI]), got, 1, c))
    }),
    entry!("dirichlet", "Dirichlet grid identity", "two-sum grid identity = -xy", &[N, M, int("x", "1 <= x <= n"), int("y", "1 <= y <= m"), ParamSpec { name: "a", kind: ParamKind::Real, default: Some("1"), doc: "grid parameter, > 0" }], |a, c| {
        let spec = GridSpec::new(a.count("n")?, a.count("m")?, a.real("a")?, a.count("x")?, a.count("y")?)?;
        Ok(dirichlet_identity_residual(&spec, c))
    }),
    entry!("dirichlet-closed", "Dirichlet diagonal closed form", "diagonal grid sum against -x^2/(2n); stated -x^2/n flagged", &[N, int("x", "1 <= x <= n")], |a, c| {
        Ok(closed_form_report(a.count("n")?, a.count("x")?, c))
    }),
    entry!("complex-gen", "Theorem 1 (complex generalization)", "rotated-argument variant of Theorem 1; unproved, recorded only", TWO_ANGLE, |a, c| {
        Ok(finite::complex_generalization_residual(&reciprocal(a)?, &angles(a, c)?, c))
    }),
];

/// All registered identities, in listing order.
pub fn registry() -> &'static [IdentityInfo] {
    REGISTRY
}

pub fn lookup(id: &str) -> Result<&'static IdentityInfo> {
    REGISTRY.iter().find(|i| i.id == id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Binds raw parameters and evaluates `id`.
pub fn verify(id: &str, raw: &[(String, String)], ctx: &PrecisionContext) -> Result<IdentityReport> {
    let info = lookup(id)?;
    let args = info.bind(raw, ctx)?;
    Ok(info.evaluate(&args, ctx))
}
