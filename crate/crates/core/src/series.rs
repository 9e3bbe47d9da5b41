//! Infinite arctangent series with certified truncation: Glaisher's sum, the
//! Fibonacci sum, Bragg's sum, and the reciprocal pairs built from the
//! characters mod 4 and mod 3 and from the theta-function transform.
//!
//! Each series carries its own closed-form remainder bound; summation stops
//! once that bound drops below the context's tail target.

use rug::{Float, Integer};

use crate::elliptic::{elliptic_bundle, quarter_modular_angle};
use crate::error::{Error, Result};
use crate::finite::check_open_quarter;
use crate::number_theory::{chi4, fibonacci, legendre3, sgn_s, FibonacciIndex};
use crate::par;
use crate::precision::{sum_with_tail, PrecisionContext, Scalar, SeriesOutcome};
use crate::report::{IdentityReport, Params};

/// Assumed constraint for the theta-transform pair, attached to every report.
pub const THETA_PAIR_NOTE: &str = "assumes alpha*beta = 1; no constraint is stated for the pair";

/// Direct terms summed before the telescoped remainder is added.
pub const TELESCOPE_TERMS: u64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlaisherMode {
    Direct,
    Telescoped,
}

fn check_positive(name: &str, x: &Scalar) -> Result<()> {
    if *x > 0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParam(format!("{name} must be positive and finite, got {}", x.to_f64())))
    }
}

/// `arctan(2/(2n+1)²)`.
pub fn glaisher_term(n: u64, ctx: &PrecisionContext) -> Scalar {
    let odd = Integer::from(2 * n + 1);
    (ctx.real(2) / ctx.real(odd.square())).atan()
}

/// `max_{1≤n≤count} |arctan(2/(2n+1)²) − (arctan(1/(2n)) − arctan(1/(2n+2)))|`.
pub fn verify_glaisher_telescoping(count: u64, ctx: &PrecisionContext) -> Scalar {
    let mut worst = ctx.zero();
    for n in 1..=count {
        let split = ctx.ratio(1, 2 * n as i64).atan() - ctx.ratio(1, 2 * n as i64 + 2).atan();
        let gap = (glaisher_term(n, ctx) - split).abs();
        if gap > worst {
            worst = gap;
        }
    }
    worst
}

/// `Σ_{n≥0} arctan(2/(2n+1)²)`, which equals `π/2`.
///
/// Direct mode sums raw terms with remainder bound `1/(2N)`. Telescoped mode
/// sums [`TELESCOPE_TERMS`] raw terms and adds the exact remainder
/// `arctan(1/(2N+2))`, so its bound is zero.
pub fn glaisher_sum(mode: GlaisherMode, ctx: &PrecisionContext) -> SeriesOutcome {
    match mode {
        GlaisherMode::Direct => sum_with_tail(0, |n| glaisher_term(n, ctx), |n| ctx.real(1) / (2 * n), ctx),
        GlaisherMode::Telescoped => {
            let last = TELESCOPE_TERMS;
            let mut value = ctx.zero();
            for n in 0..=last {
                value += glaisher_term(n, ctx);
            }
            value += ctx.ratio(1, 2 * last as i64 + 2).atan();
            SeriesOutcome { value, terms_used: last + 1, tail_bound: ctx.zero(), converged: true }
        }
    }
}

/// `arctan((√5 − 1)/2)`.
pub fn fibonacci_target(ctx: &PrecisionContext) -> Scalar {
    ((ctx.sqrt_int(5) - 1u32) / 2u32).atan()
}

/// `Σ_{n≥1} (−1)^{n+1} arctan(1/F_{2n})`, which equals `arctan((√5−1)/2)`.
///
/// Remainder after index `N` is bounded by `3·φ^{−2(N+1)}`, `φ` the golden
/// ratio, since `1/F_{2k} < 3·φ^{−2k}` and the terms alternate.
pub fn fibonacci_arctan_sum(ctx: &PrecisionContext) -> SeriesOutcome {
    let golden_sq = ((ctx.sqrt_int(5) + 1u32) / 2u32).square();
    sum_with_tail(
        1,
        |n| {
            let f = fibonacci(FibonacciIndex(2 * n as u32));
            let term = ctx.real(f).recip().atan();
            if n % 2 == 1 {
                term
            } else {
                -term
            }
        },
        |n| ctx.real(3) / crate::precision::int_pow(&golden_sq, n as u32 + 1),
        ctx,
    )
}

/// `3π/4 − arctan(e^x)`.
pub fn bragg_target(x: &Scalar, ctx: &PrecisionContext) -> Scalar {
    ctx.pi() * 3u32 / 4u32 - ctx.real(x).exp().atan()
}

/// `Σ_{n≥0} arctan(sinh x / cosh nx)` for `x > 0`, as stated against
/// `3π/4 − arctan e^x`.
///
/// The stated right side is reached by the sum from `n = 1`; the `n = 0`
/// term `arctan(sinh x)` is left over. See [`bragg_sum_from`].
pub fn bragg_sum(x: &Scalar, ctx: &PrecisionContext) -> Result<SeriesOutcome> {
    bragg_sum_from(0, x, ctx)
}

/// `Σ_{n≥start} arctan(sinh x / cosh nx)`, remainder bound
/// `4·sinh x·e^{−x(N+1)}/(1 − e^{−x})`.
pub fn bragg_sum_from(start: u64, x: &Scalar, ctx: &PrecisionContext) -> Result<SeriesOutcome> {
    check_positive("x", x)?;
    let x = ctx.real(x);
    let sinh_x = x.clone().sinh();
    let decay = (-x.clone()).exp();
    let scale = ctx.real(&sinh_x) * 4u32 / (1u32 - decay.clone());
    Ok(sum_with_tail(
        start,
        |n| (ctx.real(&sinh_x) / (ctx.real(&x) * n).cosh()).atan(),
        |n| ctx.real(&scale) * (-(ctx.real(&x) * (n + 1))).exp(),
        ctx,
    ))
}

/// Bragg's sum as a report: stated index range against the stated right side.
pub fn bragg_report(x: &Scalar, ctx: &PrecisionContext) -> IdentityReport {
    const ID: &str = "bragg";
    const ANCHOR: &str = "Bragg series";
    let params = Params::new().real("x", x);
    match bragg_sum(x, ctx) {
        Ok(out) => {
            let report = IdentityReport::evaluated(ID, ANCHOR, params, ctx.real(&out.value), bragg_target(x, ctx), ctx)
                .with_series([&out]);
            if report.status == crate::report::Status::Fail {
                let leftover = ctx.real(x).sinh().atan();
                let gap = Float::with_val(ctx.prec(), &report.residual - &leftover).abs();
                report.with_note(format!(
                    "stated index range starts at n=0; residual minus arctan(sinh x) is {}",
                    crate::report::short(&gap)
                ))
            } else {
                report
            }
        }
        Err(e) => IdentityReport::errored(ID, ANCHOR, params, &e, ctx),
    }
}

/// `Σ_{n≥1} χ₄(n) arctan e^{−αn}`, remainder bound `e^{−α(N+1)}/(1 − e^{−α})`.
pub fn chi4_series(alpha: &Scalar, ctx: &PrecisionContext) -> SeriesOutcome {
    let alpha = ctx.real(alpha);
    let denom = 1u32 - (-alpha.clone()).exp();
    sum_with_tail(
        1,
        |n| {
            let w = chi4(n as i64);
            if w.is_zero() {
                return ctx.zero();
            }
            (-(ctx.real(&alpha) * n)).exp().atan() * w.as_i64()
        },
        |n| (-(ctx.real(&alpha) * (n + 1))).exp() / &denom,
        ctx,
    )
}

/// `Σ_{n≥1} (n/3) arctan(√3/(1 + 2e^{αn}))`, remainder bound
/// `(√3/2)e^{−α(N+1)}/(1 − e^{−α})`.
pub fn cais_series(alpha: &Scalar, ctx: &PrecisionContext) -> SeriesOutcome {
    let alpha = ctx.real(alpha);
    let sqrt3 = ctx.sqrt_int(3);
    let scale = ctx.real(&sqrt3) / 2u32 / (1u32 - (-alpha.clone()).exp());
    sum_with_tail(
        1,
        |n| {
            let w = legendre3(n as i64);
            if w.is_zero() {
                return ctx.zero();
            }
            let e = (ctx.real(&alpha) * n).exp();
            (ctx.real(&sqrt3) / (e * 2u32 + 1u32)).atan() * w.as_i64()
        },
        |n| (-(ctx.real(&alpha) * (n + 1))).exp() * &scale,
        ctx,
    )
}

/// `Σ_{n≥0} ((n−1)/3) arctan(√3/(1 − 2e^{α(2n+1)}))`, remainder bound
/// `√3·e^{−α(2N+3)}/(1 − e^{−2α})`.
pub fn modular3_series(alpha: &Scalar, ctx: &PrecisionContext) -> SeriesOutcome {
    let alpha = ctx.real(alpha);
    let sqrt3 = ctx.sqrt_int(3);
    let scale = ctx.real(&sqrt3) / (1u32 - (-(alpha.clone() * 2u32)).exp());
    sum_with_tail(
        0,
        |n| {
            let w = legendre3(n as i64 - 1);
            if w.is_zero() {
                return ctx.zero();
            }
            let e = (ctx.real(&alpha) * (2 * n + 1)).exp();
            (ctx.real(&sqrt3) / (1u32 - e * 2u32)).atan() * w.as_i64()
        },
        |n| (-(ctx.real(&alpha) * (2 * n + 3))).exp() * &scale,
        ctx,
    )
}

/// Evaluates `series(α) + series(β)` (halves concurrently) against `rhs`.
fn pair_report<F>(id: &str, anchor: &str, alpha: &Scalar, beta: Scalar, rhs: Scalar, series: F, ctx: &PrecisionContext) -> IdentityReport
where
    F: Fn(&Scalar, &PrecisionContext) -> SeriesOutcome + Sync,
{
    let params = Params::new().real("alpha", alpha).real("beta", &beta);
    let (a, b) = par::join(|| series(alpha, ctx), || series(&beta, ctx));
    let lhs = ctx.real(&a.value) + &b.value;
    IdentityReport::evaluated(id, anchor, params, lhs, rhs, ctx).with_series([&a, &b])
}

fn invalid_pair(id: &str, anchor: &str, alpha: &Scalar, err: &Error, ctx: &PrecisionContext) -> IdentityReport {
    IdentityReport::errored(id, anchor, Params::new().real("alpha", alpha), err, ctx)
}

/// `Σ χ₄(n) arctan e^{−αn} + Σ χ₄(n) arctan e^{−βn} = π/8` with `αβ = π²/4`.
pub fn modular_chi4_pair(alpha: &Scalar, ctx: &PrecisionContext) -> IdentityReport {
    const ID: &str = "modular-chi4";
    const ANCHOR: &str = "Jacobi modular-angle pair";
    if let Err(e) = check_positive("alpha", alpha) {
        return invalid_pair(ID, ANCHOR, alpha, &e, ctx);
    }
    let beta = ctx.pi().square() / 4u32 / alpha;
    pair_report(ID, ANCHOR, alpha, beta, ctx.pi() / 8u32, chi4_series, ctx)
}

/// `Σ (n/3) arctan(√3/(1+2e^{αn})) + same with β = π/18` with `αβ = 4π²/9`.
pub fn cais_pair(alpha: &Scalar, ctx: &PrecisionContext) -> IdentityReport {
    const ID: &str = "cais";
    const ANCHOR: &str = "Cais pair";
    if let Err(e) = check_positive("alpha", alpha) {
        return invalid_pair(ID, ANCHOR, alpha, &e, ctx);
    }
    let beta = ctx.pi().square() * 4u32 / 9u32 / alpha;
    pair_report(ID, ANCHOR, alpha, beta, ctx.pi() / 18u32, cais_series, ctx)
}

/// `Σ ((n−1)/3) arctan(√3/(1−2e^{α(2n+1)})) + same with β = 2π/9` with `αβ = π²/9`.
pub fn modular3_pair(alpha: &Scalar, ctx: &PrecisionContext) -> IdentityReport {
    const ID: &str = "modular3";
    const ANCHOR: &str = "Cubic modular pair";
    if let Err(e) = check_positive("alpha", alpha) {
        return invalid_pair(ID, ANCHOR, alpha, &e, ctx);
    }
    let beta = ctx.pi().square() / 9u32 / alpha;
    pair_report(ID, ANCHOR, alpha, beta, ctx.pi() * 2u32 / 9u32, modular3_series, ctx)
}

/// `Σ_{j∈ℤ} s(j) arctan(sin2θ/(e^{2α(π|j| + φ s(j))} − cos2θ))`, truncated
/// symmetrically: index `J` contributes the `j = J` and `j = −J` terms.
///
/// Remainder bound after `J`:
/// `2e^{2αφ}e^{−2απ(J+1)} / ((1 − e^{−2απ})(1 − e^{−x}))`, `x = 2α(π(J+1) − φ)`.
pub fn theta_series(alpha: &Scalar, theta: &Scalar, phi: &Scalar, ctx: &PrecisionContext) -> SeriesOutcome {
    let alpha = ctx.real(alpha);
    let two_theta = ctx.real(theta) * 2u32;
    let (sin2, cos2) = two_theta.sin_cos(ctx.zero());
    let pi = ctx.pi();
    let term = |j: i64| -> Scalar {
        let s = sgn_s(j).as_i64();
        let exponent = (ctx.real(&pi) * j.unsigned_abs() + ctx.real(phi) * s) * &alpha * 2u32;
        let value = (ctx.real(&sin2) / (exponent.exp() - &cos2)).atan();
        value * s
    };
    let geometric = 1u32 - (-(ctx.real(&pi) * &alpha * 2u32)).exp();
    let lead = (ctx.real(&alpha) * phi * 2u32).exp() * 2u32 / geometric;
    sum_with_tail(
        0,
        |j| if j == 0 { term(0) } else { term(j as i64) + term(-(j as i64)) },
        |j| {
            let next = ctx.real(j + 1);
            let decay = (-(ctx.real(&pi) * &alpha * &next * 2u32)).exp();
            let x_min = (ctx.real(&pi) * &next - phi) * &alpha * 2u32;
            ctx.real(&lead) * decay / (1u32 - (-x_min).exp())
        },
        ctx,
    )
}

/// Theta-function transform pair against `(2/π)(π/2 − θ)(π/2 − φ)`, with
/// `β = 1/α` (recorded in the report notes).
pub fn theta_transform_pair(alpha: &Scalar, theta: &Scalar, phi: &Scalar, ctx: &PrecisionContext) -> IdentityReport {
    theta_transform_pair_with_beta(alpha, &ctx.real(alpha).recip(), theta, phi, ctx)
}

/// Theta-function transform pair at an explicit `β`, for probing constraints
/// other than `αβ = 1`.
pub fn theta_transform_pair_with_beta(alpha: &Scalar, beta: &Scalar, theta: &Scalar, phi: &Scalar, ctx: &PrecisionContext) -> IdentityReport {
    const ID: &str = "theta-pair";
    const ANCHOR: &str = "Theta transform pair";
    let params = Params::new().real("alpha", alpha).real("beta", beta).real("theta", theta).real("phi", phi);
    let valid = check_positive("alpha", alpha)
        .and_then(|_| check_positive("beta", beta))
        .and_then(|_| check_open_quarter("theta", theta, ctx))
        .and_then(|_| check_open_quarter("phi", phi, ctx));
    if let Err(e) = valid {
        return IdentityReport::errored(ID, ANCHOR, params, &e, ctx).with_note(THETA_PAIR_NOTE);
    }
    let (a, b) = par::join(|| theta_series(alpha, theta, phi, ctx), || theta_series(beta, phi, theta, ctx));
    let lhs = ctx.real(&a.value) + &b.value;
    let half_pi = ctx.pi() / 2u32;
    let rhs = (ctx.real(&half_pi) - theta) * (half_pi - ctx.real(phi)) * 2u32 / ctx.pi();
    IdentityReport::evaluated(ID, ANCHOR, params, lhs, rhs, ctx).with_series([&a, &b]).with_note(THETA_PAIR_NOTE)
}

/// Checks the χ₄ series against the elliptic route for modulus `k`.
///
/// With `α = πK′/(2K)` the χ₄ series equals `arcsin(k)/4`, its partner at
/// `β = π²/(4α)` equals `arcsin(k′)/4`, and the two add up to `π/8`. Returns
/// the larger of the two absolute discrepancies.
pub fn chi4_elliptic_consistency(k: &Scalar, ctx: &PrecisionContext) -> Result<Scalar> {
    let e = elliptic_bundle(k, ctx)?;
    let alpha = ctx.pi() * &e.big_k_prime / &e.big_k / 2u32;
    let beta = ctx.pi().square() / 4u32 / &alpha;
    let first = chi4_series(&alpha, ctx).value - quarter_modular_angle(k, ctx);
    let second = chi4_series(&beta, ctx).value - quarter_modular_angle(&e.k_prime, ctx);
    let (first, second) = (first.abs(), second.abs());
    Ok(if first > second { first } else { second })
}

/// Theta series at `α = 1`, `θ = φ = π/4` minus the χ₄ series at `α = π/2`;
/// the index map `j ↦ 4|j| ± 1` identifies them term by term.
pub fn theta_chi4_bijection_residual(ctx: &PrecisionContext) -> Scalar {
    let quarter = ctx.pi() / 4u32;
    let theta = theta_series(&ctx.real(1), &quarter, &quarter, ctx).value;
    let chi = chi4_series(&(ctx.pi() / 2u32), ctx).value;
    Float::with_val(ctx.prec(), theta - chi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn within(a: &Scalar, b: &Scalar, exp: i32) -> bool {
        let c = ctx();
        Float::with_val(c.prec(), a - b).abs() < c.pow10(exp)
    }

    #[test]
    fn glaisher_telescoping_oracle() {
        let c = ctx();
        assert!(verify_glaisher_telescoping(1000, &c) < c.pow10(-55));
    }

    #[test]
    fn glaisher_modes() {
        let c = ctx();
        assert!(within(&glaisher_term(0, &c), &c.real(2).atan(), -65));
        let t = glaisher_sum(GlaisherMode::Telescoped, &c);
        assert!(t.converged && t.tail_bound == 0);
        assert!(within(&t.value, &(c.pi() / 2u32), -45));
        let small = c.clone().with_max_terms(1000).unwrap();
        let d = glaisher_sum(GlaisherMode::Direct, &small);
        assert!(!d.converged);
        assert_eq!(d.terms_used, 1000);
        let gap = (c.pi() / 2u32 - &d.value).abs();
        assert!(gap <= d.tail_bound);
        assert!(gap > 0);
    }

    #[test]
    fn glaisher_direct_million_terms() {
        let c = PrecisionContext::new(30).unwrap().with_max_terms(1_000_000).unwrap();
        let d = glaisher_sum(GlaisherMode::Direct, &c);
        let gap = (c.pi() / 2u32 - &d.value).abs();
        assert!(gap < 6e-7);
        assert!(gap <= d.tail_bound);
    }

    #[test]
    fn fibonacci_series() {
        let c = ctx();
        let target = fibonacci_target(&c);
        assert!(within(&target, &c.parse("0.5535743588970452515085327300892").unwrap(), -30));
        let s = fibonacci_arctan_sum(&c);
        assert!(s.converged);
        assert!(c.within_tolerance(&(s.value.clone() - &target)));
        // 80 terms are enough for 1e-30.
        let c80 = c.clone().with_tail_target(c.pow10(-30)).unwrap();
        let s80 = fibonacci_arctan_sum(&c80);
        assert!(s80.terms_used <= 80);
        assert!(within(&s80.value, &target, -30));
    }

    #[test]
    fn fibonacci_partial_sums_alternate() {
        let c = ctx();
        let target = fibonacci_target(&c);
        let mut partial = c.zero();
        for n in 1..12u32 {
            let t = c.real(fibonacci(FibonacciIndex(2 * n))).recip().atan();
            if n % 2 == 1 {
                partial += t;
                assert!(partial > target);
            } else {
                partial -= t;
                assert!(partial < target);
            }
        }
    }

    #[test]
    fn bragg_examples() {
        let c = ctx();
        for x in [0.5, 1.0, 2.0] {
            let x = c.real(x);
            let from_zero = bragg_sum(&x, &c).unwrap();
            let from_one = bragg_sum_from(1, &x, &c).unwrap();
            assert!(within(&from_one.value, &bragg_target(&x, &c), -40));
            let first = x.clone().sinh().atan();
            assert!(within(&(from_zero.value.clone() - &from_one.value), &first, -45));
            let r = bragg_report(&x, &c);
            assert_eq!(r.status, crate::report::Status::Fail);
            assert!(within(&r.residual, &first, -40));
        }
        let s = bragg_sum(&c.real(2), &c).unwrap();
        assert!(s.terms_used <= 60);
        assert!(bragg_sum(&c.zero(), &c).is_err());
        let tiny = c.clone().with_max_terms(50).unwrap();
        assert!(!bragg_sum(&c.real(0.01), &tiny).unwrap().converged);
    }

    #[test]
    fn chi4_pair() {
        let c = ctx();
        let half_pi = c.pi() / 2u32;
        let s = chi4_series(&half_pi, &c);
        assert!(within(&s.value, &(c.pi() / 16u32), -45));
        let r = modular_chi4_pair(&c.real(1), &c);
        assert!(r.passed(), "{}", r.text_line());
        let r = modular_chi4_pair(&c.real(0.05), &c);
        assert!(r.passed(), "{}", r.text_line());
        assert!(modular_chi4_pair(&c.real(-1), &c).status == crate::report::Status::Error);
    }

    #[test]
    fn cais_and_modular3() {
        let c = ctx();
        let s = cais_series(&c.pi_ratio(2, 3), &c);
        assert!(within(&s.value, &(c.pi() / 36u32), -45));
        assert!(cais_pair(&c.real(1), &c).passed());
        let s = modular3_series(&c.pi_ratio(1, 3), &c);
        assert!(within(&s.value, &(c.pi() / 9u32), -45));
        assert!(modular3_pair(&c.real(0.8), &c).passed());
        assert_eq!(legendre3(-1).as_i64(), -1);
    }

    #[test]
    fn theta_pair() {
        let c = ctx();
        let r = theta_transform_pair(&c.real(2), &c.real(0.4), &c.real(1.1), &c);
        assert!(r.passed(), "{}", r.text_line());
        assert!(r.notes.iter().any(|n| n == THETA_PAIR_NOTE));
        let theta = c.real(0.6);
        let s = theta_series(&c.real(1), &theta, &theta, &c);
        let expected = (c.pi() / 2u32 - &theta).square() / c.pi();
        assert!(within(&s.value, &expected, -45));
        // Under αβ = π²/4 instead, the pair no longer balances.
        let beta = c.pi().square() / 4u32;
        let off = theta_transform_pair_with_beta(&c.real(1), &beta, &c.real(0.4), &c.real(1.1), &c);
        assert_eq!(off.status, crate::report::Status::Fail);
    }

    #[test]
    fn theta_matches_chi4() {
        let c = ctx();
        assert!(theta_chi4_bijection_residual(&c).abs() < c.pow10(-45));
        let q = c.pi() / 4u32;
        let r = theta_transform_pair(&c.real(1), &q, &q, &c);
        assert!(within(&r.lhs, &(c.pi() / 8u32), -45));
    }

    #[test]
    fn elliptic_consistency() {
        let c = ctx();
        for k in ["0.1", "0.5", "0.7071", "0.95"] {
            let k = c.parse(k).unwrap();
            assert!(chi4_elliptic_consistency(&k, &c).unwrap() < c.pow10(-40));
        }
    }

    #[test]
    fn tail_bounds_are_honest() {
        let c = ctx();
        let loose = c.clone().with_tail_target(c.pow10(-12)).unwrap();
        let checks: Vec<(SeriesOutcome, Scalar)> = vec![
            (fibonacci_arctan_sum(&loose), fibonacci_target(&c)),
            (bragg_sum(&c.real(0.7), &loose).unwrap(), bragg_sum(&c.real(0.7), &c).unwrap().value),
            (chi4_series(&c.real(0.9), &loose), chi4_series(&c.real(0.9), &c).value),
            (cais_series(&c.real(1.3), &loose), cais_series(&c.real(1.3), &c).value),
            (modular3_series(&c.real(0.6), &loose), modular3_series(&c.real(0.6), &c).value),
            (theta_series(&c.real(0.5), &c.real(0.3), &c.real(1.2), &loose), theta_series(&c.real(0.5), &c.real(0.3), &c.real(1.2), &c).value),
        ];
        for (i, (short, full)) in checks.iter().enumerate() {
            let gap = Float::with_val(c.prec(), &short.value - full).abs();
            assert!(gap <= short.tail_bound, "series {i}");
        }
    }
}
