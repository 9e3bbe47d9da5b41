//! Finite reciprocal arctangent sums: the cosine-kernel identity, its
//! Legendre-symbol and two-angle relatives, their corollaries, and the
//! complex-rotated variant that is stated without proof.

use rug::Float;

use crate::complex::ComplexScalar;
use crate::error::{Error, Result};
use crate::number_theory::{chi4, legendre3, parity_sign, sgn_s};
use crate::precision::{int_pow, signed_pow, PrecisionContext, Scalar};
use crate::report::{IdentityReport, Params};

pub const UNPROVED_NOTE: &str = "unproved claim: stated for illustration without proof; outcome recorded, not asserted";

/// Orders and scale of a reciprocal pair; the partner scale is `1/alpha`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReciprocalParams {
    pub n: u32,
    pub m: u32,
    pub alpha: Scalar,
}

impl ReciprocalParams {
    /// Non-negative orders, `alpha > 0`.
    pub fn new(n: u32, m: u32, alpha: Scalar) -> Result<Self> {
        if alpha <= 0 || !alpha.is_finite() {
            return Err(Error::InvalidParam(format!("alpha must be positive and finite, got {}", alpha.to_f64())));
        }
        Ok(Self { n, m, alpha })
    }

    /// Positive odd orders, `alpha > 0`.
    pub fn odd(n: u32, m: u32, alpha: Scalar) -> Result<Self> {
        check_odd("n", n)?;
        check_odd("m", m)?;
        Self::new(n, m, alpha)
    }

    pub fn beta(&self) -> Scalar {
        self.alpha.clone().recip()
    }

    pub fn params(&self) -> Params {
        Params::new().int("n", self.n as i64).int("m", self.m as i64).real("alpha", &self.alpha)
    }
}

pub(crate) fn check_odd(name: &str, v: u32) -> Result<()> {
    if v % 2 == 1 {
        Ok(())
    } else {
        Err(Error::InvalidParam(format!("{name} must be a positive odd integer, got {v}")))
    }
}

/// Two angles strictly inside `(0, π/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleParams {
    pub theta: Scalar,
    pub phi: Scalar,
}

impl AngleParams {
    pub fn new(theta: Scalar, phi: Scalar, ctx: &PrecisionContext) -> Result<Self> {
        check_open_quarter("theta", &theta, ctx)?;
        check_open_quarter("phi", &phi, ctx)?;
        Ok(Self { theta, phi })
    }
}

pub(crate) fn check_open_quarter(name: &str, x: &Scalar, ctx: &PrecisionContext) -> Result<()> {
    let half_pi = ctx.pi() / 2u32;
    if *x > 0 && *x < half_pi {
        Ok(())
    } else {
        Err(Error::InvalidParam(format!("{name} must lie in (0, pi/2), got {}", x.to_f64())))
    }
}

/// `sqrt(1 + a²c²) − a·c`, written as `1/(sqrt(1 + a²c²) + a·c)` when
/// `a·c ≥ 0` to avoid cancellation.
pub fn reciprocal_base(alpha: &Scalar, c: &Scalar) -> Scalar {
    let prec = alpha.prec().max(c.prec());
    let ac = Float::with_val(prec, alpha * c);
    let root = (Float::with_val(prec, &ac * &ac) + 1u32).sqrt();
    if ac.is_sign_negative() {
        root - ac
    } else {
        (root + ac).recip()
    }
}

/// `cos(πj/(2n+1))`.
pub fn odd_cosine(j: i64, n: u32, ctx: &PrecisionContext) -> Scalar {
    ctx.pi_ratio(j, 2 * n as i64 + 1).cos()
}

/// `arctan((sqrt(1+α²c²) − αc)^{2m+1})` with `c = cos(πj/(2n+1))`.
pub fn th1_summand(n: u32, m: u32, j: i64, alpha: &Scalar, ctx: &PrecisionContext) -> Scalar {
    let c = odd_cosine(j, n, ctx);
    int_pow(&reciprocal_base(&ctx.real(alpha), &c), 2 * m + 1).atan()
}

/// `Σ_{|j|≤n} (−1)^{n+j} arctan((sqrt(1+α²cos²(πj/(2n+1))) − α cos(πj/(2n+1)))^{2m+1})`.
pub fn th1_half_sum(n: u32, m: u32, alpha: &Scalar, ctx: &PrecisionContext) -> Scalar {
    let n_i = n as i64;
    let mut acc = ctx.zero();
    for j in -n_i..=n_i {
        let term = th1_summand(n, m, j, alpha, ctx);
        if parity_sign(n_i + j) > 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Both halves of the cosine-kernel reciprocity, against `π/4`.
pub fn th1_residual(p: &ReciprocalParams, ctx: &PrecisionContext) -> IdentityReport {
    let lhs = th1_half_sum(p.n, p.m, &p.alpha, ctx) + th1_half_sum(p.m, p.n, &p.beta(), ctx);
    IdentityReport::evaluated("th1", "Theorem 1", p.params(), lhs, ctx.pi() / 4u32, ctx)
}

/// Self-dual point `n = m`, `α = 1`: one half equals `π/8`.
pub fn cor1_residual(n: u32, ctx: &PrecisionContext) -> IdentityReport {
    let lhs = th1_half_sum(n, n, &ctx.real(1), ctx);
    IdentityReport::evaluated("cor1", "Corollary 1", Params::new().int("n", n as i64), lhs, ctx.pi() / 8u32, ctx)
}

fn chi4_half(n: u32, m: u32, alpha: &Scalar, ctx: &PrecisionContext) -> Scalar {
    let mut acc = ctx.zero();
    for j in 1..=(2 * n as i64) {
        let weight = chi4(j);
        if weight.is_zero() {
            continue;
        }
        let s = ctx.pi_ratio(j, 4 * n as i64 + 2).sin();
        let term = int_pow(&reciprocal_base(alpha, &s), 2 * m + 1).atan();
        if weight.value() > 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// The same reciprocity rearranged with `χ₄` weights and sine arguments
/// `πj/(4n+2)`, whose right side carries the two `j = 0` boundary terms.
pub fn th1_chi4_form_residual(p: &ReciprocalParams, ctx: &PrecisionContext) -> IdentityReport {
    let alpha = ctx.real(&p.alpha);
    let beta = p.beta();
    let lhs = chi4_half(p.n, p.m, &alpha, ctx) + chi4_half(p.m, p.n, &beta, ctx);
    let one = ctx.real(1);
    let edge_a = int_pow(&reciprocal_base(&alpha, &one), 2 * p.m + 1).atan() * parity_sign(p.n as i64) / 2u32;
    let edge_b = int_pow(&reciprocal_base(&beta, &one), 2 * p.n + 1).atan() * parity_sign(p.m as i64) / 2u32;
    let rhs = ctx.pi() / 8u32 - edge_a - edge_b;
    IdentityReport::evaluated("th1-chi4", "Theorem 1 (chi_4 form)", p.params(), lhs, rhs, ctx)
}

/// One signed summand `(j/3)·arctan(√3/(1 + 2 r_j^m))`,
/// `r_j = (α + tan(πj/3n))/(α − tan(πj/3n))`.
///
/// A vanishing `α − tan` makes `r_j^m` infinite; the summand's two-sided
/// limit is 0. An exactly vanishing `1 + 2 r_j^m` is reported as singular.
pub fn th2_term(n: u32, m: u32, j: i64, alpha: &Scalar, ctx: &PrecisionContext) -> Result<Scalar> {
    let weight = legendre3(j);
    if weight.is_zero() {
        return Ok(ctx.zero());
    }
    let t = ctx.pi_ratio(j, 3 * n as i64).tan();
    let den = ctx.real(alpha) - &t;
    if den.is_zero() {
        return Ok(ctx.zero());
    }
    let r = (ctx.real(alpha) + &t) / den;
    let denom = int_pow(&r, m) * 2u32 + 1u32;
    if denom.is_zero() {
        return Err(Error::Singular { index: j, detail: "1 + 2 r^m vanishes".into() });
    }
    let term = (ctx.sqrt_int(3) / denom).atan();
    Ok(term * weight.as_i64())
}

/// `Σ_{j=1}^{⌊3n/2⌋} (j/3) arctan(√3/(1 + 2 r_j^m))`.
pub fn th2_half_sum(n: u32, m: u32, alpha: &Scalar, ctx: &PrecisionContext) -> Result<Scalar> {
    check_odd("n", n)?;
    check_odd("m", m)?;
    let mut acc = ctx.zero();
    for j in 1..=(3 * n as i64) / 2 {
        acc += th2_term(n, m, j, alpha, ctx)?;
    }
    Ok(acc)
}

/// Legendre-symbol reciprocity for odd orders, against `−π/6`.
pub fn th2_residual(p: &ReciprocalParams, ctx: &PrecisionContext) -> IdentityReport {
    let eval = || -> Result<Scalar> {
        Ok(th2_half_sum(p.n, p.m, &p.alpha, ctx)? + th2_half_sum(p.m, p.n, &p.beta(), ctx)?)
    };
    match eval() {
        Ok(lhs) => IdentityReport::evaluated("th2", "Theorem 2", p.params(), lhs, -(ctx.pi() / 6u32), ctx),
        Err(e) => IdentityReport::errored("th2", "Theorem 2", p.params(), &e, ctx),
    }
}

pub fn cor2_residual(n: u32, ctx: &PrecisionContext) -> IdentityReport {
    let params = Params::new().int("n", n as i64);
    match th2_half_sum(n, n, &ctx.real(1), ctx) {
        Ok(lhs) => IdentityReport::evaluated("cor2", "Corollary 2", params, lhs, -(ctx.pi() / 12u32), ctx),
        Err(e) => IdentityReport::errored("cor2", "Corollary 2", params, &e, ctx),
    }
}

/// Pairs `(summand, displayed term)` for the `n = 3` self-dual case.
///
/// The displayed form is
/// `arctan(√3/(1+2cot³(π/36))) − arctan(√3/(1+2cot³(5π/36))) − arctan(√3/(1+2cot³(29π/36))) = π/12`,
/// which is the negative of the `j = 2, 1, 4` summands.
pub fn cor2_n3_display(ctx: &PrecisionContext) -> Result<Vec<(Scalar, Scalar)>> {
    let sqrt3 = ctx.sqrt_int(3);
    let display = |num: i64, sign: i64| -> Scalar {
        let cot = ctx.pi_ratio(num, 36).cot();
        (sqrt3.clone() / (int_pow(&cot, 3) * 2u32 + 1u32)).atan() * sign
    };
    let one = ctx.real(1);
    let mut out = Vec::new();
    for (j, num, sign) in [(2, 1, 1), (1, 5, -1), (4, 29, -1)] {
        let summand = th2_term(3, 3, j, &one, ctx)?;
        out.push((-summand, display(num, sign)));
    }
    Ok(out)
}

/// `π/12`, the value the three displayed terms add up to.
pub fn cor2_n3_display_total(ctx: &PrecisionContext) -> Scalar {
    ctx.pi() / 12u32
}

/// One signed summand of the two-angle sum:
/// `s(j)·arctan(sin2θ / (R_j^{m·s(j)} − cos2θ))`,
/// `R_j = (α + tan((φ+πj)/n))/(α − tan((φ+πj)/n))`.
pub fn th3_term(
    n: u32,
    m: u32,
    j: i64,
    alpha: &Scalar,
    theta: &Scalar,
    phi: &Scalar,
    ctx: &PrecisionContext,
) -> Result<Scalar> {
    let s = sgn_s(j).as_i64();
    let two_theta = ctx.real(theta) * 2u32;
    let (sin2, cos2) = two_theta.sin_cos(ctx.zero());
    let arg = (ctx.real(phi) + ctx.pi() * j) / n;
    let t = arg.tan();
    let den = ctx.real(alpha) - &t;
    let exponent = m as i64 * s;
    let power = if den.is_zero() {
        if exponent > 0 {
            // R^{m} → ±∞: the summand tends to 0 from both sides.
            return Ok(ctx.zero());
        }
        ctx.zero()
    } else {
        signed_pow(&((ctx.real(alpha) + &t) / den), exponent)
    };
    let denom = power - &cos2;
    if denom.is_zero() {
        return Err(Error::Singular { index: j, detail: "R^{m s(j)} equals cos 2theta".into() });
    }
    Ok((sin2 / denom).atan() * s)
}

/// `Σ_{|j|≤(n−1)/2} s(j) arctan(sin2θ / (R_j^{m s(j)} − cos2θ))`.
pub fn th3_half_sum(
    n: u32,
    m: u32,
    alpha: &Scalar,
    theta: &Scalar,
    phi: &Scalar,
    ctx: &PrecisionContext,
) -> Result<Scalar> {
    check_odd("n", n)?;
    check_odd("m", m)?;
    let half = (n as i64 - 1) / 2;
    let mut acc = ctx.zero();
    for j in -half..=half {
        acc += th3_term(n, m, j, alpha, theta, phi, ctx)?;
    }
    Ok(acc)
}

fn angle_params(p: &ReciprocalParams, a: &AngleParams) -> Params {
    p.params().real("theta", &a.theta).real("phi", &a.phi)
}

/// Two-angle reciprocity, against `π/2 − θ − φ`.
pub fn th3_residual(p: &ReciprocalParams, a: &AngleParams, ctx: &PrecisionContext) -> IdentityReport {
    let eval = || -> Result<Scalar> {
        Ok(th3_half_sum(p.n, p.m, &p.alpha, &a.theta, &a.phi, ctx)?
            + th3_half_sum(p.m, p.n, &p.beta(), &a.phi, &a.theta, ctx)?)
    };
    let params = angle_params(p, a);
    match eval() {
        Ok(lhs) => {
            let rhs = ctx.pi() / 2u32 - ctx.real(&a.theta) - &a.phi;
            IdentityReport::evaluated("th3", "Theorem 3", params, lhs, rhs, ctx)
        }
        Err(e) => IdentityReport::errored("th3", "Theorem 3", params, &e, ctx),
    }
}

/// Summands of the one-angle corollary in index order `j = −(n−1)/2 … (n−1)/2`:
/// `s(j)·arctan(sin2θ / (tan(π/4 + (θ+πj)/n)^{n s(j)} − cos2θ))`.
pub fn cor3_terms(n: u32, theta: &Scalar, ctx: &PrecisionContext) -> Result<Vec<Scalar>> {
    check_odd("n", n)?;
    let two_theta = ctx.real(theta) * 2u32;
    let (sin2, cos2) = two_theta.sin_cos(ctx.zero());
    let half = (n as i64 - 1) / 2;
    let mut out = Vec::with_capacity(n as usize);
    for j in -half..=half {
        let s = sgn_s(j).as_i64();
        let arg = ctx.pi() / 4u32 + (ctx.real(theta) + ctx.pi() * j) / n;
        let (sin, cos) = arg.sin_cos(ctx.zero());
        let exponent = n as i64 * s;
        let power = if cos.is_zero() {
            if exponent > 0 {
                out.push(ctx.zero());
                continue;
            }
            ctx.zero()
        } else {
            signed_pow(&(sin / cos), exponent)
        };
        let denom = power - &cos2;
        if denom.is_zero() {
            return Err(Error::Singular { index: j, detail: "tan power equals cos 2theta".into() });
        }
        out.push(ctx.real(&sin2 / &denom).atan() * s);
    }
    Ok(out)
}

/// One-angle corollary, against `π/4 − θ`.
pub fn cor3_sum(n: u32, theta: &Scalar, ctx: &PrecisionContext) -> IdentityReport {
    let params = Params::new().int("n", n as i64).real("theta", theta);
    let eval = || -> Result<Scalar> {
        check_open_quarter("theta", theta, ctx)?;
        Ok(cor3_terms(n, theta, ctx)?.into_iter().fold(ctx.zero(), |acc, t| acc + t))
    };
    match eval() {
        Ok(lhs) => IdentityReport::evaluated("cor3", "Corollary 3", params, lhs, ctx.pi() / 4u32 - ctx.real(theta), ctx),
        Err(e) => IdentityReport::errored("cor3", "Corollary 3", params, &e, ctx),
    }
}

/// The three terms of the displayed `n = 3` case, in displayed order:
/// `arctan(sin2θ/(cos2θ + cot³(π/12+θ/3)))`, `−arctan(sin2θ/(cos2θ + cot³(π/12−θ/3)))`,
/// `arctan(sin2θ/(cos2θ + cot³(θ/3−π/4)))`; they add up to `θ − π/4`.
pub fn cor3_n3_display(theta: &Scalar, ctx: &PrecisionContext) -> [Scalar; 3] {
    let two_theta = ctx.real(theta) * 2u32;
    let (sin2, cos2) = two_theta.sin_cos(ctx.zero());
    let third = ctx.real(theta) / 3u32;
    let term = |angle: Scalar| -> Scalar {
        let c = int_pow(&angle.cot(), 3);
        (ctx.real(&sin2) / (c + &cos2)).atan()
    };
    [
        term(ctx.pi() / 12u32 + &third),
        -term(ctx.pi() / 12u32 - &third),
        term(third.clone() - ctx.pi() / 4u32),
    ]
}

fn complex_half(n: u32, m: u32, alpha: &Scalar, shift: &Scalar, rotation: &Scalar, ctx: &PrecisionContext) -> Result<Scalar> {
    let n_i = n as i64;
    let mut acc = ctx.zero();
    for j in -n_i..=n_i {
        let c = ((ctx.real(shift) + ctx.pi() * j) / (2 * n + 1)).cos();
        let modulus = int_pow(&reciprocal_base(alpha, &c), 2 * m + 1);
        let z = ComplexScalar::from_polar(&modulus, rotation);
        let term = z.atan_re()?;
        if parity_sign(n_i + j) > 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Real part of the rotated-argument generalisation of the cosine-kernel
/// reciprocity, against `π/4`. Evaluated and recorded; the claim itself is
/// unproved, so the report always carries [`UNPROVED_NOTE`].
pub fn complex_generalization_residual(p: &ReciprocalParams, a: &AngleParams, ctx: &PrecisionContext) -> IdentityReport {
    let params = angle_params(p, a);
    let eval = || -> Result<Scalar> {
        let alpha = ctx.real(&p.alpha);
        Ok(complex_half(p.n, p.m, &alpha, &a.theta, &a.phi, ctx)?
            + complex_half(p.m, p.n, &p.beta(), &a.phi, &a.theta, ctx)?)
    };
    let report = match eval() {
        Ok(lhs) => IdentityReport::evaluated("complex-gen", "Theorem 1 (complex generalization)", params, lhs, ctx.pi() / 4u32, ctx),
        Err(e) => IdentityReport::errored("complex-gen", "Theorem 1 (complex generalization)", params, &e, ctx),
    };
    report.with_note(UNPROVED_NOTE)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn rp(n: u32, m: u32, alpha: &str) -> ReciprocalParams {
        ReciprocalParams::new(n, m, ctx().parse(alpha).unwrap()).unwrap()
    }

    #[test]
    fn th1_base_case_is_pi_over_eight() {
        let c = ctx();
        let half = th1_half_sum(0, 0, &c.real(1), &c);
        assert!((half - c.pi() / 8u32).abs() < c.pow10(-65));
        let r = th1_residual(&rp(0, 0, "1"), &c);
        assert!(r.abs_residual() < c.pow10(-65));
    }

    #[test]
    fn th1_examples() {
        let c = ctx();
        let a = c.parse("1.7").unwrap();
        let total = th1_half_sum(2, 3, &a, &c) + th1_half_sum(3, 2, &a.clone().recip(), &c);
        assert!((total - c.pi() / 4u32).abs() < c.pow10(-40));
        assert!(th1_residual(&rp(5, 8, "0.3"), &c).abs_residual() < c.pow10(-40));
        assert!(cor1_residual(4, &c).passed());
    }

    #[test]
    fn th1_half_sum_matches_direct_summation() {
        // Oracle: naive formula at 100 digits, without the stable rewrite.
        let c100 = PrecisionContext::new(100).unwrap();
        let alpha = c100.real(2);
        let mut oracle = c100.zero();
        for j in -1i64..=1 {
            let cs = c100.pi_ratio(j, 3).cos();
            let ac = c100.real(&alpha * &cs);
            let base = (c100.real(&ac * &ac) + 1u32).sqrt() - ac;
            let term = base.atan();
            oracle += term * parity_sign(1 + j);
        }
        let got = th1_half_sum(1, 0, &alpha, &c100);
        assert!((got - oracle).abs() < c100.pow10(-90));
    }

    #[test]
    fn th1_chi4_form_agrees() {
        let c = ctx();
        let r = th1_chi4_form_residual(&rp(0, 0, "1"), &c);
        assert!(r.lhs.is_zero());
        assert!(r.abs_residual() < c.pow10(-65));
        assert!(th1_chi4_form_residual(&rp(3, 2, "2.5"), &c).abs_residual() < c.pow10(-40));
        for (n, m, a) in [(1, 4, "0.2"), (6, 3, "3"), (2, 2, "1")] {
            let p = rp(n, m, a);
            assert_eq!(th1_chi4_form_residual(&p, &c).passed(), th1_residual(&p, &c).passed());
        }
    }

    #[test]
    fn th2_single_term() {
        let c = ctx();
        let got = th2_half_sum(1, 1, &c.real(1), &c).unwrap();
        assert!((got + c.pi() / 12u32).abs() < c.pow10(-65));
        assert!(th2_half_sum(2, 1, &c.real(1), &c).is_err());
    }

    #[test]
    fn th2_reciprocity_and_corollary() {
        let c = ctx();
        for (n, m, a) in [(3, 5, "1.7"), (1, 7, "0.2"), (5, 5, "5")] {
            let r = th2_residual(&ReciprocalParams::odd(n, m, c.parse(a).unwrap()).unwrap(), &c);
            assert!(r.abs_residual() < c.pow10(-30), "{n} {m} {a}");
        }
        for n in (1..=21).step_by(2) {
            assert!(cor2_residual(n, &c).passed(), "n = {n}");
        }
    }

    #[test]
    fn th2_n3_display() {
        let c = ctx();
        let pairs = cor2_n3_display(&c).unwrap();
        let mut total = c.zero();
        for (ours, shown) in &pairs {
            assert!((ours.clone() - shown).abs() < c.pow10(-40));
            total += shown;
        }
        assert!((total - cor2_n3_display_total(&c)).abs() < c.pow10(-40));
    }

    #[test]
    fn th2_exact_pole_is_limit_zero() {
        let c = ctx();
        // α = tan(π/3) = tan(πj/3n) at n = 1, j = 1.
        let alpha = c.pi_ratio(1, 3).tan();
        let t = c.pi_ratio(1, 3).tan();
        assert_eq!(alpha.clone() - t, 0);
        assert!(th2_term(1, 1, 1, &alpha, &c).unwrap().is_zero());
    }

    #[test]
    fn th3_single_term_example() {
        let c = ctx();
        let p6 = c.pi() / 6u32;
        let half = th3_half_sum(1, 1, &c.real(1), &p6, &p6, &c).unwrap();
        assert!((half - c.pi() / 12u32).abs() < c.pow10(-65));
        let r = th3_residual(&ReciprocalParams::odd(1, 1, c.real(1)).unwrap(), &AngleParams::new(p6.clone(), p6, &c).unwrap(), &c);
        assert!(r.abs_residual() < c.pow10(-65));
    }

    #[test]
    fn th3_reciprocity() {
        let c = ctx();
        let p = ReciprocalParams::odd(3, 5, c.parse("1.4").unwrap()).unwrap();
        let a = AngleParams::new(c.parse("0.7").unwrap(), c.parse("0.9").unwrap(), &c).unwrap();
        assert!(th3_residual(&p, &a, &c).abs_residual() < c.pow10(-40));
        assert!(AngleParams::new(c.real(0), c.real(1), &c).is_err());
        assert!(AngleParams::new(c.real(1), c.real(2), &c).is_err());
    }

    #[test]
    fn th3_at_third_pi_is_th2() {
        let c = ctx();
        let third = c.pi() / 3u32;
        for (n, m, a) in [(1, 1, "1"), (3, 5, "0.7"), (7, 3, "2.2")] {
            let a = c.parse(a).unwrap();
            let lhs3 = th3_half_sum(n, m, &a, &third, &third, &c).unwrap();
            let lhs2 = th2_half_sum(n, m, &a, &c).unwrap();
            assert!((lhs3 - lhs2).abs() < c.pow10(-50), "{n} {m}");
        }
    }

    #[test]
    fn th3_degenerate_angle_sum() {
        let c = ctx();
        for n in [1u32, 3, 5] {
            let theta = c.parse("0.6").unwrap();
            let phi = c.pi() / 2u32 - &theta - c.pow10(-12);
            let p = ReciprocalParams::odd(n, n, c.real(1)).unwrap();
            let r = th3_residual(&p, &AngleParams::new(theta, phi, &c).unwrap(), &c);
            assert!(r.passed(), "n = {n}");
        }
    }

    #[test]
    fn cor3_examples() {
        let c = ctx();
        let r = cor3_sum(1, &(c.pi() / 6u32), &c);
        assert!((r.lhs.clone() - c.pi() / 12u32).abs() < c.pow10(-65));
        for n in [3, 5, 9] {
            assert!(cor3_sum(n, &c.parse("0.4").unwrap(), &c).passed());
        }
        // θ = π/4 puts tan(π/2) into the n = 1 term; both sides vanish.
        let r = cor3_sum(1, &(c.pi() / 4u32), &c);
        assert!(r.passed());
        assert!(r.lhs.clone().abs() < c.pow10(-40));
    }

    #[test]
    fn cor3_n3_display_matches() {
        let c = ctx();
        for theta in ["0.2", "0.7", "1.3"] {
            let theta = c.parse(theta).unwrap();
            let ours = cor3_terms(3, &theta, &c).unwrap();
            let shown = cor3_n3_display(&theta, &c);
            // displayed order: j = 1, j = −1, j = 0; display = −(summand)
            for (o, s) in [(&ours[2], &shown[0]), (&ours[0], &shown[1]), (&ours[1], &shown[2])] {
                assert!((o.clone() + s).abs() < c.pow10(-40));
            }
            let total = shown.iter().fold(c.zero(), |a, t| a + t);
            assert!((total - (theta - c.pi() / 4u32)).abs() < c.pow10(-40));
        }
    }

    #[test]
    fn complex_generalization_is_recorded() {
        let c = ctx();
        let p = rp(2, 3, "1.2");
        let a = AngleParams::new(c.parse("0.5").unwrap(), c.parse("0.8").unwrap(), &c).unwrap();
        let r = complex_generalization_residual(&p, &a, &c);
        assert!(r.notes.iter().any(|n| n == UNPROVED_NOTE));
        assert!(r.residual.is_finite());
    }

    #[test]
    fn complex_generalization_approaches_th1() {
        let c = ctx();
        let p = rp(3, 2, "0.8");
        let th1 = th1_residual(&p, &c);
        let eps = c.pow10(-25);
        let a = AngleParams::new(eps.clone(), eps, &c).unwrap();
        let cg = complex_generalization_residual(&p, &a, &c);
        assert!((cg.lhs - th1.lhs).abs() < c.pow10(-20));
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]

        #[test]
        fn th1_holds_for_random_orders(n in 0u32..25, m in 0u32..25, log_alpha in -3.0f64..3.0) {
            let c = PrecisionContext::new(40).unwrap();
            let p = ReciprocalParams::new(n, m, c.real(log_alpha.exp())).unwrap();
            let r = th1_residual(&p, &c);
            proptest::prop_assert!(r.passed(), "residual {}", r.residual);
        }

        #[test]
        fn th1_symmetric_under_swap(n in 0u32..12, m in 0u32..12, log_alpha in -2.0f64..2.0) {
            // (n, m, alpha) and (m, n, 1/alpha) describe the same pair
            let c = PrecisionContext::new(40).unwrap();
            let alpha = c.real(log_alpha.exp());
            let a = th1_residual(&ReciprocalParams::new(n, m, alpha.clone()).unwrap(), &c);
            let b = th1_residual(&ReciprocalParams::new(m, n, alpha.recip()).unwrap(), &c);
            proptest::prop_assert!((a.lhs - b.lhs).abs() < c.pow10(-35));
        }
    }
}
