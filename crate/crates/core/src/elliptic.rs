//! Complete elliptic integrals through the arithmetic–geometric mean, the
//! nome, and Jacobi's alternating arctangent series for the modular angle.

use rug::Float;

use crate::error::{Error, Result};
use crate::precision::{int_pow, sum_with_tail, PrecisionContext, Scalar, SeriesOutcome};

const AGM_MAX_ITER: u32 = 200;

/// Modulus, complementary modulus, `K`, `K′` and the nome as one bundle.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticData {
    pub k: Scalar,
    pub k_prime: Scalar,
    pub big_k: Scalar,
    pub big_k_prime: Scalar,
    pub q: Scalar,
}

/// Arithmetic–geometric mean of two positive numbers.
///
/// Iterates until `|a − b| ≤ 2^{4−prec}·a`, where `prec` is the precision of
/// `a`, then takes one final arithmetic step.
pub fn agm(a: &Scalar, b: &Scalar) -> Result<Scalar> {
    if !(*a > 0 && *b > 0) {
        return Err(Error::Domain(format!("agm needs positive arguments, got {} and {}", a.to_f64(), b.to_f64())));
    }
    let prec = a.prec().max(b.prec());
    let mut x = Float::with_val(prec, a);
    let mut y = Float::with_val(prec, b);
    let threshold_exp = 4 - prec as i32;
    for _ in 0..AGM_MAX_ITER {
        let gap = Float::with_val(prec, &x - &y).abs();
        if gap.is_zero() || relative_exponent(&gap, &x) <= threshold_exp {
            break;
        }
        let mean = Float::with_val(prec, &x + &y) / 2u32;
        let geo = Float::with_val(prec, &x * &y).sqrt();
        x = mean;
        y = geo;
    }
    Ok((x + y) / 2u32)
}

fn relative_exponent(gap: &Scalar, scale: &Scalar) -> i32 {
    let g = gap.get_exp().unwrap_or(i32::MIN / 2);
    let s = scale.get_exp().unwrap_or(0);
    g - s
}

/// `K(k) = π / (2·agm(1, k′))`.
pub fn complete_k(k: &Scalar, ctx: &PrecisionContext) -> Result<Scalar> {
    let k_prime = complementary(k, ctx)?;
    Ok(ctx.pi() / (agm(&ctx.real(1), &k_prime)? * 2u32))
}

fn complementary(k: &Scalar, ctx: &PrecisionContext) -> Result<Scalar> {
    if !(*k > 0 && *k < 1) {
        return Err(Error::Domain(format!("modulus must lie in (0, 1), got {}", k.to_f64())));
    }
    Ok((1u32 - ctx.real(k * k)).sqrt())
}

/// Builds the consistent `(k, k′, K, K′, q)` bundle for `0 < k < 1`.
pub fn elliptic_bundle(k: &Scalar, ctx: &PrecisionContext) -> Result<EllipticData> {
    let k_prime = complementary(k, ctx)?;
    let one = ctx.real(1);
    let big_k = ctx.pi() / (agm(&one, &k_prime)? * 2u32);
    let big_k_prime = ctx.pi() / (agm(&one, k)? * 2u32);
    let q = (-(ctx.pi() * &big_k_prime) / &big_k).exp();
    Ok(EllipticData { k: ctx.real(k), k_prime, big_k, big_k_prime, q })
}

/// `Σ_{n≥0} (−1)^n arctan q^{(2n+1)/2}`, which equals `arcsin(k)/4`.
///
/// Alternating with decreasing terms, so the remainder after index `N` is
/// bounded by `q^{(2N+3)/2} / (1 − q)`.
pub fn modular_angle_series(bundle: &EllipticData, ctx: &PrecisionContext) -> SeriesOutcome {
    let q = ctx.real(&bundle.q);
    let sqrt_q = q.clone().sqrt();
    let one_minus_q = 1u32 - q.clone();
    // q^{(2n+1)/2} = √q · q^n, advanced incrementally in index order.
    let mut power = sqrt_q.clone();
    sum_with_tail(
        0,
        |n| {
            let term = power.clone().atan();
            power *= &q;
            if n % 2 == 0 {
                term
            } else {
                -term
            }
        },
        |n| int_pow(&q, n as u32 + 1) * &sqrt_q / &one_minus_q,
        ctx,
    )
}

/// `arcsin(k)/4`, the closed form the modular-angle series must reproduce.
pub fn quarter_modular_angle(k: &Scalar, ctx: &PrecisionContext) -> Scalar {
    ctx.real(k).asin() / 4u32
}
