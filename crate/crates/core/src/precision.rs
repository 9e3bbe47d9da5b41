//! Multiple-precision scalar contract shared by every evaluator.
//!
//! Scalars are MPFR floats (through `rug`). A [`PrecisionContext`] fixes the
//! reporting precision in decimal digits; arithmetic runs with
//! [`GUARD_DIGITS`] extra digits so that identities can be checked well below
//! the reporting tolerance.

use std::cmp::Ordering;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Assign, Float};

use crate::error::{Error, Result};

/// Carrier for every real quantity.
pub type Scalar = Float;

/// Extra working digits carried beyond the reporting precision.
pub const GUARD_DIGITS: u32 = 10;

/// Smallest accepted reporting precision.
pub const MIN_DIGITS: u32 = 15;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Above this exponent integer powers go through `exp(e·ln|b|)`.
pub const DIRECT_POW_LIMIT: u32 = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct PrecisionContext {
    digits: u32,
    verify_tolerance: Scalar,
    max_terms: u64,
    tail_target: Scalar,
}

impl PrecisionContext {
    /// Context at `digits` reporting digits with the default tolerance tier.
    ///
    /// The tier is `10^-max(digits-20, digits/2)`, capped so that at least
    /// ten digits separate the tolerance from the last reported digit:
    /// 30 digits gives 1e-15, 60 gives 1e-40, 100 gives 1e-80.
    pub fn new(digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::InvalidParam(format!(
                "digits must be at least {MIN_DIGITS}, got {digits}"
            )));
        }
        let tol_exp = default_tolerance_exponent(digits);
        let prec = working_prec(digits);
        Ok(Self {
            digits,
            verify_tolerance: pow10_at(prec, -(tol_exp as i32)),
            max_terms: 100_000,
            tail_target: pow10_at(prec, -(tol_exp as i32) - 5),
        })
    }

    pub fn with_tolerance(mut self, tol: Scalar) -> Result<Self> {
        let floor = self.pow10(-(self.digits as i32) + 10);
        if !tol.is_finite() || tol < floor {
            return Err(Error::InvalidParam(format!(
                "verify tolerance {} is below the guard-digit floor 1e{}",
                tol.to_f64(),
                -(self.digits as i32) + 10
            )));
        }
        self.verify_tolerance = Float::with_val(self.prec(), tol);
        Ok(self)
    }

    pub fn with_tail_target(mut self, target: Scalar) -> Result<Self> {
        if !target.is_finite() || target <= 0 {
            return Err(Error::InvalidParam("tail target must be positive".into()));
        }
        self.tail_target = Float::with_val(self.prec(), target);
        Ok(self)
    }

    pub fn with_max_terms(mut self, max_terms: u64) -> Result<Self> {
        if max_terms == 0 {
            return Err(Error::InvalidParam("max_terms must be at least 1".into()));
        }
        self.max_terms = max_terms;
        Ok(self)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Working precision in bits, guard digits included.
    pub fn prec(&self) -> u32 {
        working_prec(self.digits)
    }

    pub fn verify_tolerance(&self) -> &Scalar {
        &self.verify_tolerance
    }

    pub fn tail_target(&self) -> &Scalar {
        &self.tail_target
    }

    pub fn max_terms(&self) -> u64 {
        self.max_terms
    }

    pub fn real<T>(&self, value: T) -> Scalar
    where
        Float: Assign<T>,
    {
        Float::with_val(self.prec(), value)
    }

    pub fn zero(&self) -> Scalar {
        Float::new(self.prec())
    }

    /// `p / q` evaluated at working precision.
    pub fn ratio(&self, p: i64, q: i64) -> Scalar {
        Float::with_val(self.prec(), p) / q
    }

    pub fn pi(&self) -> Scalar {
        Float::with_val(self.prec(), Constant::Pi)
    }

    /// `π·p/q`.
    pub fn pi_ratio(&self, p: i64, q: i64) -> Scalar {
        self.pi() * p / q
    }

    pub fn sqrt_int(&self, v: u32) -> Scalar {
        self.real(v).sqrt()
    }

    pub fn pow10(&self, exp: i32) -> Scalar {
        pow10_at(self.prec(), exp)
    }

    pub fn within_tolerance(&self, residual: &Scalar) -> bool {
        residual.is_finite() && residual.clone().abs() <= self.verify_tolerance
    }

    /// Parses a decimal string, or a product/quotient of decimals and the
    /// constants `pi` and `e` (e.g. `pi/2`, `2*pi/3`, `0.25*e`).
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        parse_scalar(text, self.prec())
    }

    /// Same context, `extra` more reporting digits, tolerance tier recomputed.
    pub fn raised(&self, extra: u32) -> Self {
        let mut next = Self::new(self.digits + extra).expect("raising digits keeps the context valid");
        next.max_terms = self.max_terms;
        next
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::new(60).expect("60 digits is a valid precision")
    }
}

fn default_tolerance_exponent(digits: u32) -> u32 {
    let tier = (digits.saturating_sub(20)).max(digits / 2);
    tier.min(digits - 10)
}

pub(crate) fn working_prec(digits: u32) -> u32 {
    ((digits + GUARD_DIGITS) as f64 * LOG2_10).ceil() as u32 + 4
}

fn pow10_at(prec: u32, exp: i32) -> Scalar {
    let ten = Float::with_val(prec, 10);
    ten.pow(exp)
}

fn parse_scalar(text: &str, prec: u32) -> Result<Scalar> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    let mut acc: Option<Scalar> = None;
    let mut pending_div = false;
    let mut rest = trimmed;
    loop {
        let split = rest.find(['*', '/']);
        let (token, tail) = match split {
            Some(i) => (&rest[..i], Some(&rest[i..])),
            None => (rest, None),
        };
        let value = parse_atom(token.trim(), prec)?;
        acc = Some(match acc {
            None => value,
            Some(a) if pending_div => {
                if value.is_zero() {
                    return Err(Error::Parse(format!("division by zero in `{text}`")));
                }
                a / value
            }
            Some(a) => a * value,
        });
        match tail {
            None => break,
            Some(t) => {
                pending_div = t.starts_with('/');
                rest = &t[1..];
            }
        }
    }
    Ok(acc.expect("at least one atom"))
}

fn parse_atom(token: &str, prec: u32) -> Result<Scalar> {
    let (negative, body) = match token.strip_prefix('-') {
        Some(b) => (true, b.trim()),
        None => (false, token),
    };
    let value = match body {
        "pi" | "π" => Float::with_val(prec, Constant::Pi),
        "e" => Float::with_val(prec, 1).exp(),
        _ => {
            let parsed = Float::parse(body).map_err(|e| Error::Parse(format!("`{token}`: {e}")))?;
            Float::with_val(prec, parsed)
        }
    };
    Ok(if negative { -value } else { value })
}

/// `base^exp` for a non-negative integer exponent.
///
/// Exponents up to [`DIRECT_POW_LIMIT`] use square-and-multiply; larger ones
/// go through `exp(exp·ln|base|)` with the sign tracked separately.
pub fn int_pow(base: &Scalar, exp: u32) -> Scalar {
    if exp <= DIRECT_POW_LIMIT {
        let mut result = Float::with_val(base.prec(), 1);
        let mut square = base.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result *= &square;
            }
            e >>= 1;
            if e > 0 {
                square.square_mut();
            }
        }
        return result;
    }
    if base.is_zero() {
        return Float::new(base.prec());
    }
    let magnitude = (base.clone().abs().ln() * exp).exp();
    if base.is_sign_negative() && exp % 2 == 1 {
        -magnitude
    } else {
        magnitude
    }
}

/// `base^exp` for a signed exponent.
pub fn signed_pow(base: &Scalar, exp: i64) -> Scalar {
    let p = int_pow(base, exp.unsigned_abs() as u32);
    if exp < 0 {
        p.recip()
    } else {
        p
    }
}

/// Solution `α` of `sinh α = c`, as `ln(c + sqrt(1 + c²))`.
///
/// Negative arguments use oddness to avoid cancellation inside the logarithm.
pub fn asinh_solve(c: &Scalar) -> Scalar {
    if c.is_sign_negative() && !c.is_zero() {
        return -asinh_solve(&Float::with_val(c.prec(), -c));
    }
    let radicand = Float::with_val(c.prec(), c * c) + 1u32;
    (radicand.sqrt() + c).ln()
}

/// Non-negative solution `α` of `cosh α = c` for `c ≥ 1`.
pub fn acosh_solve(c: &Scalar) -> Result<Scalar> {
    if c.is_nan() || *c < 1 {
        return Err(Error::Domain(format!("acosh_solve needs c >= 1, got {}", c.to_f64())));
    }
    let radicand = Float::with_val(c.prec(), c * c) - 1u32;
    Ok((radicand.sqrt() + c).ln())
}

/// A truncated infinite sum together with its certified remainder bound.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesOutcome {
    pub value: Scalar,
    pub terms_used: u64,
    /// Bound on the magnitude of everything after the last summed term.
    pub tail_bound: Scalar,
    pub converged: bool,
}

/// Sums `term(start), term(start+1), …` in increasing index order until
/// `tail_bound(N)` — a caller-certified bound on `|Σ_{n>N} term(n)|` — drops
/// to the context's tail target, or `max_terms` terms have been added.
pub fn sum_with_tail<T, B>(start: u64, mut term: T, mut tail_bound: B, ctx: &PrecisionContext) -> SeriesOutcome
where
    T: FnMut(u64) -> Scalar,
    B: FnMut(u64) -> Scalar,
{
    let mut value = ctx.zero();
    let mut terms_used = 0;
    let mut index = start;
    loop {
        value += term(index);
        terms_used += 1;
        let bound = tail_bound(index);
        if bound.partial_cmp(ctx.tail_target()) != Some(Ordering::Greater) {
            return SeriesOutcome { value, terms_used, tail_bound: bound, converged: true };
        }
        if terms_used >= ctx.max_terms() {
            return SeriesOutcome { value, terms_used, tail_bound: bound, converged: false };
        }
        index += 1;
    }
}
