//! Minimal complex arithmetic over [`Scalar`] components.

use std::ops::{Add, Mul, Neg, Sub};

use rug::Float;

use crate::error::{Error, Result};
use crate::precision::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexScalar {
    pub re: Scalar,
    pub im: Scalar,
}

impl ComplexScalar {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        Self { re, im }
    }

    pub fn real(re: Scalar) -> Self {
        let im = Float::new(re.prec());
        Self { re, im }
    }

    /// `r·e^{iθ}`.
    pub fn from_polar(r: &Scalar, theta: &Scalar) -> Self {
        let (s, c) = theta.clone().sin_cos(Float::new(theta.prec()));
        Self { re: Float::with_val(r.prec(), r * c), im: Float::with_val(r.prec(), r * s) }
    }

    pub fn i(prec: u32) -> Self {
        Self { re: Float::new(prec), im: Float::with_val(prec, 1) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> Scalar {
        Float::with_val(self.prec(), self.re.clone().square() + self.im.clone().square())
    }

    pub fn abs(&self) -> Scalar {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    /// Principal argument in `(−π, π]`.
    pub fn arg(&self) -> Scalar {
        let im = self.im.clone();
        if self.re.is_zero() && im.is_zero() {
            return Float::new(self.prec());
        }
        let mut out = im;
        out.atan2_mut(&self.re);
        // atan2(-0, x<0) would give -π; normalise the branch cut onto +π.
        if self.im.is_zero() && self.re.is_sign_negative() {
            out = out.abs();
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Self {
            re: Float::with_val(self.prec(), &self.re * k),
            im: Float::with_val(self.prec(), &self.im * k),
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let denom = rhs.norm_sqr();
        if denom.is_zero() {
            return Err(Error::Domain("complex division by zero".into()));
        }
        let re = Float::with_val(self.prec(), &self.re * &rhs.re) + &self.im * &rhs.im;
        let im = Float::with_val(self.prec(), &self.im * &rhs.re) - &self.re * &rhs.im;
        Ok(Self { re: re / &denom, im: im / denom })
    }

    /// `sinh(x + iy) = sinh x cos y + i cosh x sin y`.
    pub fn sinh(&self) -> Self {
        let prec = self.prec();
        let (sh, ch) = self.re.clone().sinh_cosh(Float::new(prec));
        let (s, c) = self.im.clone().sin_cos(Float::new(prec));
        Self { re: sh * c, im: ch * s }
    }

    /// Real part of the principal `arctan z`, as `½·arg((1+iz)/(1−iz))`.
    pub fn atan_re(&self) -> Result<Scalar> {
        let prec = self.prec();
        let one = Float::with_val(prec, 1);
        let iz = Self { re: -self.im.clone(), im: self.re.clone() };
        let num = Self { re: Float::with_val(prec, &one + &iz.re), im: iz.im.clone() };
        let den = Self { re: one - &iz.re, im: -iz.im };
        if den.is_zero() || num.is_zero() {
            return Err(Error::Domain("arctan branch point z = ±i".into()));
        }
        Ok(num.checked_div(&den)?.arg() / 2u32)
    }
}

impl Add for &ComplexScalar {
    type Output = ComplexScalar;
    fn add(self, rhs: Self) -> ComplexScalar {
        ComplexScalar {
            re: Float::with_val(self.prec(), &self.re + &rhs.re),
            im: Float::with_val(self.prec(), &self.im + &rhs.im),
        }
    }
}

impl Sub for &ComplexScalar {
    type Output = ComplexScalar;
    fn sub(self, rhs: Self) -> ComplexScalar {
        ComplexScalar {
            re: Float::with_val(self.prec(), &self.re - &rhs.re),
            im: Float::with_val(self.prec(), &self.im - &rhs.im),
        }
    }
}

impl Mul for &ComplexScalar {
    type Output = ComplexScalar;
    fn mul(self, rhs: Self) -> ComplexScalar {
        let prec = self.prec();
        let re = Float::with_val(prec, &self.re * &rhs.re) - Float::with_val(prec, &self.im * &rhs.im);
        let im = Float::with_val(prec, &self.re * &rhs.im) + Float::with_val(prec, &self.im * &rhs.re);
        ComplexScalar { re, im }
    }
}

impl Neg for ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        ComplexScalar { re: -self.re, im: -self.im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::PrecisionContext;

    #[test]
    fn arg_branch() {
        let c = PrecisionContext::default();
        let minus_one = ComplexScalar::real(c.real(-1));
        assert_eq!(minus_one.arg(), c.pi());
        let down = ComplexScalar::new(c.zero(), c.real(-2));
        assert_eq!(down.arg(), -(c.pi() / 2u32));
    }

    #[test]
    fn atan_re_matches_real_atan() {
        let c = PrecisionContext::default();
        for x in [-3.5, -0.2, 0.0, 0.7, 12.0] {
            let z = ComplexScalar::real(c.real(x));
            let diff = z.atan_re().unwrap() - c.real(x).atan();
            assert!(diff.abs() < c.pow10(-65), "x = {x}");
        }
        assert!(ComplexScalar::i(c.prec()).atan_re().is_err());
    }

    #[test]
    fn division_inverts_multiplication() {
        let c = PrecisionContext::default();
        let a = ComplexScalar::new(c.real(0.3), c.real(-1.7));
        let b = ComplexScalar::new(c.real(2.1), c.real(0.4));
        let back = (&a * &b).checked_div(&b).unwrap();
        assert!((back.re - &a.re).abs() < c.pow10(-65));
        assert!((back.im - &a.im).abs() < c.pow10(-65));
        assert!(a.checked_div(&ComplexScalar::real(c.zero())).is_err());
    }
}
