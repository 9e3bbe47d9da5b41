//! Gauss–Legendre and trapezoidal quadrature at working precision.
//!
//! These back the integral leg of the logistic-kernel lemma and serve as
//! independent oracles for AGM-based elliptic integrals.

use rug::Float;

use crate::error::{Error, Result};
use crate::precision::Scalar;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<Scalar>,
    weights: Vec<Scalar>,
}

impl GaussLegendre {
    /// `order`-point rule computed by Newton iteration on `P_order` at `prec` bits.
    pub fn new(order: usize, prec: u32) -> Self {
        assert!(order >= 2, "Gauss-Legendre needs at least two nodes");
        let pi = Float::with_val(prec, rug::float::Constant::Pi);
        let mut nodes = vec![Float::new(prec); order];
        let mut weights = vec![Float::new(prec); order];
        let half = order.div_ceil(2);
        for i in 0..half {
            // Chebyshev-like initial guess for the i-th largest root.
            let guess = (Float::with_val(prec, &pi * (4 * i as u32 + 3)) / (4 * order as u32 + 2)).cos();
            let mut x = guess;
            let mut derivative = Float::new(prec);
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(order, &x);
                let step = Float::with_val(prec, &p / &dp);
                x -= &step;
                derivative = dp;
                if step.is_zero() || step.clone().abs().get_exp().is_some_and(|e| e < -(prec as i32) + 2) {
                    let (_, dp) = legendre_with_derivative(order, &x);
                    derivative = dp;
                    break;
                }
            }
            let one_minus = Float::with_val(prec, 1u32 - x.clone().square());
            let w = Float::with_val(prec, 2u32) / (one_minus * derivative.square());
            nodes[i] = x.clone();
            weights[i] = w.clone();
            nodes[order - 1 - i] = -x;
            weights[order - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// `∫_a^b f`.
    pub fn integrate<F>(&self, a: &Scalar, b: &Scalar, mut f: F) -> Scalar
    where
        F: FnMut(&Scalar) -> Scalar,
    {
        let prec = a.prec();
        let half_width = Float::with_val(prec, b - a) / 2u32;
        let mid = Float::with_val(prec, a + b) / 2u32;
        let mut acc = Float::new(prec);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let t = Float::with_val(prec, &half_width * x) + &mid;
            acc += f(&t) * w;
        }
        acc * half_width
    }
}

fn legendre_with_derivative(order: usize, x: &Scalar) -> (Scalar, Scalar) {
    let prec = x.prec();
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = x.clone();
    for k in 2..=order {
        let k = k as u32;
        let p2 = (Float::with_val(prec, x * &p1) * (2 * k - 1) - Float::with_val(prec, &p0 * (k - 1))) / k;
        p0 = std::mem::replace(&mut p1, p2);
    }
    // P'_n(x) = n (x P_n − P_{n−1}) / (x² − 1)
    let denom = Float::with_val(prec, x * x) - 1u32;
    let dp = (Float::with_val(prec, x * &p1) - &p0) * order as u32 / denom;
    (p1, dp)
}

/// Adaptive Gauss–Legendre integration of a smooth integrand on `[a, b]`.
///
/// Each panel is accepted when the `low` and `high` order rules agree to
/// `tol / panels`; otherwise it is bisected, up to `max_depth` times.
pub struct AdaptiveGauss {
    low: GaussLegendre,
    high: GaussLegendre,
    max_depth: u32,
}

impl AdaptiveGauss {
    pub fn new(prec: u32) -> Self {
        Self { low: GaussLegendre::new(24, prec), high: GaussLegendre::new(36, prec), max_depth: 24 }
    }

    pub fn integrate<F>(&self, a: &Scalar, b: &Scalar, tol: &Scalar, f: &F) -> Result<Scalar>
    where
        F: Fn(&Scalar) -> Scalar,
    {
        self.panel(a, b, tol, f, 0)
    }

    fn panel<F>(&self, a: &Scalar, b: &Scalar, tol: &Scalar, f: &F, depth: u32) -> Result<Scalar>
    where
        F: Fn(&Scalar) -> Scalar,
    {
        let coarse = self.low.integrate(a, b, f);
        let fine = self.high.integrate(a, b, f);
        let gap = Float::with_val(a.prec(), &fine - &coarse).abs();
        if gap <= *tol {
            return Ok(fine);
        }
        if depth >= self.max_depth {
            return Err(Error::Quadrature(format!(
                "panel [{}, {}] still off by {} after {depth} bisections",
                a.to_f64(),
                b.to_f64(),
                gap.to_f64()
            )));
        }
        let mid = Float::with_val(a.prec(), a + b) / 2u32;
        let half_tol = Float::with_val(a.prec(), tol / 2u32);
        let left = self.panel(a, &mid, &half_tol, f, depth + 1)?;
        let right = self.panel(&mid, b, &half_tol, f, depth + 1)?;
        Ok(left + right)
    }
}

/// Composite trapezoidal rule with `panels` equal panels.
///
/// For smooth periodic integrands over a full period (or a half period of an
/// even one) the error decays exponentially in `panels`.
pub fn trapezoid<F>(a: &Scalar, b: &Scalar, panels: u32, mut f: F) -> Scalar
where
    F: FnMut(&Scalar) -> Scalar,
{
    let prec = a.prec();
    let h = Float::with_val(prec, b - a) / panels;
    let mut acc = (f(a) + f(b)) / 2u32;
    for i in 1..panels {
        let x = Float::with_val(prec, &h * i) + a;
        acc += f(&x);
    }
    acc * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::PrecisionContext;
    use rug::ops::Pow;

    #[test]
    fn gauss_integrates_polynomials_exactly() {
        let c = PrecisionContext::default();
        let rule = GaussLegendre::new(10, c.prec());
        // Exact for degree ≤ 19.
        let got = rule.integrate(&c.real(0), &c.real(2), |x| x.clone().pow(19u32) * 20u32);
        let expected = c.real(2).pow(20u32);
        assert!((got - expected).abs() < c.pow10(-55));
        let weights: Scalar = rule.weights.iter().fold(c.zero(), |acc, w| acc + w);
        assert!((weights - 2u32).abs() < c.pow10(-65));
    }

    #[test]
    fn adaptive_exponential() {
        let c = PrecisionContext::default();
        let quad = AdaptiveGauss::new(c.prec());
        let got = quad.integrate(&c.real(0), &c.real(5), &c.pow10(-40), &|x: &Scalar| x.clone().exp()).unwrap();
        let expected = c.real(5).exp() - 1u32;
        assert!((got - expected).abs() < c.pow10(-38));
    }

    #[test]
    fn trapezoid_periodic() {
        let c = PrecisionContext::default();
        // ∫_0^{2π} e^{cos x} dx = 2π I_0(1)
        let got = trapezoid(&c.zero(), &(c.pi() * 2u32), 64, |x| x.clone().cos().exp());
        let i0 = c.parse("1.266065877752008335598244625214717537607670311354962206808135").unwrap();
        assert!((got - c.pi() * 2u32 * i0).abs() < c.pow10(-55));
    }
}
