//! The saddle-point variable: ½η² = λ − 1 − ln λ with sign(η) = sign(λ − 1).
//!
//! Every point carries μ = λ − 1 and η as double-double pairs. The Laurent
//! form of the coefficients subtracts large multiples of μ^{-k} and η^{-k},
//! so the two must agree with each other far beyond double precision.

use crate::dd::DoubleDouble;
use crate::error::{domain, Result};

/// A coordinate on the real λ axis together with its image η.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MappedPoint {
    pub lambda: f64,
    /// λ − 1, stored rather than recomputed.
    pub mu: f64,
    pub eta: f64,
    mu_lo: f64,
    eta_lo: f64,
    /// ½η² = μ − ln(1 + μ) in double-double.
    half_eta2: DoubleDouble,
}

impl MappedPoint {
    /// Point for λ = z/a, with λ − 1 = (z − a)/a formed without cancellation.
    pub fn from_ratio(z: f64, a: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() || !(z > 0.0) || !z.is_finite() {
            return Err(domain(format!("mapping needs a > 0, z > 0 (a = {a}, z = {z})")));
        }
        let mu = DoubleDouble::sum(z, -a) / DoubleDouble::new(a);
        Ok(Self::from_mu(mu, z / a))
    }

    pub(crate) fn from_mu(mu: DoubleDouble, lambda: f64) -> Self {
        let d = log1pmx(mu);
        let r = (d.ldexp(1)).sqrt();
        let eta = if mu.hi < 0.0 { -r } else { r };
        Self::from_parts(lambda, mu, eta, d)
    }

    fn from_parts(lambda: f64, mu: DoubleDouble, eta: DoubleDouble, half_eta2: DoubleDouble) -> Self {
        Self {
            lambda,
            mu: mu.hi,
            eta: eta.hi,
            mu_lo: mu.lo,
            eta_lo: eta.lo,
            half_eta2,
        }
    }

    pub fn mu_dd(&self) -> DoubleDouble {
        DoubleDouble { hi: self.mu, lo: self.mu_lo }
    }

    pub fn eta_dd(&self) -> DoubleDouble {
        DoubleDouble { hi: self.eta, lo: self.eta_lo }
    }

    /// ½η² in double-double.
    pub fn half_eta_sq(&self) -> DoubleDouble {
        self.half_eta2
    }

    /// f(η) = η/(λ − 1), equal to 1 at the transition point.
    pub fn f(&self) -> f64 {
        if self.mu == 0.0 {
            1.0
        } else {
            (self.eta_dd() / self.mu_dd()).to_f64()
        }
    }

    /// dλ/dη = λη/(λ − 1).
    pub fn dlambda_deta(&self) -> f64 {
        self.lambda * self.f()
    }
}

/// μ − ln(1 + μ) for μ > −1, in double-double.
///
/// With s = μ/(2 + μ) this is μs − 2s³ Σ s^{2k}/(2k + 3), which has no
/// cancellation near μ = 0; elsewhere the logarithm is subtracted directly.
pub(crate) fn log1pmx(mu: DoubleDouble) -> DoubleDouble {
    if mu.hi.abs() <= 0.5 {
        let s = mu / (DoubleDouble::new(2.0) + mu);
        let s2 = s * s;
        let mut power = DoubleDouble::ONE;
        let mut tail = DoubleDouble::new(1.0 / 3.0) + DoubleDouble::new(1.850_371_707_708_594e-17);
        for k in 1..80 {
            power = power * s2;
            let term = power / DoubleDouble::new((2 * k + 3) as f64);
            tail = tail + term;
            if term.hi.abs() <= 1e-33 * tail.hi {
                break;
            }
        }
        mu * s - (s * s2 * tail).ldexp(1)
    } else {
        mu - (DoubleDouble::ONE + mu).ln()
    }
}

fn log1pmx_f64(mu: f64) -> f64 {
    if mu.abs() <= 0.5 {
        let s = mu / (2.0 + mu);
        let s2 = s * s;
        let mut power = 1.0;
        let mut tail = 1.0 / 3.0;
        for k in 1..40 {
            power *= s2;
            let term = power / (2 * k + 3) as f64;
            tail += term;
            if term <= 1e-17 * tail {
                break;
            }
        }
        mu * s - 2.0 * s * s2 * tail
    } else {
        mu - mu.ln_1p()
    }
}

/// Forward map λ → η.
pub fn eta_from_lambda(lambda: f64) -> Result<MappedPoint> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(domain(format!("eta_from_lambda: lambda = {lambda} must be positive and finite")));
    }
    Ok(MappedPoint::from_mu(DoubleDouble::sum(lambda, -1.0), lambda))
}

/// Inverse map η → λ on the branch sign(λ − 1) = sign(η).
///
/// Newton in double precision to about 1e-10 relative, then two Newton
/// steps in double-double so that μ matches η to ~1e-30. For η < −1 the
/// double-precision phase iterates on t = ln λ, where the equation
/// e^t − 1 − t = ½η² is well scaled. Below η ≈ −37.6 λ underflows; it is
/// held at the smallest positive normal double.
pub fn lambda_from_eta(eta: f64) -> Result<MappedPoint> {
    if !eta.is_finite() {
        return Err(domain("lambda_from_eta: eta must be finite"));
    }
    if eta == 0.0 {
        return Ok(MappedPoint::from_mu(DoubleDouble::ZERO, 1.0));
    }
    let target = DoubleDouble::prod(eta, eta).ldexp(-1);
    let h = target.hi;

    let mu = if eta.abs() <= 1e-3 {
        DoubleDouble::new(
            eta * (1.0 + eta * (1.0 / 3.0 + eta * (1.0 / 36.0 + eta * (-1.0 / 270.0 + eta / 4320.0)))),
        )
    } else if eta < -1.0 {
        let mut t = -1.0 - h;
        for _ in 0..30 {
            let em1 = t.exp_m1();
            let dt = (em1 - t - h) / em1;
            t -= dt;
            if dt.abs() <= 1e-10 * t.abs() {
                break;
            }
        }
        let lambda = t.exp();
        if lambda < f64::MIN_POSITIVE {
            let mu = DoubleDouble::sum(f64::MIN_POSITIVE, -1.0);
            return Ok(MappedPoint::from_parts(f64::MIN_POSITIVE, mu, DoubleDouble::new(eta), log1pmx(mu)));
        }
        // λ − 1 kept exactly; exp_m1 would round tiny λ away
        DoubleDouble::sum(lambda, -1.0)
    } else {
        let mut mu = if eta > 1.0 { h + 1.0 } else { eta };
        for _ in 0..30 {
            let step = (log1pmx_f64(mu) - h) * (1.0 + mu) / mu;
            let next = mu - step;
            // keep the iterate on the correct branch
            mu = if next.signum() != eta.signum() || next <= -1.0 { 0.5 * mu } else { next };
            if step.abs() <= 1e-10 * mu.abs() {
                break;
            }
        }
        DoubleDouble::new(mu)
    };

    let mut mu = mu;
    for _ in 0..2 {
        let lambda = DoubleDouble::ONE + mu;
        if lambda.hi <= 0.0 {
            break;
        }
        let step = (log1pmx(mu) - target) * lambda / mu;
        mu = mu - step;
    }
    let lambda = (DoubleDouble::ONE + mu).to_f64();
    Ok(MappedPoint::from_parts(lambda, mu, DoubleDouble::new(eta), log1pmx(mu)))
}

/// ½ζ² = t − 1 − ln t; the same map under the quadrature variable names.
pub fn t_from_zeta(zeta: f64) -> Result<f64> {
    Ok(lambda_from_eta(zeta)?.lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forward_examples() {
        assert_eq!(eta_from_lambda(1.0).unwrap().eta, 0.0);
        let e = eta_from_lambda(std::f64::consts::E).unwrap();
        assert!((e.eta - 1.198_567_335_162_313_9).abs() < 2e-16);
        let h = eta_from_lambda(0.5).unwrap();
        assert!((h.eta + 0.621_525_833_026_987_4).abs() < 2e-16);
        assert!(eta_from_lambda(0.0).is_err());
        assert!(eta_from_lambda(-2.0).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(lambda_from_eta(0.0).unwrap().lambda, 1.0);
        let p = lambda_from_eta(1.198_567_335_162_313_9).unwrap();
        assert!((p.lambda - std::f64::consts::E).abs() < 1e-15);
        let eta = 1e-4;
        let q = lambda_from_eta(eta).unwrap();
        let head = eta + eta * eta / 3.0 + eta.powi(3) / 36.0;
        assert!((q.mu - head).abs() < 1e-17);
    }

    #[test]
    fn stored_mu_is_exact() {
        for &l in &[1e-3, 0.3, 0.999_999, 1.000_001, 3.7, 42.0] {
            let p = eta_from_lambda(l).unwrap();
            assert_eq!(p.mu_dd().to_f64(), l - 1.0);
            assert_eq!((DoubleDouble::ONE + p.mu_dd()).to_f64(), l);
        }
    }

    #[test]
    fn ratio_matches_lambda_form() {
        let p = MappedPoint::from_ratio(90.0, 100.25).unwrap();
        let q = eta_from_lambda(90.0 / 100.25).unwrap();
        assert!((p.eta - q.eta).abs() < 1e-15);
        assert!(MappedPoint::from_ratio(0.0, 1.0).is_err());
    }

    #[test]
    fn tiny_mu_has_no_cancellation() {
        for &mu in &[1e-12, -1e-12, 1e-7, -3e-5, 1e-3, -1e-3] {
            let d = log1pmx(DoubleDouble::new(mu)).to_f64();
            let series: f64 = (2..12).rev().map(|k| (-mu).powi(k) / k as f64).sum();
            assert!(((d - series) / series).abs() < 1e-15, "mu = {mu}");
        }
    }

    #[test]
    fn log1pmx_branches_agree_at_switch() {
        for &mu in &[0.5, -0.5] {
            let a = log1pmx(DoubleDouble::new(mu));
            let b = DoubleDouble::new(mu) - (DoubleDouble::ONE + DoubleDouble::new(mu)).ln();
            assert!(((a - b).to_f64() / b.to_f64()).abs() < 1e-30);
        }
    }

    #[test]
    fn inverse_is_consistent_in_double_double() {
        for &eta in &[-30.0, -6.0, -1.5, -1.0, -0.3, 1e-6, 0.45, 0.9, 2.0, 6.0] {
            let p = lambda_from_eta(eta).unwrap();
            let half = DoubleDouble::prod(eta, eta).ldexp(-1);
            let err = (p.half_eta_sq() - half).to_f64().abs();
            // for η < −1, λ itself is a single double and limits the match
            let tol = if eta < -1.0 { 4.0 * f64::EPSILON } else { 1e-28 * half.hi };
            assert!(err <= tol, "eta = {eta}: {err}");
        }
    }

    #[test]
    fn far_negative_eta_saturates() {
        let p = lambda_from_eta(-40.0).unwrap();
        assert!(p.lambda > 0.0);
        assert_eq!(p.eta, -40.0);
    }

    #[test]
    fn f_and_derivative() {
        assert_eq!(eta_from_lambda(1.0).unwrap().f(), 1.0);
        assert_eq!(eta_from_lambda(1.0).unwrap().dlambda_deta(), 1.0);
        let p = eta_from_lambda(2.0).unwrap();
        assert!((p.f() - 0.783_393_667_883_593_1).abs() < 2e-16);
        // derivative against central differences
        for &eta in &[-2.0, -0.5, 0.3, 1.7] {
            let h = 1e-5;
            let fd = (lambda_from_eta(eta + h).unwrap().lambda - lambda_from_eta(eta - h).unwrap().lambda)
                / (2.0 * h);
            let an = lambda_from_eta(eta).unwrap().dlambda_deta();
            assert!(((fd - an) / an).abs() < 1e-8, "eta = {eta}");
        }
    }

    #[test]
    fn t_from_zeta_aliases_inverse() {
        assert_eq!(t_from_zeta(0.0).unwrap(), 1.0);
        assert_eq!(t_from_zeta(-0.7).unwrap(), lambda_from_eta(-0.7).unwrap().lambda);
    }
}
