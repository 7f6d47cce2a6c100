//! Correction series S_a(η), T_a(η) and the ratios P(a, z), Q(a, z).

use num_complex::Complex64;

use crate::coeffs::CoefficientTable;
use crate::dd::DoubleDouble;
use crate::error::{domain, Error, Result};
use crate::mapping::MappedPoint;
use crate::special::{cospi, erfc, sinpi};

/// Default truncation: terms through C_6(η)/a^6.
pub const DEFAULT_ORDER: usize = 6;

const SQRT_2PI: f64 = 2.506_628_274_631_000_7;

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Expansion with coefficients from their Maclaurin series (|η| small).
    Maclaurin,
    /// Expansion with coefficients from their Laurent form.
    Laurent,
    /// Integer a, where the closed form is used.
    ExactIntegerA,
    /// A classical series or continued fraction, not the expansion.
    Direct,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Maclaurin => "maclaurin",
            Regime::Laurent => "laurent",
            Regime::ExactIntegerA => "exact_integer_a",
            Regime::Direct => "direct",
        }
    }
}

/// A value together with how it was computed.
///
/// `est_truncation` is the magnitude of the first omitted term of the
/// correction series, carried through the same prefactor as the value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult<T> {
    pub value: T,
    pub regime: Regime,
    pub order_used: usize,
    pub est_truncation: f64,
}

impl<T> EvalResult<T> {
    pub(crate) fn map<U>(self, f: impl FnOnce(T) -> U) -> EvalResult<U> {
        EvalResult {
            value: f(self.value),
            regime: self.regime,
            order_used: self.order_used,
            est_truncation: self.est_truncation,
        }
    }
}

/// `mantissa · e^{ln_scale}`, for values beyond the double range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledReal {
    pub mantissa: f64,
    pub ln_scale: f64,
}

impl ScaledReal {
    /// Folds the low part of a double-double exponent into the mantissa.
    pub(crate) fn from_dd_scale(mantissa: f64, ln_scale: DoubleDouble) -> Self {
        Self {
            mantissa: mantissa * (1.0 + ln_scale.lo),
            ln_scale: ln_scale.hi,
        }
    }

    /// ln |value|; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        self.mantissa.abs().ln() + self.ln_scale
    }

    pub fn to_f64(&self) -> Result<f64> {
        let v = self.mantissa * self.ln_scale.exp();
        if v.is_finite() && (v != 0.0 || self.mantissa == 0.0 || self.ln_scale < 0.0) {
            Ok(v)
        } else {
            Err(Error::Overflow(format!(
                "value {}·e^{} is outside the double range; use the log-scaled form",
                self.mantissa, self.ln_scale
            )))
        }
    }
}

/// `e^{iπ·phase} · mantissa · e^{ln_scale}`.
///
/// Keeping the phase separate lets e^{±iπa} factors cancel exactly when
/// branch values are combined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasedComplex {
    /// In units of π.
    pub phase: f64,
    pub mantissa: Complex64,
    pub ln_scale: f64,
}

impl PhasedComplex {
    /// Multiplies by e^{iπ·delta}.
    pub fn rotate(self, delta: f64) -> Self {
        Self {
            phase: self.phase + delta,
            ..self
        }
    }

    pub fn conj(self) -> Self {
        Self {
            phase: -self.phase,
            mantissa: self.mantissa.conj(),
            ln_scale: self.ln_scale,
        }
    }

    /// The value divided by e^{ln_ref}.
    pub fn relative_to(&self, ln_ref: f64) -> Complex64 {
        let rot = Complex64::new(cospi(self.phase), sinpi(self.phase));
        rot * self.mantissa * (self.ln_scale - ln_ref).exp()
    }

    pub fn to_complex(&self) -> Result<Complex64> {
        let v = self.relative_to(0.0);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow(format!(
                "complex value with ln-scale {} is outside the double range; use the log-scaled form",
                self.ln_scale
            )))
        }
    }
}

/// Σ_{n=0}^{N} s^n C_n(η)/a^n with s = ±1.
fn correction_series(a: f64, p: &MappedPoint, order: usize, sign: f64) -> Result<EvalResult<f64>> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain(format!("a = {a} must be positive and finite")));
    }
    let table = CoefficientTable::standard();
    table.check_order(order)?;
    let regime = if p.eta.abs() <= table.switch_radius() {
        Regime::Maclaurin
    } else {
        Regime::Laurent
    };
    let inv_a = 1.0 / a;
    let mut value = 0.0;
    let mut weight = 1.0;
    let mut terms = Vec::with_capacity(order + 1);
    for n in 0..=order {
        terms.push(weight * table.eval(n, p)?);
        weight *= sign * inv_a;
    }
    // smallest terms first
    for t in terms.iter().rev() {
        value += t;
    }
    let est_truncation = if order < table.max_order() {
        (weight * table.eval(order + 1, p)?).abs()
    } else {
        terms[order].abs()
    };
    Ok(EvalResult {
        value,
        regime,
        order_used: order,
        est_truncation,
    })
}

/// T_a(η) ≈ Σ (−1)^n C_n(η)/a^n, the series for negative parameters.
pub fn t_series(a: f64, p: &MappedPoint, order: usize) -> Result<EvalResult<f64>> {
    correction_series(a, p, order, -1.0)
}

/// S_a(η) ≈ Σ C_n(η)/a^n.
pub fn s_series(a: f64, p: &MappedPoint, order: usize) -> Result<EvalResult<f64>> {
    correction_series(a, p, order, 1.0)
}

/// x = η√(a/2) and x² = a·(½η²) in double-double.
pub(crate) fn transition_variable(a: f64, p: &MappedPoint) -> (f64, DoubleDouble) {
    let x = p.eta * (0.5 * a).sqrt();
    let x2 = DoubleDouble::new(a) * p.half_eta_sq();
    (x, x2)
}

fn check_positive(a: f64, z: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain(format!("a = {a} must be positive and finite")));
    }
    if !(z > 0.0) || !z.is_finite() {
        return Err(domain(format!("z = {z} must be positive and finite")));
    }
    Ok(())
}

/// Both ratios; the smaller is computed directly and the other as its
/// complement, so P + Q == 1 in floating point.
fn ratios(a: f64, z: f64, order: usize) -> Result<(EvalResult<f64>, EvalResult<f64>)> {
    check_positive(a, z)?;
    let p = MappedPoint::from_ratio(z, a)?;
    let s = s_series(a, &p, order)?;
    let (x, x2) = transition_variable(a, &p);
    let gauss = (-x2.hi).exp() * (1.0 - x2.lo) / (SQRT_2PI * a.sqrt());
    let r = gauss * s.value;
    let est = gauss * s.est_truncation;
    let (q, pv) = if p.eta >= 0.0 {
        let q = 0.5 * erfc(x) + r;
        (q, 1.0 - q)
    } else {
        let pv = 0.5 * erfc(-x) - r;
        (1.0 - pv, pv)
    };
    let wrap = |value| EvalResult {
        value,
        regime: s.regime,
        order_used: order,
        est_truncation: est,
    };
    Ok((wrap(q), wrap(pv)))
}

/// Q(a, z) = Γ(a, z)/Γ(a) from ½erfc(η√(a/2)) + R_a(η).
pub fn q_uniform(a: f64, z: f64, order: usize) -> Result<EvalResult<f64>> {
    Ok(ratios(a, z, order)?.0)
}

/// P(a, z) = γ(a, z)/Γ(a) = 1 − Q(a, z).
pub fn p_uniform(a: f64, z: f64, order: usize) -> Result<EvalResult<f64>> {
    Ok(ratios(a, z, order)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::{eta_from_lambda, lambda_from_eta};

    #[test]
    fn series_at_transition() {
        let p = eta_from_lambda(1.0).unwrap();
        let t0 = t_series(7.0, &p, 0).unwrap();
        assert!((t0.value + 1.0 / 3.0).abs() < 1e-16);
        assert_eq!(t0.regime, Regime::Maclaurin);
        let t1 = t_series(100.0, &p, 1).unwrap();
        assert!((t1.value - (-1.0 / 3.0 + 1.0 / 54000.0)).abs() < 1e-16);
        let s0 = s_series(100.0, &p, 0).unwrap();
        assert!((s0.value + 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn s_plus_t_is_twice_even_part() {
        let table = CoefficientTable::standard();
        for &eta in &[-1.7, -0.4, 0.2, 1.3] {
            let p = lambda_from_eta(eta).unwrap();
            let a = 40.0;
            let s = s_series(a, &p, 6).unwrap().value;
            let t = t_series(a, &p, 6).unwrap().value;
            let even: f64 = (0..=6)
                .step_by(2)
                .map(|n| table.eval(n, &p).unwrap() / a.powi(n as i32))
                .sum();
            assert!((s + t - 2.0 * even).abs() < 1e-15);
        }
    }

    #[test]
    fn series_reports_laurent_regime_and_estimate() {
        let p = lambda_from_eta(1.5).unwrap();
        let r = t_series(100.0, &p, 6).unwrap();
        assert_eq!(r.regime, Regime::Laurent);
        let c7 = CoefficientTable::standard().eval(7, &p).unwrap();
        assert!((r.est_truncation - c7.abs() / 1e14).abs() < 1e-30);
        let full = t_series(100.0, &p, 10).unwrap();
        assert!(full.est_truncation > 0.0);
        assert!(matches!(t_series(100.0, &p, 11), Err(Error::Order { .. })));
    }

    #[test]
    fn q_examples() {
        let q = q_uniform(100.0, 100.0, 6).unwrap();
        assert!((q.value - (0.5 - 1.0 / (3.0 * (200.0 * std::f64::consts::PI).sqrt()))).abs() < 1e-4);
        let tail = q_uniform(100.0, 500.0, 6).unwrap();
        assert!(tail.value < 1e-100 && tail.value > 0.0);
        assert!(q_uniform(0.0, 1.0, 6).is_err());
        assert!(q_uniform(1.0, -1.0, 6).is_err());
    }

    #[test]
    fn p_plus_q_is_one() {
        for &(a, z) in &[(100.0, 50.0), (100.0, 99.9), (100.0, 100.0), (250.0, 300.0), (3.0, 10.0)] {
            let q = q_uniform(a, z, 6).unwrap().value;
            let p = p_uniform(a, z, 6).unwrap().value;
            assert_eq!(p + q, 1.0, "a={a} z={z}");
        }
    }

    #[test]
    fn scaled_real_overflow() {
        let s = ScaledReal {
            mantissa: 2.0,
            ln_scale: 800.0,
        };
        assert!(matches!(s.to_f64(), Err(Error::Overflow(_))));
        assert!((s.ln_abs() - (800.0 + 2f64.ln())).abs() < 1e-12);
        let t = ScaledReal {
            mantissa: -0.5,
            ln_scale: 2.0,
        };
        assert!((t.to_f64().unwrap() + 0.5 * 2f64.exp()).abs() < 1e-15);
    }

    #[test]
    fn phased_rotation_cancels() {
        let v = PhasedComplex {
            phase: -100.25,
            mantissa: Complex64::new(1.0, 2.0),
            ln_scale: 3.0,
        };
        let back = v.rotate(100.25);
        assert_eq!(back.phase, 0.0);
        assert_eq!(back.relative_to(3.0), Complex64::new(1.0, 2.0));
        assert_eq!(v.conj().conj(), v);
    }
}
