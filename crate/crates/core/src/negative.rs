//! Functions at negative parameter −a on the negative real axis:
//! γ*(−a, −z), the branch values Γ(−a, ze^{±iπ}) and γ(−a, ze^{±iπ}), and
//! the normalized γ̃_a(z).
//!
//! With x = η√(a/2) and B = F(x)/√π + T_a(η)/√(2πa), every quantity here is
//! a short combination of B, e^{−x²}, sin πa and cos πa times a large
//! scale e^{x²}, z^a or 1/Γ(a+1). The scale is kept as a logarithm.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dd::DoubleDouble;
use crate::error::{domain, Result};
use crate::expansion::{t_series, transition_variable, EvalResult, PhasedComplex, Regime, ScaledReal};
use crate::mapping::MappedPoint;
use crate::special::{cospi, dawson, gamma_star, is_integer, ln_gamma_dd, sinpi};

const SQRT_PI: f64 = 1.772_453_850_905_516;
const SQRT_2PI: f64 = 2.506_628_274_631_000_7;

/// Which continuation onto the negative axis: z e^{+iπ} or z e^{−iπ}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

struct Parts {
    /// x² = ½aη²
    x2: DoubleDouble,
    e_minus_x2: f64,
    /// F(x)/√π + T/√(2πa)
    b: f64,
    /// truncation estimate carried into the units of `b`
    b_est: f64,
    t: EvalResult<f64>,
    /// √(2/a) F(x) + T/a
    gtilde_bracket: f64,
}

fn parts(a: f64, z: f64, order: usize) -> Result<Parts> {
    check_args(a, z)?;
    let p = MappedPoint::from_ratio(z, a)?;
    let t = t_series(a, &p, order)?;
    let (x, x2) = transition_variable(a, &p);
    let f = dawson(x);
    let root = SQRT_2PI * a.sqrt();
    Ok(Parts {
        x2,
        e_minus_x2: (-x2.hi).exp() * (1.0 - x2.lo),
        b: f / SQRT_PI + t.value / root,
        b_est: t.est_truncation / root,
        gtilde_bracket: (2.0 / a).sqrt() * f + t.value / a,
        t,
    })
}

fn check_args(a: f64, z: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain(format!("a = {a} must be positive and finite")));
    }
    if !(z > 0.0) || !z.is_finite() {
        return Err(domain(format!("z = {z} must be positive and finite")));
    }
    Ok(())
}

fn reject_integer(a: f64, what: &str) -> Result<()> {
    if is_integer(a) {
        Err(domain(format!("{what} is undefined for integer a (a = {a})")))
    } else {
        Ok(())
    }
}

/// γ*(−a, −z) as mantissa and log-scale.
///
/// γ*(−a, −z) = z^a [cos πa − 2 sin πa e^{x²} B]; the scale is a ln z + x².
/// Integer a gives (−z)^a exactly, without going through sin πa.
pub fn gamma_star_neg_scaled(a: f64, z: f64, order: usize) -> Result<EvalResult<ScaledReal>> {
    check_args(a, z)?;
    let a_ln_z = DoubleDouble::new(a) * DoubleDouble::new(z).ln();
    if is_integer(a) {
        return Ok(EvalResult {
            value: ScaledReal::from_dd_scale(cospi(a), a_ln_z),
            regime: Regime::ExactIntegerA,
            order_used: 0,
            est_truncation: 0.0,
        });
    }
    let q = parts(a, z, order)?;
    let s = sinpi(a);
    let mantissa = cospi(a) * q.e_minus_x2 - 2.0 * s * q.b;
    Ok(EvalResult {
        value: ScaledReal::from_dd_scale(mantissa, a_ln_z + q.x2),
        regime: q.t.regime,
        order_used: order,
        est_truncation: 2.0 * s.abs() * q.b_est,
    })
}

/// γ*(−a, −z), real for real a and z.
pub fn gamma_star_neg(a: f64, z: f64, order: usize) -> Result<EvalResult<f64>> {
    check_args(a, z)?;
    if is_integer(a) && a <= i32::MAX as f64 {
        let v = (-z).powi(a as i32);
        if v.is_finite() {
            return Ok(EvalResult {
                value: v,
                regime: Regime::ExactIntegerA,
                order_used: 0,
                est_truncation: 0.0,
            });
        }
    }
    let r = gamma_star_neg_scaled(a, z, order)?;
    let scale = r.value.ln_scale.exp();
    let value = r.value.to_f64()?;
    Ok(EvalResult {
        est_truncation: r.est_truncation * scale,
        ..r.map(|_| value)
    })
}

/// γ̃_a(z) = −(a/(πΓ*(a))) [√(2/a) F(x) + T_a(η)/a].
///
/// The sin πa component of γ*(−a, −z) without its e^z Γ(a) scale:
/// γ*(−a, −z) = z^a cos πa + sin πa Γ(a) e^z γ̃_a(z).
pub fn gtilde(a: f64, z: f64, order: usize) -> Result<EvalResult<f64>> {
    check_args(a, z)?;
    reject_integer(a, "gtilde")?;
    let q = parts(a, z, order)?;
    let g = gamma_star(a)?;
    let scale = a / (PI * g);
    Ok(EvalResult {
        value: -scale * q.gtilde_bracket,
        regime: q.t.regime,
        order_used: order,
        est_truncation: q.t.est_truncation / (PI * g),
    })
}

/// Γ(−a, z e^{±iπ}) with the phase e^{∓iπa} and the scale
/// e^{x²}/Γ(a+1) kept apart from the mantissa.
pub fn gamma_upper_neg_scaled(a: f64, z: f64, branch: Branch, order: usize) -> Result<EvalResult<PhasedComplex>> {
    let q = parts(a, z, order)?;
    let ln_scale = q.x2 - ln_gamma_dd(a + 1.0)?;
    let fold = 1.0 + ln_scale.lo;
    let s = branch.sign();
    let mantissa = Complex64::new(-2.0 * PI * q.b, -s * PI * q.e_minus_x2) * fold;
    Ok(EvalResult {
        value: PhasedComplex {
            phase: -s * a,
            mantissa,
            ln_scale: ln_scale.hi,
        },
        regime: q.t.regime,
        order_used: order,
        est_truncation: 2.0 * PI * q.b_est,
    })
}

/// Γ(−a, z e^{±iπ}) as a complex number; Overflow when it is not
/// representable.
pub fn gamma_upper_neg(a: f64, z: f64, branch: Branch, order: usize) -> Result<EvalResult<Complex64>> {
    let r = gamma_upper_neg_scaled(a, z, branch, order)?;
    let value = r.value.to_complex()?;
    let scale = r.value.ln_scale.exp();
    Ok(EvalResult {
        est_truncation: r.est_truncation * scale,
        ..r.map(|_| value)
    })
}

/// γ(−a, z e^{±iπ}) = −(π/Γ(a+1)) e^{∓iπa} [cot πa − 2e^{x²}B], log-scaled.
pub fn gamma_lower_neg_scaled(a: f64, z: f64, branch: Branch, order: usize) -> Result<EvalResult<PhasedComplex>> {
    check_args(a, z)?;
    reject_integer(a, "gamma_lower_neg")?;
    let q = parts(a, z, order)?;
    let ln_scale = q.x2 - ln_gamma_dd(a + 1.0)?;
    let cot = cospi(a) / sinpi(a);
    let m = -PI * (cot * q.e_minus_x2 - 2.0 * q.b) * (1.0 + ln_scale.lo);
    Ok(EvalResult {
        value: PhasedComplex {
            phase: -branch.sign() * a,
            mantissa: Complex64::new(m, 0.0),
            ln_scale: ln_scale.hi,
        },
        regime: q.t.regime,
        order_used: order,
        est_truncation: 2.0 * PI * q.b_est,
    })
}

/// γ(−a, z e^{±iπ}) as a complex number.
pub fn gamma_lower_neg(a: f64, z: f64, branch: Branch, order: usize) -> Result<EvalResult<Complex64>> {
    let r = gamma_lower_neg_scaled(a, z, branch, order)?;
    let value = r.value.to_complex()?;
    let scale = r.value.ln_scale.exp();
    Ok(EvalResult {
        est_truncation: r.est_truncation * scale,
        ..r.map(|_| value)
    })
}

/// Γ(−a) = −π/(sin πa Γ(a+1)) for non-integer a > 0.
pub fn gamma_neg_scaled(a: f64) -> Result<ScaledReal> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain(format!("a = {a} must be positive and finite")));
    }
    reject_integer(a, "Gamma(-a)")?;
    Ok(ScaledReal::from_dd_scale(-PI / sinpi(a), -ln_gamma_dd(a + 1.0)?))
}

/// |e^{iπa}Γ(−a, ze^{iπ}) − e^{−iπa}Γ(−a, ze^{−iπ}) + 2πi/Γ(a+1)| relative
/// to 2π/Γ(a+1). The phase factors are combined before any rounding.
pub fn connection_residual(a: f64, z: f64, order: usize) -> Result<f64> {
    let plus = gamma_upper_neg_scaled(a, z, Branch::Plus, order)?.value.rotate(a);
    let minus = gamma_upper_neg_scaled(a, z, Branch::Minus, order)?.value.rotate(-a);
    let ln_ref = -ln_gamma_dd(a + 1.0)?.hi;
    let lhs = plus.relative_to(ln_ref) - minus.relative_to(ln_ref);
    let rhs = Complex64::new(0.0, -2.0 * PI);
    Ok((lhs - rhs).norm() / (2.0 * PI))
}

/// |γ(−a, ze^{±iπ}) + Γ(−a, ze^{±iπ}) − Γ(−a)| relative to the largest of
/// the three magnitudes.
pub fn additivity_residual(a: f64, z: f64, branch: Branch, order: usize) -> Result<f64> {
    let lower = gamma_lower_neg_scaled(a, z, branch, order)?.value;
    let upper = gamma_upper_neg_scaled(a, z, branch, order)?.value;
    let whole = gamma_neg_scaled(a)?;
    let ln_ref = lower.ln_scale;
    // undo the common phase, then compare in the common scale
    let back = branch.sign() * a;
    let l = lower.rotate(back).relative_to(ln_ref);
    let u = upper.rotate(back).relative_to(ln_ref);
    let rot = Complex64::new(cospi(back), sinpi(back));
    let w = rot * whole.mantissa * (whole.ln_scale - ln_ref).exp();
    let size = l.norm().max(u.norm()).max(w.norm());
    Ok((l + u - w).norm() / size)
}
