//! Multiprecision erf, erfc, Dawson's integral, ln Γ and Γ*.
//!
//! erf and Dawson use their positive-term series, so no cancellation needs
//! to be absorbed; log-gamma is MPFR's.

use rug::float::Constant;
use rug::Float;

use crate::big::{bits_for_digits, BigReal};
use crate::{OracleError, Result};

fn check_finite(x: f64, what: &str) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(OracleError::Domain(format!("{what}: argument must be finite")))
    }
}

/// Σ_{n≥0} p_n / w(n) with p_0 = x and p_n = p_{n−1}·x²·num(n)/den(n);
/// summed until the terms have passed their peak and dropped below the
/// working precision. Integer ratios keep every factor exact.
fn positive_series(x: &Float, prec: u32, ratio: impl Fn(u32) -> (u32, u32), weight: impl Fn(u32) -> u32) -> Float {
    let x2 = Float::with_val(prec, x * x);
    let mut power = x.clone();
    let mut sum = Float::with_val(prec, &power / weight(0));
    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
    let peak = x2.to_f64();
    let mut n = 0u32;
    loop {
        n += 1;
        let (num, den) = ratio(n);
        power *= &x2;
        power *= num;
        power /= den;
        let term = Float::with_val(prec, &power / weight(n));
        sum += &term;
        if n as f64 > peak && term.abs() <= Float::with_val(prec, &sum * &eps).abs() {
            return sum;
        }
    }
}

pub(crate) fn erf_float(x: f64, prec: u32) -> Float {
    // erf x = (2/√π) e^{−x²} Σ 2^n x^{2n+1}/(2n+1)!!
    let xf = Float::with_val(prec, x);
    let s = positive_series(&xf, prec, |n| (2, 2 * n + 1), |_| 1);
    let pi = Float::with_val(prec, Constant::Pi);
    let e = Float::with_val(prec, -(Float::with_val(prec, &xf * &xf))).exp();
    s * e * 2u32 / pi.sqrt()
}

pub fn erf_big(x: f64, digits: u32) -> Result<BigReal> {
    check_finite(x, "erf_big")?;
    Ok(BigReal::new(erf_float(x, bits_for_digits(digits)), digits))
}

/// erfc x = 1 − erf x, with guard bits for the cancellation at x > 0.
pub fn erfc_big(x: f64, digits: u32) -> Result<BigReal> {
    check_finite(x, "erfc_big")?;
    let prec = bits_for_digits(digits);
    let guard = if x > 0.0 { (x * x / std::f64::consts::LN_2).ceil() as u32 + 8 } else { 0 };
    let e = erf_float(x, prec + guard);
    let mut r = Float::with_val(prec + guard, 1u32 - e);
    r.set_prec(prec);
    Ok(BigReal::new(r, digits))
}

/// F(x) = e^{−x²} Σ x^{2n+1}/(n!(2n+1)).
pub fn dawson_big(x: f64, digits: u32) -> Result<BigReal> {
    check_finite(x, "dawson_big")?;
    let prec = bits_for_digits(digits);
    let xf = Float::with_val(prec, x);
    let s = positive_series(&xf, prec, |n| (1, n), |n| 2 * n + 1);
    let e = Float::with_val(prec, -(Float::with_val(prec, &xf * &xf))).exp();
    Ok(BigReal::new(s * e, digits))
}

pub(crate) fn ln_gamma_float(a: &Float) -> Float {
    a.clone().ln_gamma()
}

/// ln Γ(a), a > 0.
pub fn ln_gamma_big(a: f64, digits: u32) -> Result<BigReal> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(OracleError::Domain(format!("ln_gamma_big: a = {a} must be positive")));
    }
    let prec = bits_for_digits(digits);
    Ok(BigReal::new(ln_gamma_float(&Float::with_val(prec, a)), digits))
}

/// Γ*(a) = √(a/2π) e^a a^{−a} Γ(a).
pub fn gamma_star_big(a: f64, digits: u32) -> Result<BigReal> {
    let lg = ln_gamma_big(a, digits)?.into_float();
    let prec = lg.prec();
    let af = Float::with_val(prec, a);
    let ln_a = af.clone().ln();
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let half_log = (Float::with_val(prec, &ln_a - two_pi.ln())) / 2u32;
    let e = lg + &af - Float::with_val(prec, &af * &ln_a) + half_log;
    Ok(BigReal::new(e.exp(), digits))
}
