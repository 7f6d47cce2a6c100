//! T_a(η) by the trapezoidal rule on the real ζ line.
//!
//! T_a(η) = −√(a/2π) ∫ e^{−aζ²/2} h(ζ) dζ with h(ζ) = (g(ζ) − 1)/(ζ − η)
//! and g(ζ) = (ζt/(t − 1)) (ζ − η)/(t − λ), where ½ζ² = t − 1 − ln t.
//! The integrand is analytic in a strip, so the trapezoidal rule converges
//! geometrically; the grid is shifted away from the removable points
//! ζ = 0 and ζ = η.

use rug::float::Constant;
use rug::Float;

use negamma::MappedPoint;

use crate::big::{bits_for_digits, BigReal, MIN_DIGITS};
use crate::{OracleError, Result};

/// Target accuracy exponent for the step and window.
const TARGET_DIGITS: f64 = 14.0;

/// Distance from the real axis to the nearest singularity of the
/// integrand: the branch points √(2πk)(±1 ± i) of t(ζ) and the images of
/// ζ = η on the other sheets, ζ² = η² ± 4πi.
fn strip_half_width(eta: f64) -> f64 {
    let branch = (2.0 * std::f64::consts::PI).sqrt();
    let (re, im) = (eta * eta, 4.0 * std::f64::consts::PI);
    // Im √(re + i im)
    let m = (re * re + im * im).sqrt();
    let pole = ((m - re) / 2.0).sqrt();
    branch.min(pole) - 0.1
}

/// t(ζ) at working precision by Newton, seeded from the double-precision
/// inverse map. For ζ < −1 the unknown is ln t.
fn t_of_zeta(zeta: &Float) -> Result<Float> {
    let prec = zeta.prec();
    if zeta.is_zero() {
        return Ok(Float::with_val(prec, 1u32));
    }
    let z64 = zeta.to_f64();
    let seed = negamma::t_from_zeta(z64).map_err(|e| OracleError::Domain(e.to_string()))?;
    let target = Float::with_val(prec, zeta * zeta) / 2u32;
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 8));
    if z64 < -1.0 {
        let mut u = Float::with_val(prec, seed.ln());
        for _ in 0..200 {
            let eu = Float::with_val(prec, u.exp_ref());
            let em1 = Float::with_val(prec, &eu - 1u32);
            let f = Float::with_val(prec, &em1 - &u) - &target;
            let step = f / &em1;
            u -= &step;
            if step.abs() <= tol {
                return Ok(u.exp());
            }
        }
    } else {
        let mut t = Float::with_val(prec, seed);
        for _ in 0..200 {
            let ln_t = Float::with_val(prec, t.ln_ref());
            let f = Float::with_val(prec, &t - 1u32) - ln_t - &target;
            let fp = Float::with_val(prec, 1u32 - Float::with_val(prec, t.recip_ref()));
            let step = f / fp;
            t -= &step;
            if Float::with_val(prec, step.abs() / &t) <= tol {
                return Ok(t);
            }
        }
    }
    Err(OracleError::Quadrature(format!("Newton for t(ζ) did not converge at ζ = {z64}")))
}

/// T_a(η) by quadrature; `a` at least 10 so the Gaussian localizes the
/// integrand.
pub fn t_quadrature(a: f64, p: &MappedPoint, digits: u32) -> Result<BigReal> {
    if !(a >= 10.0) || !a.is_finite() {
        return Err(OracleError::Domain(format!("t_quadrature needs a >= 10 (a = {a})")));
    }
    let digits = digits.max(MIN_DIGITS);
    let prec = bits_for_digits(digits);
    let eta = p.eta;
    let d_ln = TARGET_DIGITS * std::f64::consts::LN_10;
    let window = (2.0 * d_ln / a).sqrt() + 2.0;
    let d = strip_half_width(eta);
    let step = (std::f64::consts::PI * (2.0 / (a * d_ln)).sqrt())
        .min(2.0 * std::f64::consts::PI * d / (d_ln + 0.5 * a * d * d));
    if !(step > 0.0) {
        return Err(OracleError::Quadrature(format!("no admissible step at η = {eta}")));
    }

    // offset θ: midpoint of the larger gap between the residues of η and 0
    let phi = (-eta / step).rem_euclid(1.0);
    let theta = if phi < 0.5 { (phi + 1.0) / 2.0 } else { phi / 2.0 };

    let eta_f = Float::with_val(prec, eta);
    let lambda = t_of_zeta(&eta_f)?;
    let h_f = Float::with_val(prec, step);
    let half_a = Float::with_val(prec, a) / 2u32;
    let k_lo = ((-window - eta) / step - theta).floor() as i64;
    let k_hi = ((window - eta) / step - theta).ceil() as i64;

    let mut sum = Float::with_val(prec, 0u32);
    let mut edge = Float::with_val(prec, 0u32);
    let mut peak = Float::with_val(prec, 0u32);
    for k in k_lo..=k_hi {
        let offset = Float::with_val(prec, k as f64 + theta) * &h_f;
        let zeta = Float::with_val(prec, &eta_f + &offset);
        let t = t_of_zeta(&zeta)?;
        let tm1 = Float::with_val(prec, &t - 1u32);
        let tml = Float::with_val(prec, &t - &lambda);
        let g = Float::with_val(prec, &zeta * &t) / tm1 * &offset / tml;
        let hz = (g - 1u32) / &offset;
        let gauss = Float::with_val(prec, -Float::with_val(prec, &zeta * &zeta) * &half_a).exp();
        let v = gauss * hz;
        let mag = Float::with_val(prec, v.abs_ref());
        if mag > peak {
            peak = mag.clone();
        }
        if k == k_lo || k == k_hi {
            edge = edge.max(&mag);
        }
        sum += v;
    }
    if !peak.is_zero() {
        let rel = Float::with_val(prec, &edge / &peak).to_f64();
        if rel > 10f64.powf(-TARGET_DIGITS) {
            return Err(OracleError::Quadrature(format!(
                "window tail {rel:e} exceeds the 1e-{TARGET_DIGITS} target at η = {eta}"
            )));
        }
    }
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let norm = (Float::with_val(prec, a) / two_pi).sqrt();
    let t_val = -(sum * h_f * norm);
    Ok(BigReal::new(t_val, digits))
}
