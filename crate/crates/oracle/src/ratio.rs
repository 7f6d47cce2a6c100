//! P(a, z) and Q(a, z) from the power series and the Legendre continued
//! fraction.

use rug::Float;

use crate::big::{bits_for_digits, BigReal, MIN_DIGITS};
use crate::kernels::ln_gamma_float;
use crate::{OracleError, Result};

const MAX_TERMS: u32 = 2_000_000;

fn check(a: f64, z: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() || !(z > 0.0) || !z.is_finite() {
        return Err(OracleError::Domain(format!("need a > 0 and z > 0 (a = {a}, z = {z})")));
    }
    Ok(())
}

/// z^a e^{−z} / Γ(a + shift)
fn prefactor(a: &Float, z: &Float, shift: u32) -> Float {
    let prec = a.prec();
    let lg = ln_gamma_float(&Float::with_val(prec, a + shift));
    let e = Float::with_val(prec, a * Float::with_val(prec, z.ln_ref())) - z - lg;
    e.exp()
}

/// P(a, z) = z^a e^{−z}/Γ(a+1) Σ_k z^k/((a+1)⋯(a+k)).
pub fn p_series_big(a: f64, z: f64, digits: u32) -> Result<BigReal> {
    check(a, z)?;
    let digits = digits.max(MIN_DIGITS);
    let prec = bits_for_digits(digits);
    let af = Float::with_val(prec, a);
    let zf = Float::with_val(prec, z);
    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
    let mut term = Float::with_val(prec, 1u32);
    let mut sum = term.clone();
    let mut k = 0u32;
    loop {
        k += 1;
        if k > MAX_TERMS {
            return Err(OracleError::Precision("p_series_big: series did not converge".into()));
        }
        term *= &zf;
        term /= Float::with_val(prec, &af + k);
        sum += &term;
        if k as f64 > z - a && term <= Float::with_val(prec, &sum * &eps) {
            break;
        }
    }
    Ok(BigReal::new(sum * prefactor(&af, &zf, 1), digits))
}

/// Q(a, z) = z^a e^{−z}/Γ(a) · 1/(z+1−a− 1(1−a)/(z+3−a− 2(2−a)/(z+5−a− ⋯))), modified Lentz.
pub fn q_cf_big(a: f64, z: f64, digits: u32) -> Result<BigReal> {
    check(a, z)?;
    let digits = digits.max(MIN_DIGITS);
    let target = bits_for_digits(digits);
    // Below z = a the fraction is ~1/prefactor and the early convergents
    // lose up to twice those bits to cancellation; carry them as guard.
    let ln_pre = Float::with_val(64, a) * Float::with_val(64, z).ln() - z - Float::with_val(64, a).ln_gamma();
    let guard = (-2.0 * ln_pre.to_f64() / std::f64::consts::LN_2).max(0.0).ceil() as u32 + 16;
    let prec = target + guard;
    let af = Float::with_val(prec, a);
    let zf = Float::with_val(prec, z);
    let tiny = Float::with_val(prec, Float::i_exp(1, -(4 * prec as i32)));
    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
    let mut b = Float::with_val(prec, &zf + 1u32) - &af;
    let mut c = Float::with_val(prec, tiny.clone().recip());
    let mut d = if b.is_zero() { c.clone() } else { Float::with_val(prec, b.recip_ref()) };
    let mut h = d.clone();
    for i in 1..MAX_TERMS {
        // a_i = −i(i − a)
        let an = Float::with_val(prec, &af - i) * i;
        b += 2u32;
        d = Float::with_val(prec, &an * &d) + &b;
        if Float::with_val(prec, d.abs_ref()) < tiny {
            d = tiny.clone();
        }
        c = Float::with_val(prec, &an / &c) + &b;
        if Float::with_val(prec, c.abs_ref()) < tiny {
            c = tiny.clone();
        }
        d.recip_mut();
        let del = Float::with_val(prec, &c * &d);
        h *= &del;
        if Float::with_val(prec, del - 1u32).abs() <= eps {
            let mut q = h * prefactor(&af, &zf, 0);
            q.set_prec(target);
            return Ok(BigReal::new(q, digits));
        }
    }
    Err(OracleError::Precision("q_cf_big: continued fraction did not converge".into()))
}

/// Q(a, z) = Γ(a, z)/Γ(a): 1 − P from the series below z = a, the
/// continued fraction from z = a up.
pub fn q_oracle_big(a: f64, z: f64, digits: u32) -> Result<BigReal> {
    check(a, z)?;
    if z < a {
        let p = p_series_big(a, z, digits)?;
        let d = p.digits();
        Ok(BigReal::new(1u32 - p.into_float(), d))
    } else {
        q_cf_big(a, z, digits)
    }
}
