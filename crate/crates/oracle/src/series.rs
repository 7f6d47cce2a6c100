//! γ*(−a, −z) from its entire series.

use rug::ops::Pow;
use rug::Float;

use crate::big::{bits_for_digits, BigReal, MIN_DIGITS};
use crate::{OracleError, Result};

/// Consecutive negligible terms required before stopping.
const QUIET_TERMS: u32 = 50;

/// γ*(−a, −z) = e^z Σ_{n≥0} (−z)^n / Γ(n + 1 − a).
///
/// Terms grow to roughly e^z z^n/Γ(n+1−a) before decaying, so the sum
/// cancels heavily for large a and z; a PrecisionError is raised when the
/// largest term exceeds the result by more than 10^{digits − 30}.
pub fn gammastar_series_big(a: f64, z: f64, digits: u32) -> Result<BigReal> {
    if !a.is_finite() || !z.is_finite() {
        return Err(OracleError::Domain("gammastar_series_big: arguments must be finite".into()));
    }
    let digits = digits.max(MIN_DIGITS);
    let prec = bits_for_digits(digits);
    let af = Float::with_val(prec, a);
    let mz = Float::with_val(prec, -z);

    // first nonzero term: integer a ≥ 0 starts at n = a, where 1/Γ(1) = 1
    let (mut n, mut term) = if a >= 0.0 && a.fract() == 0.0 {
        let start = a as u32;
        (start, Float::with_val(prec, mz.clone().pow(start)))
    } else {
        let g = Float::with_val(prec, 1u32 - &af).gamma();
        (0u32, g.recip())
    };
    let mut sum = term.clone();
    let mut max = Float::with_val(prec, term.abs_ref());
    let tiny = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
    let mut quiet = 0;
    let limit = 1_000_000u32;
    while n < limit {
        // term_{n+1} = term_n (−z)/(n + 1 − a)
        let denom = Float::with_val(prec, n + 1u32) - &af;
        term *= &mz;
        term /= denom;
        n += 1;
        sum += &term;
        let mag = Float::with_val(prec, term.abs_ref());
        if mag > max {
            max = mag.clone();
        }
        if n as f64 > a && mag <= Float::with_val(prec, &max * &tiny) {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    if n >= limit {
        return Err(OracleError::Precision("gammastar_series_big: series did not settle".into()));
    }
    if !sum.is_zero() {
        let ratio = Float::with_val(prec, &max / Float::with_val(prec, sum.abs_ref()));
        let bound = Float::with_val(prec, Float::u_pow_u(10, digits.saturating_sub(30)));
        if ratio > bound {
            return Err(OracleError::Precision(format!(
                "gammastar_series_big: cancellation of 10^{:.0} exceeds {digits} digits",
                ratio.to_f64().log10()
            )));
        }
    }
    let ez = Float::with_val(prec, z).exp();
    Ok(BigReal::new(sum * ez, digits))
}
