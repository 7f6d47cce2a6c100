//! Number formatting for text, CSV and table output.

use negamma::ScaledReal;

/// 17 significant digits in e-notation with a signed exponent:
/// `1.2055242341167443e+196`.
pub fn sci(v: f64) -> String {
    sci_digits(v, 17)
}

/// `digits` significant digits, exponent always signed.
pub fn sci_digits(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), v);
    match s.split_once('e') {
        Some((m, e)) if !e.starts_with('-') => format!("{m}e+{e}"),
        _ => s,
    }
}

/// 17 significant digits in positional notation, for values of moderate
/// size such as γ̃.
pub fn fixed(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v:.16}");
    }
    let mag = v.abs().log10().floor() as i32;
    if !(-5..=16).contains(&mag) {
        return sci(v);
    }
    let decimals = (16 - mag).max(0) as usize;
    format!("{v:.decimals$}")
}

/// A log-scaled value in decimal e-notation, without forming it.
pub fn sci_scaled(v: &ScaledReal) -> String {
    if let Ok(x) = v.to_f64() {
        return sci(x);
    }
    if v.mantissa == 0.0 {
        return sci(0.0);
    }
    let log10 = v.ln_abs() / std::f64::consts::LN_10;
    let mut e = log10.floor();
    let mut m = 10f64.powf(log10 - e);
    if m >= 10.0 {
        m /= 10.0;
        e += 1.0;
    }
    let m = m.copysign(v.mantissa);
    format!("{:.16}e{:+}", m, e as i64)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    #[test]
    fn signed_exponents() {
        assert_eq!(sci(1.205_524_234_116_744_26e196), "1.2055242341167443e+196");
        assert_eq!(sci(-2.5e-3), "-2.5000000000000001e-3");
        assert_eq!(sci(-0.25), "-2.5000000000000000e-1");
        assert_eq!(sci_digits(1.4e-18, 2), "1.4e-18");
        assert_eq!(sci_digits(0.0, 2), "0.0e+0");
    }

    #[test]
    fn positional() {
        assert_eq!(fixed(0.185_636_311_520_584), "0.18563631152058399");
        assert_eq!(fixed(-2.150_228_198_004_453), "-2.1502281980044531");
        assert_eq!(fixed(1e-9), "1.0000000000000001e-9");
    }

    #[test]
    fn scaled_beyond_range() {
        let v = ScaledReal {
            mantissa: -2.0,
            ln_scale: 1000.0 * std::f64::consts::LN_10,
        };
        // the mantissa comes back through exp(ln), good to ~ε·ln_scale
        let s = sci_scaled(&v);
        let (m, e) = s.split_once('e').unwrap();
        assert_eq!(e, "+1000");
        assert!((m.parse::<f64>().unwrap() + 2.0).abs() < 1e-11, "{s}");
    }
}
