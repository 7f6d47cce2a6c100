use std::fmt;

use rug::Float;

/// Overrides the default oracle precision (decimal digits).
pub const DIGITS_ENV: &str = "NEGAMMA_ORACLE_DIGITS";

pub const MIN_DIGITS: u32 = 50;
const DEFAULT_DIGITS: u32 = 400;

/// Working precision in decimal digits: the environment override if it
/// parses, else 400; never below [`MIN_DIGITS`].
pub fn default_digits() -> u32 {
    std::env::var(DIGITS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<u32>().ok())
        .unwrap_or(DEFAULT_DIGITS)
        .max(MIN_DIGITS)
}

/// Binary precision carrying `digits` decimal digits plus a few guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

/// A multiprecision real together with the decimal precision it was
/// computed at.
#[derive(Debug, Clone, PartialEq)]
pub struct BigReal {
    value: Float,
    digits: u32,
}

impl BigReal {
    pub(crate) fn new(value: Float, digits: u32) -> Self {
        Self { value, digits }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn as_float(&self) -> &Float {
        &self.value
    }

    pub fn into_float(self) -> Float {
        self.value
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Decimal scientific notation with `sig` significant digits.
    pub fn to_sci(&self, sig: usize) -> String {
        self.value.to_string_radix(10, Some(sig))
    }

    /// |self − other| / |other|, in double precision.
    pub fn rel_diff(&self, other: &BigReal) -> f64 {
        let prec = self.value.prec().max(other.value.prec());
        let d = Float::with_val(prec, &self.value - &other.value);
        (d / &other.value).abs().to_f64()
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci(30))
    }
}
