//! Arbitrary-precision reference values for the negamma expansions.
//!
//! Everything here is slow and independent of the double-precision code
//! paths: the entire series of γ*(−a, −z), a trapezoidal quadrature for
//! T_a(η), series and continued fractions for P and Q, and multiprecision
//! kernels for erf, Dawson's integral and log-gamma. Arithmetic is MPFR
//! through `rug`.

// `!(x > 0.0)` is how NaN is rejected along with nonpositive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod big;
mod kernels;
mod quadrature;
mod ratio;
mod series;

pub use big::{bits_for_digits, default_digits, BigReal, DIGITS_ENV, MIN_DIGITS};
pub use kernels::{dawson_big, erf_big, erfc_big, gamma_star_big, ln_gamma_big};
pub use quadrature::t_quadrature;
pub use ratio::{p_series_big, q_cf_big, q_oracle_big};
pub use series::gammastar_series_big;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    /// Cancellation in a series exceeded what the working precision absorbs.
    #[error("precision error: {0}")]
    Precision(String),

    /// The quadrature tail or step bound was not met.
    #[error("quadrature error: {0}")]
    Quadrature(String),

    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, OracleError>;

/// −γ̃_{a+1}(z) + (z/a) γ̃_a(z) + 1/π from the double-precision expansion.
///
/// Zero up to rounding and truncation when the expansion is right.
pub fn recursion_residual(a: f64, z: f64) -> Result<f64> {
    let order = negamma::DEFAULT_ORDER;
    let g0 = negamma::gtilde(a, z, order).map_err(|e| OracleError::Domain(e.to_string()))?;
    let g1 = negamma::gtilde(a + 1.0, z, order).map_err(|e| OracleError::Domain(e.to_string()))?;
    Ok(-g1.value + (z / a) * g0.value + std::f64::consts::FRAC_1_PI)
}
