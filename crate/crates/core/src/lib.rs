//! Incomplete gamma functions at negative parameters.
//!
//! Evaluates γ*(−a,−z), the branch values Γ(−a, ze^{±iπ}) and
//! γ(−a, ze^{±iπ}), the normalized γ̃_a(z), and the ratios P(a,z), Q(a,z)
//! with uniform asymptotic expansions that stay valid through the
//! transition z ≈ a.
//!
//! ```
//! let g = negamma::gtilde(100.25, 100.0, negamma::DEFAULT_ORDER).unwrap();
//! assert!((g.value - 0.185636311520584).abs() < 1e-13);
//! ```

// `!(x > 0.0)` is how NaN is rejected along with nonpositive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coeffs;
pub mod dd;
pub mod error;
pub mod expansion;
pub mod expint;
pub mod mapping;
pub mod negative;
pub mod special;

pub use coeffs::{eval_c, generate_laurent, generate_maclaurin, CoefficientTable, GammaStarCoeffs, LaurentC, MaclaurinC};
pub use error::{Error, Result};
pub use expansion::{p_uniform, q_uniform, s_series, t_series, EvalResult, PhasedComplex, Regime, ScaledReal, DEFAULT_ORDER};
pub use expint::{exp_integral_p, gamma_p, gamma_q};
pub use mapping::{eta_from_lambda, lambda_from_eta, t_from_zeta, MappedPoint};
pub use negative::{
    additivity_residual, connection_residual, gamma_lower_neg, gamma_lower_neg_scaled, gamma_neg_scaled,
    gamma_star_neg, gamma_star_neg_scaled, gamma_upper_neg, gamma_upper_neg_scaled, gtilde, Branch,
};
pub use special::{cospi, dawson, erfc, erfc_imag, gamma_star, ln_gamma, sinpi, ComplexValue};
