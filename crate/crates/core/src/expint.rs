//! Generalized exponential integral E_p(z) = z^{p−1} Γ(1 − p, z), z > 0,
//! and the ratios P, Q routed by the size of a.
//!
//! For a = 1 − p >= 50 the uniform expansion is used; below that the
//! classical series and continued fraction are both cheap and accurate,
//! while the truncated expansion is not.

use crate::error::{domain, Error, Result};
use crate::expansion::{p_uniform, q_uniform, EvalResult, Regime, DEFAULT_ORDER};
use crate::special::ln_gamma;

/// Smallest a = 1 − p routed through the uniform expansion.
pub const UNIFORM_MIN_A: f64 = 50.0;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const MAX_ITER: usize = 100_000;

pub fn exp_integral_p(p: f64, z: f64) -> Result<EvalResult<f64>> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(domain(format!("exp_integral_p: z = {z} must be positive and finite")));
    }
    if !p.is_finite() {
        return Err(domain("exp_integral_p: p must be finite"));
    }
    let a = 1.0 - p;
    if a >= UNIFORM_MIN_A {
        let q = q_uniform(a, z, DEFAULT_ORDER)?;
        let ln_pref = (p - 1.0) * z.ln() + ln_gamma(a)?;
        let pref = ln_pref.exp();
        return finite(q.map(|v| v * pref).with_est(q.est_truncation * pref));
    }
    let value = if z >= 1.0 && (p > 0.0 || z >= a + 1.0) {
        continued_fraction(p, z)?
    } else if p <= 0.0 {
        // a >= 1: Γ(a, z) = Γ(a)(1 − P(a, z)) with P from its series
        let ln_pref = (p - 1.0) * z.ln() + ln_gamma(a)?;
        ln_pref.exp() * (1.0 - p_series(a, z)?)
    } else {
        small_z_recurrence(p, z)?
    };
    finite(EvalResult {
        value,
        regime: Regime::Direct,
        order_used: 0,
        est_truncation: 0.0,
    })
}

/// Q(a, z): the uniform expansion truncated after C_order/a^order when
/// a >= 50, else the continued fraction for Q when z >= max(a, 1) and the
/// power series for P otherwise, so the smaller ratio is the one computed. P + Q == 1 in floating point either way.
pub fn gamma_q(a: f64, z: f64, order: usize) -> Result<EvalResult<f64>> {
    Ok(gamma_ratios(a, z, order)?.0)
}

/// P(a, z) = 1 − Q(a, z), routed as [`gamma_q`].
pub fn gamma_p(a: f64, z: f64, order: usize) -> Result<EvalResult<f64>> {
    Ok(gamma_ratios(a, z, order)?.1)
}

fn gamma_ratios(a: f64, z: f64, order: usize) -> Result<(EvalResult<f64>, EvalResult<f64>)> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain(format!("a = {a} must be positive and finite")));
    }
    if !(z > 0.0) || !z.is_finite() {
        return Err(domain(format!("z = {z} must be positive and finite")));
    }
    if a >= UNIFORM_MIN_A {
        return Ok((q_uniform(a, z, order)?, p_uniform(a, z, order)?));
    }
    let (q, p) = if z < a.max(1.0) {
        let p = p_series(a, z)?;
        (1.0 - p, p)
    } else {
        let ln_pref = a * z.ln() - z - ln_gamma(a)?;
        let q = ln_pref.exp() * cf_tail(1.0 - a, z)?;
        (q, 1.0 - q)
    };
    let wrap = |value| EvalResult {
        value,
        regime: Regime::Direct,
        order_used: 0,
        est_truncation: 0.0,
    };
    Ok((wrap(q), wrap(p)))
}

trait WithEst {
    fn with_est(self, est: f64) -> Self;
}

impl WithEst for EvalResult<f64> {
    fn with_est(mut self, est: f64) -> Self {
        self.est_truncation = est;
        self
    }
}

fn finite(r: EvalResult<f64>) -> Result<EvalResult<f64>> {
    if r.value.is_finite() {
        Ok(r)
    } else {
        Err(Error::Overflow(format!("exp_integral_p: result {} not representable", r.value)))
    }
}

/// E_p(z) = e^{−z} / (z + p − 1·p/(z + p + 2 − 2(p+1)/(z + p + 4 − ...))).
///
/// Modified Lentz finds the depth; the fraction is then re-evaluated
/// backward from that depth, which rounds less than the forward product.
fn continued_fraction(p: f64, z: f64) -> Result<f64> {
    Ok((-z).exp() * cf_tail(p, z)?)
}

/// The fraction e^{z} E_p(z).
fn cf_tail(p: f64, z: f64) -> Result<f64> {
    let depth = lentz_depth(p, z)? + 8;
    let b = |i: usize| z + p + 2.0 * i as f64;
    let mut t = b(depth);
    for i in (1..=depth).rev() {
        let an = -(i as f64) * (p - 1.0 + i as f64);
        t = b(i - 1) + an / t;
    }
    Ok(1.0 / t)
}

fn lentz_depth(p: f64, z: f64) -> Result<usize> {
    const TINY: f64 = 1e-300;
    let mut b = z + p;
    let mut c = 1.0 / TINY;
    let mut d = if b == 0.0 { 1.0 / TINY } else { 1.0 / b };
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (p - 1.0 + i as f64);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = c * d;
        if (del - 1.0).abs() <= f64::EPSILON {
            return Ok(i);
        }
    }
    Err(Error::Domain(format!("exp_integral_p: continued fraction did not converge at p = {p}, z = {z}")))
}

/// P(a, z) = z^a e^{−z}/Γ(a+1) Σ z^k/((a+1)...(a+k)), for z < a + 1.
fn p_series(a: f64, z: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut ap = a;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        term *= z / ap;
        sum += term;
        if term < sum * f64::EPSILON * 0.5 {
            let ln_pref = a * z.ln() - z - ln_gamma(a + 1.0)?;
            return Ok(sum * ln_pref.exp());
        }
    }
    Err(Error::Domain(format!("exp_integral_p: series did not converge at a = {a}, z = {z}")))
}

/// z < 1, p > 0: E_{p0} for p0 in (0, 1] by series, then
/// E_{q+1} = (e^{−z} − z E_q)/q upward, which is stable for z <= 1.
fn small_z_recurrence(p: f64, z: f64) -> Result<f64> {
    let steps = (p.ceil() - 1.0).max(0.0);
    let p0 = p - steps;
    let mut e = if p0 == 1.0 {
        // E_1(z) = −γ − ln z − Σ (−z)^k/(k·k!)
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..200 {
            term *= -z / k as f64;
            let t = term / k as f64;
            sum += t;
            if t.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        -EULER_GAMMA - z.ln() - sum
    } else {
        // a0 = 1 − p0 in (0, 1): Γ(a0, z) = Γ(a0) − z^{a0} Σ (−z)^k/(k!(a0 + k))
        let a0 = 1.0 - p0;
        let mut term = 1.0;
        let mut sum = 1.0 / a0;
        for k in 1..200 {
            term *= -z / k as f64;
            let t = term / (a0 + k as f64);
            sum += t;
            if t.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        let upper = libm::tgamma(a0) - z.powf(a0) * sum;
        z.powf(p0 - 1.0) * upper
    };
    let ez = (-z).exp();
    let mut q = p0;
    for _ in 0..steps as usize {
        e = (ez - z * e) / q;
        q += 1.0;
    }
    Ok(e)
}
