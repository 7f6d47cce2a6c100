//! Coefficients C_n(η) of the correction series and the γ_n of 1/Γ*(a).
//!
//! Generation is exact. With μ = λ − 1, each C_n is a polynomial in 1/μ
//! plus a single multiple of η^{-(2n+1)}; that Laurent form is used away
//! from η = 0 and evaluated in double-double because its terms are large
//! and alternate. Near η = 0 the singular parts cancel and a Maclaurin
//! series in η is used instead.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::dd::DoubleDouble;
use crate::error::{Error, Result};
use crate::mapping::MappedPoint;

/// Order of the shared table; N = 6 is the default truncation and the
/// truncation estimate needs C_{N+1}.
pub const STANDARD_ORDER: usize = 10;

/// Length of the generated Maclaurin series before per-order trimming.
pub const STANDARD_TERMS: usize = 100;

pub const SWITCH_RADIUS: f64 = 0.9;

/// Trailing Maclaurin terms are dropped while |c_j| (2r)^j stays below this,
/// with r the switch radius.
const TRIM_TOLERANCE: f64 = 1e-18;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact coefficients of 1/Γ*(a) ~ Σ γ_n a^{-n}.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaStarCoeffs {
    pub gamma: Vec<BigRational>,
}

impl GammaStarCoeffs {
    /// γ_0..γ_n from 1/Γ*(a) = exp(−Σ_k B_{2k}/(2k(2k−1)) a^{1−2k}).
    pub fn generate(n: usize) -> Self {
        let bern = bernoulli(n + 1);
        // exponent series s(x), x = 1/a
        let mut s = vec![BigRational::zero(); n + 1];
        let mut k = 1;
        while 2 * k - 1 <= n {
            let denom = BigInt::from((2 * k * (2 * k - 1)) as u64);
            s[2 * k - 1] = &bern[2 * k] / BigRational::from_integer(denom);
            k += 1;
        }
        // e = exp(−s): n e_n = −Σ_{j=1}^{n} j s_j e_{n−j}
        let mut e = vec![BigRational::one()];
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=m {
                if !s[j].is_zero() {
                    acc -= &s[j] * &e[m - j] * BigRational::from_integer(BigInt::from(j));
                }
            }
            e.push(acc / BigRational::from_integer(BigInt::from(m)));
        }
        Self { gamma: e }
    }
}

/// B_0..B_m with B_1 = −1/2.
fn bernoulli(m: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(m + 1);
    b.push(BigRational::one());
    for n in 1..=m {
        // Σ_{k=0}^{n} C(n+1, k) B_k = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            acc += bk * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// C_n(η) = Σ_{k=1}^{2n+1} r_k μ^{-k} + eta_coef · η^{-(2n+1)}.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentC {
    pub n: usize,
    /// r[k − 1] is the coefficient of μ^{-k}.
    pub r: Vec<BigRational>,
    pub eta_coef: BigRational,
}

/// C_n(η) = Σ_j c[j] η^j near η = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct MaclaurinC {
    pub n: usize,
    pub c: Vec<f64>,
}

/// Laurent forms of C_0..C_N.
///
/// The rational part obeys R_n = (1 + μ)/μ · R'_{n−1}(μ) + γ_n/μ from
/// R_0 = 1/μ; the η part picks up a factor −(2n − 1) per step.
pub fn generate_laurent(order: usize) -> Vec<LaurentC> {
    let gamma = GammaStarCoeffs::generate(order).gamma;
    let mut out = Vec::with_capacity(order + 1);
    out.push(LaurentC {
        n: 0,
        r: vec![BigRational::one()],
        eta_coef: -BigRational::one(),
    });
    for n in 1..=order {
        let prev = &out[n - 1];
        let mut r = vec![BigRational::zero(); 2 * n + 1];
        for (i, rk) in prev.r.iter().enumerate() {
            let k = (i + 1) as i64;
            // d/dμ μ^{-k} = −k μ^{-k-1}; times (μ^{-1} + 1)
            let t = rk * rat(-k, 1);
            r[i + 2] += &t;
            r[i + 1] += t;
        }
        r[0] += &gamma[n];
        let eta_coef = &prev.eta_coef * rat(-(2 * n as i64 - 1), 1);
        out.push(LaurentC { n, r, eta_coef });
    }
    out
}

/// Maclaurin coefficients of μ(η), index j holding the η^j term.
pub fn mu_series(terms: usize) -> Vec<BigRational> {
    let len = terms.max(2);
    let mut m = vec![BigRational::zero(); len];
    m[1] = BigRational::one();
    // μμ' = η(1 + μ) compared term by term
    for j in 3..=len {
        // ½ Σ_{i=2}^{j−2} m_i m_{j−i}, pairing symmetric terms
        let mut half = BigRational::zero();
        for i in 2..=j / 2 {
            if 2 * i == j {
                half += &m[i] * &m[i] / rat(2, 1);
            } else if j - i >= 2 {
                half += &m[i] * &m[j - i];
            }
        }
        m[j - 1] = &m[j - 2] / BigRational::from_integer(BigInt::from(j)) - half;
    }
    m
}

/// Power series reciprocal, v = 1/u, to the length of u.
fn series_recip(u: &[BigRational]) -> Vec<BigRational> {
    let inv0 = u[0].recip();
    let mut v: Vec<BigRational> = Vec::with_capacity(u.len());
    v.push(inv0.clone());
    for n in 1..u.len() {
        let mut acc = BigRational::zero();
        for k in 1..=n {
            if !u[k].is_zero() {
                acc += &u[k] * &v[n - k];
            }
        }
        v.push(-acc * &inv0);
    }
    v
}

/// Exact Maclaurin series of C_0..C_N with `terms` coefficients each.
///
/// f = η/μ is formed by reversion and reciprocal; then C_0 = (f − 1)/η and
/// ηC_n = C'_{n−1} + γ_n f. The constant term of each right-hand side must
/// vanish; a nonzero one is reported as a generation error.
pub fn generate_maclaurin_exact(order: usize, terms: usize) -> Result<Vec<Vec<BigRational>>> {
    if terms == 0 {
        return Err(Error::Generation("at least one Maclaurin term is required".into()));
    }
    let len = terms + 2 * order + 2;
    let gamma = GammaStarCoeffs::generate(order).gamma;
    let m = mu_series(len + 1);
    let u: Vec<BigRational> = m[1..=len].to_vec();
    let f = series_recip(&u);

    let mut out: Vec<Vec<BigRational>> = Vec::with_capacity(order + 1);
    if !(&f[0] - BigRational::one()).is_zero() {
        return Err(Error::Generation("f(0) differs from 1".into()));
    }
    out.push(f[1..].to_vec());
    for n in 1..=order {
        let prev = &out[n - 1];
        let avail = (prev.len() - 1).min(f.len());
        let mut rhs: Vec<BigRational> = (0..avail)
            .map(|j| &prev[j + 1] * BigRational::from_integer(BigInt::from(j + 1)))
            .collect();
        for (j, r) in rhs.iter_mut().enumerate() {
            *r += &gamma[n] * &f[j];
        }
        if !rhs[0].is_zero() {
            return Err(Error::Generation(format!(
                "constant term of the order-{n} right-hand side is {} instead of 0",
                rhs[0]
            )));
        }
        out.push(rhs[1..].to_vec());
    }
    for c in out.iter_mut() {
        c.truncate(terms);
        if c.len() < terms {
            return Err(Error::Generation("series shorter than requested".into()));
        }
    }
    Ok(out)
}

/// Maclaurin series converted to double, J + 1 coefficients per order.
pub fn generate_maclaurin(order: usize, j_max: usize) -> Result<Vec<MaclaurinC>> {
    Ok(generate_maclaurin_exact(order, j_max + 1)?
        .into_iter()
        .enumerate()
        .map(|(n, c)| MaclaurinC {
            n,
            c: c.iter().map(to_f64).collect(),
        })
        .collect())
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn to_dd(r: &BigRational) -> DoubleDouble {
    let hi = to_f64(r);
    let rest = r - BigRational::from_float(hi).unwrap_or_else(BigRational::zero);
    DoubleDouble::from_parts(hi, to_f64(&rest))
}

/// Immutable table of C_0..C_N in both representations.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    max_order: usize,
    switch_radius: f64,
    gamma: GammaStarCoeffs,
    laurent: Vec<LaurentC>,
    maclaurin: Vec<MaclaurinC>,
    laurent_dd: Vec<Vec<DoubleDouble>>,
    eta_coef_f64: Vec<f64>,
}

impl CoefficientTable {
    /// Builds the table for orders 0..=`max_order` with Maclaurin series of
    /// `terms` coefficients, trimmed per order where the tail is negligible
    /// out to twice the switch radius.
    pub fn new(max_order: usize, terms: usize) -> Result<Self> {
        let switch_radius = SWITCH_RADIUS;
        let laurent = generate_laurent(max_order);
        let exact = generate_maclaurin_exact(max_order, terms)?;
        let reach = 2.0 * switch_radius;
        let maclaurin = exact
            .iter()
            .enumerate()
            .map(|(n, c)| {
                let mut c: Vec<f64> = c.iter().map(to_f64).collect();
                while c.len() > 1 {
                    let j = c.len() - 1;
                    if c[j].abs() * reach.powi(j as i32) < TRIM_TOLERANCE {
                        c.pop();
                    } else {
                        break;
                    }
                }
                MaclaurinC { n, c }
            })
            .collect();
        let laurent_dd = laurent.iter().map(|l| l.r.iter().map(to_dd).collect()).collect();
        let eta_coef_f64 = laurent.iter().map(|l| to_f64(&l.eta_coef)).collect();
        Ok(Self {
            max_order,
            switch_radius,
            gamma: GammaStarCoeffs::generate(max_order),
            laurent,
            maclaurin,
            laurent_dd,
            eta_coef_f64,
        })
    }

    /// The shared table used by the evaluators, built on first use.
    pub fn standard() -> &'static CoefficientTable {
        static TABLE: OnceLock<CoefficientTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            CoefficientTable::new(STANDARD_ORDER, STANDARD_TERMS)
                .expect("standard coefficient table must generate")
        })
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn switch_radius(&self) -> f64 {
        self.switch_radius
    }

    pub fn gamma(&self) -> &GammaStarCoeffs {
        &self.gamma
    }

    pub fn laurent(&self) -> &[LaurentC] {
        &self.laurent
    }

    pub fn maclaurin(&self) -> &[MaclaurinC] {
        &self.maclaurin
    }

    /// C_n at the point, choosing the representation by |η|.
    pub fn eval(&self, n: usize, p: &MappedPoint) -> Result<f64> {
        self.check_order(n)?;
        if p.eta.abs() <= self.switch_radius {
            Ok(self.eval_maclaurin(n, p.eta))
        } else {
            Ok(self.eval_laurent(n, p))
        }
    }

    pub(crate) fn check_order(&self, n: usize) -> Result<()> {
        if n > self.max_order {
            Err(Error::Order {
                requested: n,
                available: self.max_order,
            })
        } else {
            Ok(())
        }
    }

    pub fn eval_maclaurin(&self, n: usize, eta: f64) -> f64 {
        self.maclaurin[n].c.iter().rev().fold(0.0, |acc, c| acc * eta + c)
    }

    /// Laurent form in double-double; not meant for η near 0.
    pub fn eval_laurent(&self, n: usize, p: &MappedPoint) -> f64 {
        let w = p.mu_dd().recip();
        let mut acc = DoubleDouble::ZERO;
        for r in self.laurent_dd[n].iter().rev() {
            acc = (acc + *r) * w;
        }
        let inv_eta = p.eta_dd().recip();
        let tail = inv_eta.powi(2 * n as u32 + 1) * DoubleDouble::new(self.eta_coef_f64[n]);
        (acc + tail).to_f64()
    }
}

/// C_n(η) from a table.
pub fn eval_c(table: &CoefficientTable, n: usize, p: &MappedPoint) -> Result<f64> {
    table.eval(n, p)
}
