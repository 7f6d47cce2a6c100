use std::io::Write;

use negamma::{
    gamma_lower_neg, gamma_lower_neg_scaled, gamma_star_neg, gamma_star_neg_scaled, gamma_upper_neg,
    gamma_upper_neg_scaled, gtilde, Branch, CoefficientTable, EvalResult, PhasedComplex, ScaledReal,
};
use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use serde_json::{json, Value};

use crate::format::{fixed, sci, sci_digits, sci_scaled};
use crate::{CoeffsArgs, EvalArgs, EvalFormat, Failure, Function, TableArgs, TableFormat, VerifyArgs};

type Outcome = Result<(), Failure>;

enum Computed {
    Real(f64),
    Complex(Complex64),
    Scaled(ScaledReal),
    Phased(PhasedComplex),
}

fn branch_of(f: Function) -> Branch {
    match f {
        Function::UpperPlus | Function::LowerPlus => Branch::Plus,
        _ => Branch::Minus,
    }
}

fn compute(args: &EvalArgs) -> Result<EvalResult<Computed>, Failure> {
    let (a, z, n) = (args.a, args.z, args.order);
    let r = match (args.function, args.scaled) {
        (Function::Gstar, false) => gamma_star_neg(a, z, n)?.map_real(),
        (Function::Gstar, true) => gamma_star_neg_scaled(a, z, n)?.map_with(Computed::Scaled),
        (Function::Gtilde, _) => gtilde(a, z, n)?.map_real(),
        (Function::UpperPlus | Function::UpperMinus, false) => {
            gamma_upper_neg(a, z, branch_of(args.function), n)?.map_with(Computed::Complex)
        }
        (Function::UpperPlus | Function::UpperMinus, true) => {
            gamma_upper_neg_scaled(a, z, branch_of(args.function), n)?.map_with(Computed::Phased)
        }
        (Function::LowerPlus | Function::LowerMinus, false) => {
            gamma_lower_neg(a, z, branch_of(args.function), n)?.map_with(Computed::Complex)
        }
        (Function::LowerPlus | Function::LowerMinus, true) => {
            gamma_lower_neg_scaled(a, z, branch_of(args.function), n)?.map_with(Computed::Phased)
        }
        (Function::Q, _) => negamma::gamma_q(a, z, n)?.map_real(),
        (Function::P, _) => negamma::gamma_p(a, z, n)?.map_real(),
        (Function::Ep, _) => negamma::exp_integral_p(a, z)?.map_real(),
    };
    Ok(r)
}

trait IntoComputed<T> {
    fn map_with(self, f: impl FnOnce(T) -> Computed) -> EvalResult<Computed>;
}

impl<T> IntoComputed<T> for EvalResult<T> {
    fn map_with(self, f: impl FnOnce(T) -> Computed) -> EvalResult<Computed> {
        EvalResult {
            value: f(self.value),
            regime: self.regime,
            order_used: self.order_used,
            est_truncation: self.est_truncation,
        }
    }
}

trait RealComputed {
    fn map_real(self) -> EvalResult<Computed>;
}

impl RealComputed for EvalResult<f64> {
    fn map_real(self) -> EvalResult<Computed> {
        self.map_with(Computed::Real)
    }
}

fn oracle_value(args: &EvalArgs) -> Result<Option<String>, Failure> {
    if !args.oracle {
        return Ok(None);
    }
    let digits = negamma_oracle::default_digits();
    let v = match args.function {
        Function::Gstar => negamma_oracle::gammastar_series_big(args.a, args.z, digits)?,
        Function::Q => negamma_oracle::q_oracle_big(args.a, args.z, digits)?,
        Function::P => negamma_oracle::p_series_big(args.a, args.z, digits)?,
        _ => return Err(Failure::usage("--oracle is available for gstar, Q and P")),
    };
    Ok(Some(v.to_sci(30)))
}

fn value_json(v: &Computed) -> Value {
    match v {
        Computed::Real(x) => json!(x),
        Computed::Complex(c) => json!({ "re": c.re, "im": c.im }),
        Computed::Scaled(s) => json!({ "mantissa": s.mantissa, "ln_scale": s.ln_scale }),
        Computed::Phased(p) => json!({
            "phase_over_pi": p.phase,
            "re": p.mantissa.re,
            "im": p.mantissa.im,
            "ln_scale": p.ln_scale,
        }),
    }
}

fn real_text(x: f64) -> String {
    if x != 0.0 && (x.abs() >= 1e16 || x.abs() < 1e-5) {
        sci(x)
    } else {
        fixed(x)
    }
}

fn value_text(v: &Computed) -> Vec<(&'static str, String)> {
    match v {
        Computed::Real(x) => vec![("value", real_text(*x))],
        Computed::Complex(c) => vec![("re", real_text(c.re)), ("im", real_text(c.im))],
        Computed::Scaled(s) => vec![
            ("value", sci_scaled(s)),
            ("mantissa", sci(s.mantissa)),
            ("ln_scale", sci(s.ln_scale)),
        ],
        Computed::Phased(p) => vec![
            ("phase_over_pi", sci(p.phase)),
            ("re", sci(p.mantissa.re)),
            ("im", sci(p.mantissa.im)),
            ("ln_scale", sci(p.ln_scale)),
        ],
    }
}

pub(crate) fn eval(args: &EvalArgs, out: &mut dyn Write) -> Outcome {
    let r = compute(args)?;
    let oracle = oracle_value(args)?;
    match args.format {
        EvalFormat::Json => {
            let mut doc = json!({
                "function": args.function.to_possible_value().map(|v| v.get_name().to_string()),
                "a": args.a,
                "z": args.z,
                "value": value_json(&r.value),
                "regime": r.regime.as_str(),
                "order_used": r.order_used,
                "est_truncation": r.est_truncation,
            });
            if let Some(o) = oracle {
                doc["oracle"] = Value::String(o);
            }
            writeln!(out, "{}", serde_json::to_string(&doc)?)?;
        }
        EvalFormat::Text => {
            for (k, v) in value_text(&r.value) {
                writeln!(out, "{k:<15} {v}")?;
            }
            writeln!(out, "{:<15} {}", "regime", r.regime.as_str())?;
            writeln!(out, "{:<15} {}", "order_used", r.order_used)?;
            writeln!(out, "{:<15} {}", "est_truncation", sci_digits(r.est_truncation, 3))?;
            if let Some(o) = oracle {
                writeln!(out, "{:<15} {o}", "oracle")?;
            }
        }
    }
    Ok(())
}

/// One row: γ̃_a(z), γ*(−a, −z) and the residual of the normalized
/// recursion −γ̃_{a+1} + (z/a)γ̃_a + 1/π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub z: f64,
    pub gtilde: f64,
    pub gstar: ScaledReal,
    pub residual: f64,
}

pub fn table_rows(a: f64, z_from: f64, z_to: f64, step: f64, order: usize) -> Result<Vec<TableRow>, Failure> {
    if !(step > 0.0) || !(z_from <= z_to) || !step.is_finite() || !z_to.is_finite() {
        return Err(Failure::usage("table needs z-from <= z-to and step > 0"));
    }
    let count = ((z_to - z_from) / step + 1e-9).floor() as usize + 1;
    (0..count)
        .map(|i| {
            let z = z_from + i as f64 * step;
            let g0 = gtilde(a, z, order)?.value;
            let g1 = gtilde(a + 1.0, z, order)?.value;
            Ok(TableRow {
                z,
                gtilde: g0,
                gstar: gamma_star_neg_scaled(a, z, order)?.value,
                residual: -g1 + (z / a) * g0 + std::f64::consts::FRAC_1_PI,
            })
        })
        .collect()
}

fn gstar_json(s: &ScaledReal) -> Value {
    match s.to_f64() {
        Ok(v) => json!(v),
        Err(_) => json!({ "mantissa": s.mantissa, "ln_scale": s.ln_scale }),
    }
}

pub(crate) fn table(args: &TableArgs, out: &mut dyn Write) -> Outcome {
    let rows = table_rows(args.a, args.z_from, args.z_to, args.step, args.order)?;
    match args.format {
        TableFormat::Text => {
            writeln!(out, "a = {}", args.a)?;
            writeln!(out, "{:>8}  {:>20}  {:>24}  {:>8}", "z", "gtilde", "gstar", "error")?;
            for r in &rows {
                writeln!(
                    out,
                    "{:>8.1}  {:>20}  {:>24}  {:>8}",
                    r.z,
                    fixed(r.gtilde),
                    sci_scaled(&r.gstar),
                    sci_digits(r.residual, 2)
                )?;
            }
        }
        TableFormat::Csv => {
            writeln!(out, "z,gtilde,gstar,residual")?;
            for r in &rows {
                writeln!(out, "{},{},{},{}", r.z, sci(r.gtilde), sci_scaled(&r.gstar), sci(r.residual))?;
            }
        }
        TableFormat::Json => {
            let doc: Vec<Value> = rows
                .iter()
                .map(|r| json!({ "z": r.z, "gtilde": r.gtilde, "gstar": gstar_json(&r.gstar), "residual": r.residual }))
                .collect();
            writeln!(out, "{}", serde_json::to_string(&json!({ "a": args.a, "rows": doc }))?)?;
        }
    }
    Ok(())
}

/// Result of a seeded recursion sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub a: f64,
    pub k_max: u32,
    pub samples_per_k: usize,
    pub seed: u64,
    pub max_abs_residual: f64,
    pub per_k_max: Vec<f64>,
}

/// Uniform in [0, 1) from the top 53 bits.
fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Draws `samples` z per interval [(1 − 2^{−k})a, (1 + 2^{−k})a] with
/// ChaCha8 seeded from `seed`, then evaluates the recursion residual.
/// All points are drawn before any evaluation, so the report depends only
/// on the seed.
pub fn sweep(a: f64, k_max: u32, samples: usize, seed: u64) -> Result<SweepReport, Failure> {
    if samples == 0 {
        return Err(Failure::usage("samples must be positive"));
    }
    if k_max > 52 {
        return Err(Failure::usage("k-max must be at most 52"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Vec<f64>> = (0..=k_max)
        .map(|k| {
            let w = a * 2f64.powi(-(k as i32));
            (0..samples)
                .map(|_| loop {
                    let z = a - w + 2.0 * w * unit(&mut rng);
                    if z > 0.0 {
                        break z;
                    }
                })
                .collect()
        })
        .collect();
    let mut per_k_max = Vec::with_capacity(points.len());
    for zs in &points {
        let mut m: f64 = 0.0;
        for &z in zs {
            m = m.max(negamma_oracle::recursion_residual(a, z)?.abs());
        }
        per_k_max.push(m);
    }
    let max_abs_residual = per_k_max.iter().copied().fold(0.0, f64::max);
    Ok(SweepReport {
        a,
        k_max,
        samples_per_k: samples,
        seed,
        max_abs_residual,
        per_k_max,
    })
}

pub(crate) fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Outcome {
    let report = sweep(args.a, args.k_max, args.samples, args.seed)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    Ok(())
}

fn int(v: impl ToString) -> Box<RawValue> {
    RawValue::from_string(v.to_string()).expect("integers are valid JSON")
}

#[derive(Serialize)]
struct CoeffEntry {
    n: usize,
    laurent: Vec<(usize, Box<RawValue>, Box<RawValue>)>,
    eta_coef: (Box<RawValue>, Box<RawValue>),
    maclaurin: Vec<f64>,
}

#[derive(Serialize)]
struct CoeffDump {
    switch_radius: f64,
    gamma: Vec<(Box<RawValue>, Box<RawValue>)>,
    coefficients: Vec<CoeffEntry>,
}

pub(crate) fn coeffs(args: &CoeffsArgs, out: &mut dyn Write) -> Outcome {
    let table = CoefficientTable::standard();
    if args.n_max > table.max_order() {
        return Err(negamma::Error::Order {
            requested: args.n_max,
            available: table.max_order(),
        }
        .into());
    }
    let n_max = args.n_max;
    let dump = CoeffDump {
        switch_radius: table.switch_radius(),
        gamma: table.gamma().gamma[..=n_max]
            .iter()
            .map(|g| (int(g.numer()), int(g.denom())))
            .collect(),
        coefficients: (0..=n_max)
            .map(|n| {
                let l = &table.laurent()[n];
                CoeffEntry {
                    n,
                    laurent: l
                        .r
                        .iter()
                        .enumerate()
                        .map(|(k, r)| (k + 1, int(r.numer()), int(r.denom())))
                        .collect(),
                    eta_coef: (int(l.eta_coef.numer()), int(l.eta_coef.denom())),
                    maclaurin: table.maclaurin()[n].c.clone(),
                }
            })
            .collect(),
    };
    writeln!(out, "{}", serde_json::to_string(&dump)?)?;
    Ok(())
}
