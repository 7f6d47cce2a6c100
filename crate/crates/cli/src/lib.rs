//! Command-line front end for `negamma`.
//!
//! Exit codes: 0 success, 2 domain error, 3 overflow, 64 usage error,
//! 1 for anything else (an oracle that failed to converge, say).

// `!(x > 0.0)` is how NaN is rejected along with nonpositive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
pub mod format;

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{sweep, table_rows, SweepReport, TableRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_OVERFLOW: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "negamma", version, about = "Incomplete gamma functions at negative parameters")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function at (a, z).
    Eval(EvalArgs),
    /// γ̃_a(z), γ*(−a,−z) and the recursion residual over a grid of z.
    Table(TableArgs),
    /// Seeded random sweep of the recursion residual around z = a.
    Verify(VerifyArgs),
    /// Export the coefficient tables as JSON.
    Coeffs(CoeffsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    /// γ*(−a, −z)
    Gstar,
    /// γ̃_a(z)
    Gtilde,
    /// Γ(−a, z e^{+iπ})
    #[value(name = "upper_plus", alias = "upper-plus")]
    UpperPlus,
    /// Γ(−a, z e^{−iπ})
    #[value(name = "upper_minus", alias = "upper-minus")]
    UpperMinus,
    /// γ(−a, z e^{+iπ})
    #[value(name = "lower_plus", alias = "lower-plus")]
    LowerPlus,
    /// γ(−a, z e^{−iπ})
    #[value(name = "lower_minus", alias = "lower-minus")]
    LowerMinus,
    /// Q(a, z)
    #[value(name = "Q", alias = "q")]
    Q,
    /// P(a, z)
    #[value(name = "P", alias = "p")]
    P,
    /// E_p(z), with p passed as --a (or --p)
    #[value(name = "Ep", alias = "ep")]
    Ep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, clap::Args)]
pub struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    pub function: Function,
    #[arg(long, alias = "p", allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub z: f64,
    /// Last retained term C_N/a^N.
    #[arg(long, default_value_t = negamma::DEFAULT_ORDER)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = EvalFormat::Text)]
    pub format: EvalFormat,
    /// Report values as mantissa · e^{ln_scale} (and phase) instead of
    /// plain doubles; never overflows.
    #[arg(long)]
    pub scaled: bool,
    /// Also print the multiprecision reference value (gstar, Q, P).
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, clap::Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 100.25)]
    pub a: f64,
    #[arg(long = "z-from", default_value_t = 90.0)]
    pub z_from: f64,
    #[arg(long = "z-to", default_value_t = 110.0)]
    pub z_to: f64,
    #[arg(long, default_value_t = 1.0)]
    pub step: f64,
    #[arg(long, default_value_t = negamma::DEFAULT_ORDER)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = TableFormat::Text)]
    pub format: TableFormat,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 100.25)]
    pub a: f64,
    #[arg(long = "k-max", default_value_t = 6)]
    pub k_max: u32,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, clap::Args)]
pub struct CoeffsArgs {
    #[arg(long = "n-max", default_value_t = negamma::coeffs::STANDARD_ORDER)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t = CoeffsFormat::Json)]
    pub format: CoeffsFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoeffsFormat {
    Json,
}

/// A failed command, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<negamma::Error> for Failure {
    fn from(e: negamma::Error) -> Self {
        let code = match e {
            negamma::Error::Domain(_) => EXIT_DOMAIN,
            negamma::Error::Overflow(_) => EXIT_OVERFLOW,
            negamma::Error::Order { .. } => EXIT_USAGE,
            negamma::Error::Generation(_) => EXIT_FAILURE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<negamma_oracle::OracleError> for Failure {
    fn from(e: negamma_oracle::OracleError) -> Self {
        let code = match e {
            negamma_oracle::OracleError::Domain(_) => EXIT_DOMAIN,
            _ => EXIT_FAILURE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self {
            code: EXIT_FAILURE,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self {
            code: EXIT_FAILURE,
            message: e.to_string(),
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval(a) => commands::eval(&a, out),
        Command::Table(a) => commands::table(&a, out),
        Command::Verify(a) => commands::verify(&a, out),
        Command::Coeffs(a) => commands::coeffs(&a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "negamma: {}", f.message);
            f.code
        }
    }
}
