//! Command-line surface. [`run`] parses arguments, executes one subcommand,
//! and returns the exit code with captured output so it can be driven from
//! tests as well as from the binary.

pub mod sweep;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bounds::{self, FqPoly};
use crate::complexity::{self, kerror::DEFAULT_BUDGET};
use crate::cyclotomy;
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::sequence::{sidelnikov_subsequence, PeriodicSequence};

/// Environment variable overriding the default search budget.
pub const BUDGET_ENV: &str = "SIDELNIKOV_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sidelnikov", version, about = "Sidel'nikov sequences, linear complexity and bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Field parameters and the primitive element in use.
    FieldInfo {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        gamma: Option<u32>,
    },
    /// Write one period of the l-periodic subsequence.
    Gen {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        gamma: Option<u32>,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Linear complexity of a sequence file (stdin when omitted).
    Lc { file: Option<PathBuf> },
    /// k-error linear complexity by exhaustive search.
    Klc {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        budget: Option<u128>,
        file: Option<PathBuf>,
    },
    /// Every bound that applies to (q, d, l, k).
    Bounds {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        gamma: Option<u32>,
    },
    /// Cyclotomic numbers of order v.
    Cyclo {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        v: u32,
        /// Use the order-6 closed forms (q = 7 mod 12).
        #[arg(long)]
        closed_form: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        gamma: Option<u32>,
    },
    /// Check the d = 3, l = (q-1)/2 predictions for q = 7 mod 12.
    VerifyThm2 {
        #[arg(long)]
        q: u64,
        /// Also run the exhaustive 1-error search.
        #[arg(long)]
        full_klc: bool,
        #[arg(long)]
        gamma: Option<u32>,
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Character sum of order d of a polynomial, against the Weil bound.
    Weil {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u32,
        /// Coefficients c0,c1,... as field-element encodings.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        poly: Vec<u32>,
        #[arg(long)]
        gamma: Option<u32>,
    },
    /// Run a parameter sweep from a TOML config, writing JSON lines.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(cli.command) {
        Ok(stdout) => Outcome { code: EXIT_OK, stdout, stderr: String::new() },
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Internal(_) | Error::Io(_) => EXIT_INTERNAL,
        _ => EXIT_INVALID,
    }
}

/// Budget from [`BUDGET_ENV`], else [`DEFAULT_BUDGET`].
pub fn default_budget() -> Result<u128> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u128>()
            .ok()
            .filter(|&b| b > 0)
            .ok_or_else(|| Error::InvalidArgument(format!("{BUDGET_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn read_sequence(file: Option<PathBuf>) -> Result<PeriodicSequence> {
    let text = match file {
        Some(path) => std::fs::read_to_string(&path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
        None => std::io::read_to_string(std::io::stdin())?,
    };
    text.parse()
}

fn execute(command: Command) -> Result<String> {
    match command {
        Command::FieldInfo { q, gamma } => {
            let ctx = FieldCtx::with_order(q, gamma)?;
            to_json(&json!({
                "q": ctx.q(),
                "p": ctx.p(),
                "m": ctx.m(),
                "modulus": ctx.modulus(),
                "gamma": ctx.gamma(),
                "group_order": ctx.group_order(),
            }))
        }
        Command::Gen { q, d, l, gamma, out } => {
            let ctx = FieldCtx::with_order(q, gamma)?;
            let seq = sidelnikov_subsequence(&ctx, d, l)?;
            match out {
                Some(path) => {
                    std::fs::write(&path, seq.to_file_string())
                        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    to_json(&json!({
                        "q": ctx.q(),
                        "gamma": ctx.gamma(),
                        "d": d,
                        "l": l,
                        "path": path.display().to_string(),
                    }))
                }
                None => Ok(seq.to_file_string()),
            }
        }
        Command::Lc { file } => {
            let seq = read_sequence(file)?;
            let lc = complexity::lc_via_gcd(&seq);
            let (bm, feedback) = complexity::berlekamp_massey(&seq);
            if bm != lc {
                return Err(Error::Internal(format!("Berlekamp-Massey gives {bm}, gcd gives {lc}")));
            }
            to_json(&json!({
                "d": seq.d(),
                "l": seq.period(),
                "lc": lc,
                "feedback": feedback.coeffs(),
                "methods": { "gcd": true, "bm": true },
            }))
        }
        Command::Klc { k, budget, file } => {
            let budget = match budget {
                Some(b) => b,
                None => default_budget()?,
            };
            let seq = read_sequence(file)?;
            to_json(&complexity::complexity_report(&seq, k, budget)?)
        }
        Command::Bounds { q, d, l, k, gamma } => {
            let ctx = FieldCtx::with_order(q, gamma)?;
            to_json(&bounds::bound_report(&ctx, d, l, k)?)
        }
        Command::Cyclo { q, v, closed_form, format, gamma } => {
            let ctx = FieldCtx::with_order(q, gamma)?;
            let table = if closed_form {
                if v != 6 {
                    return Err(Error::Unsupported(format!("closed forms exist for order 6 only, got v = {v}")));
                }
                cyclotomy::cyclotomic_numbers_order6(&ctx)?
            } else {
                cyclotomy::cyclotomic_numbers_bruteforce(&ctx, v)?
            };
            match format {
                Format::Csv => Ok(table.to_csv()),
                Format::Json => to_json(&json!({
                    "q": table.q,
                    "gamma": table.gamma,
                    "v": table.v,
                    "f": table.f,
                    "provenance": table.provenance,
                    "rows": table.rows(),
                    "decomposition": table.decomposition,
                    "formula_mismatches": table.formula_mismatches(),
                    "symmetry_violations": table.symmetry_violations(),
                })),
            }
        }
        Command::VerifyThm2 { q, full_klc, gamma, budget } => {
            let ctx = FieldCtx::with_order(q, gamma)?;
            let budget = match budget {
                Some(b) => b,
                None => default_budget()?,
            };
            to_json(&verify_theorem2(&ctx, full_klc, budget)?)
        }
        Command::Weil { q, d, poly, gamma } => {
            let ctx = FieldCtx::with_order(q, gamma)?;
            let report = bounds::character_sum(&ctx, d, &FqPoly::new(poly))?;
            let (status, reason) = match bounds::weil_check(&report) {
                Ok(true) => ("holds", None),
                Ok(false) => ("violated", None),
                Err(Error::NotApplicable(why)) => ("not_applicable", Some(why)),
                Err(e) => return Err(e),
            };
            to_json(&json!({ "report": report, "weil": status, "reason": reason }))
        }
        Command::Sweep { config, out } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| Error::Io(format!("{}: {e}", config.display())))?;
            let cfg: sweep::SweepConfig = text.parse()?;
            let summary = sweep::run_sweep_to_file(&cfg, &out)?;
            let mut line = serde_json::to_string(&summary).map_err(|e| Error::Internal(e.to_string()))?;
            line.push('\n');
            Ok(line)
        }
    }
}

/// Output of `verify-thm2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem2Check {
    pub q: u32,
    pub gamma: u32,
    pub l: u32,
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    pub case: cyclotomy::Order6Case,
    #[serde(rename = "S1")]
    pub s1: u32,
    #[serde(rename = "S1_1")]
    pub s1_1: u32,
    pub predicted_s1: u32,
    pub predicted_s1_1: u32,
    pub s_values_match: bool,
    pub hypotheses_hold: bool,
    pub hypothesis_failures: Vec<String>,
    pub prediction: &'static str,
    pub lc: usize,
    pub lc1: Option<usize>,
    /// Whether the exhaustive `LC_1` agrees with the predicted relation;
    /// absent without `--full-klc` or when nothing is predicted.
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

pub fn verify_theorem2(ctx: &FieldCtx, full_klc: bool, budget: u128) -> Result<Theorem2Check> {
    let prediction = bounds::theorem2_predict(ctx)?;
    let seq = sidelnikov_subsequence(ctx, 3, prediction.l)?;
    let (s1, s1_1) = bounds::s_values(&seq);
    let (lc, lc1) = if full_klc {
        let report = complexity::k_error_profile(&seq, 1, budget)?;
        (report.lc, report.lc_k(1))
    } else {
        (complexity::lc_via_gcd(&seq), None)
    };
    let matches = lc1.and_then(|lc1| match prediction.relation {
        bounds::PredictedRelation::Lc1EqualsLc => Some(lc1 == lc),
        bounds::PredictedRelation::Lc1EqualsLMinus1 => Some(lc1 + 1 == seq.period()),
        bounds::PredictedRelation::None => None,
    });
    Ok(Theorem2Check {
        q: ctx.q(),
        gamma: ctx.gamma(),
        l: prediction.l,
        a: prediction.a,
        b: prediction.b,
        case: prediction.case,
        s1,
        s1_1,
        predicted_s1: prediction.predicted_s1,
        predicted_s1_1: prediction.predicted_s1_1,
        s_values_match: (s1, s1_1) == (prediction.predicted_s1, prediction.predicted_s1_1),
        hypotheses_hold: prediction.hypotheses_hold,
        hypothesis_failures: prediction.hypothesis_failures,
        prediction: prediction.relation.label(),
        lc,
        lc1,
        matches,
    })
}
