//! Parameter sweeps: a TOML config expands to `(q, d, l, k)` tuples, each
//! tuple becomes one JSON-lines [`ResultRecord`].
//!
//! ```toml
//! q = { from = 3, to = 200, filter = "prime_power" }   # or q = [7, 13, 1423]
//! d = "all"                                            # or 3, or [2, 3]
//! l = "all"                                            # "half", or [3, 6]
//! l_min = 3
//! k = { min = 0, max = 2 }                             # or k = 1
//! budget = 10000000
//! seed = 1
//!
//! [toggles]
//! lc = true
//! klc = true
//! bounds = true
//! thm2 = false
//! weil = false
//! ```

use std::io::Write;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::bounds::{self, BoundReport, PredictedRelation};
use crate::complexity::kerror::{k_error_profile, search_size, DEFAULT_BUDGET};
use crate::complexity::lc_via_gcd;
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::sequence::{sidelnikov_subsequence, ErrorPattern};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QFilter {
    Prime,
    PrimePower,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QSpec {
    List(Vec<u64>),
    Range {
        from: u64,
        to: u64,
        #[serde(default = "default_filter")]
        filter: QFilter,
    },
}

fn default_filter() -> QFilter {
    QFilter::PrimePower
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DSpec {
    One(u32),
    List(Vec<u32>),
    /// Only `"all"`: every prime divisor of `q - 1`.
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LSpec {
    List(Vec<u32>),
    /// `"all"` divisors of `q - 1`, or `"half"` for `(q - 1) / 2`.
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KSpec {
    One(usize),
    Range { min: usize, max: usize },
}

impl KSpec {
    fn bounds(&self) -> (usize, usize) {
        match *self {
            KSpec::One(k) => (k, k),
            KSpec::Range { min, max } => (min, max),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Toggles {
    pub lc: bool,
    pub klc: bool,
    pub bounds: bool,
    pub thm2: bool,
    pub weil: bool,
}

impl Default for Toggles {
    fn default() -> Self {
        Toggles { lc: true, klc: true, bounds: true, thm2: false, weil: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub q: QSpec,
    pub d: DSpec,
    #[serde(default = "default_l")]
    pub l: LSpec,
    #[serde(default = "default_l_min")]
    pub l_min: u32,
    #[serde(default = "default_k")]
    pub k: KSpec,
    #[serde(default = "default_budget")]
    pub budget: u128,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_weil_samples")]
    pub weil_samples: usize,
    #[serde(default)]
    pub toggles: Toggles,
}

fn default_l() -> LSpec {
    LSpec::Named("all".into())
}

fn default_l_min() -> u32 {
    1
}

fn default_k() -> KSpec {
    KSpec::One(0)
}

fn default_budget() -> u128 {
    DEFAULT_BUDGET
}

fn default_weil_samples() -> usize {
    50
}

impl FromStr for SweepConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cfg: SweepConfig = toml::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::InvalidArgument("budget must be positive".into()));
        }
        let (kmin, kmax) = self.k.bounds();
        if kmin > kmax {
            return Err(Error::InvalidArgument(format!("k range {kmin}..={kmax} is empty")));
        }
        if let DSpec::Named(name) = &self.d {
            if name != "all" {
                return Err(Error::InvalidArgument(format!("d must be a number, a list or \"all\", got {name:?}")));
            }
        }
        if let LSpec::Named(name) = &self.l {
            if name != "all" && name != "half" {
                return Err(Error::InvalidArgument(format!("l must be a list, \"all\" or \"half\", got {name:?}")));
            }
        }
        Ok(())
    }

    fn q_values(&self) -> Vec<u64> {
        match &self.q {
            QSpec::List(v) => v.clone(),
            QSpec::Range { from, to, filter } => (*from..=*to)
                .filter(|&q| match filter {
                    QFilter::Prime => arith::is_prime(q),
                    QFilter::PrimePower => arith::prime_power(q).is_some(),
                    QFilter::None => true,
                })
                .collect(),
        }
    }

    fn d_values(&self, q: u64) -> Vec<u32> {
        match &self.d {
            DSpec::One(d) => vec![*d],
            DSpec::List(v) => v.clone(),
            DSpec::Named(_) => arith::prime_factors(q - 1).into_iter().map(|d| d as u32).collect(),
        }
    }

    fn l_values(&self, q: u64) -> Vec<u32> {
        let mut ls: Vec<u32> = match &self.l {
            LSpec::List(v) => v.clone(),
            LSpec::Named(name) if name == "half" => vec![((q - 1) / 2) as u32],
            LSpec::Named(_) => arith::divisors(q - 1).into_iter().map(|l| l as u32).collect(),
        };
        ls.retain(|&l| l >= self.l_min);
        ls
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Skipped,
    BudgetExceeded,
}

/// Outcome of each applicable check; `None` when not evaluated.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub theorem1: Option<bool>,
    pub corollary1: Option<bool>,
    pub thm2_s_values: Option<bool>,
    pub thm2_relation: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm2Values {
    pub s1: u32,
    pub s1_1: u32,
    pub predicted_s1: u32,
    pub predicted_s1_1: u32,
    pub relation: PredictedRelation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeilSummary {
    pub samples: usize,
    pub violations: usize,
    /// Largest `|sum| / ((e - 1) sqrt(q))` seen.
    pub max_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub q: u32,
    pub gamma: u32,
    pub d: u32,
    pub l: u32,
    pub k: u32,
    pub status: Status,
    pub reason: Option<String>,
    pub lc: Option<usize>,
    pub lc_k: Option<usize>,
    pub witness: Option<ErrorPattern>,
    pub candidates: Option<u128>,
    pub bounds: Option<BoundReport>,
    pub thm2: Option<Thm2Values>,
    /// Attached to the first record of each `(q, d)` group.
    pub weil: Option<WeilSummary>,
    pub checks: Checks,
    pub wall_ms: f64,
}

impl ResultRecord {
    fn bare(q: u32, gamma: u32, d: u32, l: u32, k: u32, status: Status) -> Self {
        ResultRecord {
            q,
            gamma,
            d,
            l,
            k,
            status,
            reason: None,
            lc: None,
            lc_k: None,
            witness: None,
            candidates: None,
            bounds: None,
            thm2: None,
            weil: None,
            checks: Checks::default(),
            wall_ms: 0.0,
        }
    }

    fn skipped(q: u32, d: u32, l: u32, k: u32, reason: String) -> Self {
        let mut r = ResultRecord::bare(q, 0, d, l, k, Status::Skipped);
        r.reason = Some(reason);
        r
    }

    /// Failed checks in this record.
    pub fn violations(&self) -> usize {
        let c = &self.checks;
        let failed = [c.theorem1, c.corollary1, c.thm2_s_values, c.thm2_relation]
            .iter()
            .filter(|x| **x == Some(false))
            .count();
        failed + self.weil.as_ref().map_or(0, |w| w.violations)
    }

    /// Same record with the wall time cleared, for determinism checks.
    pub fn without_timing(&self) -> Self {
        ResultRecord { wall_ms: 0.0, ..self.clone() }
    }

    fn key(&self) -> (u32, u32, u32, u32) {
        (self.q, self.d, self.l, self.k)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub records: usize,
    pub ok: usize,
    pub skipped: usize,
    pub budget_exceeded: usize,
    pub violations: usize,
}

impl SweepSummary {
    pub fn of(records: &[ResultRecord]) -> Self {
        let count = |s: Status| records.iter().filter(|r| r.status == s).count();
        SweepSummary {
            records: records.len(),
            ok: count(Status::Ok),
            skipped: count(Status::Skipped),
            budget_exceeded: count(Status::BudgetExceeded),
            violations: records.iter().map(ResultRecord::violations).sum(),
        }
    }
}

/// All records of the sweep, sorted by `(q, d, l, k)`.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<ResultRecord>> {
    cfg.validate()?;
    let (kmin, kmax) = cfg.k.bounds();
    let mut groups: Vec<(u64, Option<u32>)> = Vec::new();
    for q in cfg.q_values() {
        if arith::prime_power(q).is_none() || q < 3 {
            groups.push((q, None));
            continue;
        }
        for d in cfg.d_values(q) {
            groups.push((q, Some(d)));
        }
    }
    let mut records: Vec<ResultRecord> = groups
        .par_iter()
        .map(|&(q, d)| match d {
            None => (kmin..=kmax)
                .map(|k| ResultRecord::skipped(q as u32, 0, 0, k as u32, format!("q = {q} is not a prime power above 2")))
                .collect(),
            Some(d) => run_group(cfg, q, d, kmin, kmax),
        })
        .collect::<Vec<Vec<ResultRecord>>>()
        .into_iter()
        .flatten()
        .collect();
    records.sort_by_key(ResultRecord::key);
    Ok(records)
}

fn run_group(cfg: &SweepConfig, q: u64, d: u32, kmin: usize, kmax: usize) -> Vec<ResultRecord> {
    let skip_all = |l: u32, reason: String| -> Vec<ResultRecord> {
        (kmin..=kmax).map(|k| ResultRecord::skipped(q as u32, d, l, k as u32, reason.clone())).collect()
    };
    if !arith::is_prime(d as u64) {
        return skip_all(0, format!("d = {d} is not prime"));
    }
    if !(q - 1).is_multiple_of(d as u64) {
        return skip_all(0, format!("d = {d} does not divide q - 1 = {}", q - 1));
    }
    let ctx = match FieldCtx::with_order(q, None) {
        Ok(ctx) => ctx,
        Err(e) => return skip_all(0, e.to_string()),
    };
    let mut out = Vec::new();
    for l in cfg.l_values(q) {
        if l == 0 || !(q - 1).is_multiple_of(l as u64) {
            out.extend(skip_all(l, format!("l = {l} does not divide q - 1 = {}", q - 1)));
            continue;
        }
        out.extend(run_tuple(cfg, &ctx, d, l, kmin, kmax));
    }
    if cfg.toggles.weil {
        let started = Instant::now();
        let summary = weil_summary(&ctx, d, cfg.weil_samples, cfg.seed);
        if let Some(first) = out.iter_mut().find(|r| r.status != Status::Skipped) {
            first.weil = Some(summary);
            first.wall_ms += started.elapsed().as_secs_f64() * 1e3;
        }
    }
    out
}

fn run_tuple(cfg: &SweepConfig, ctx: &FieldCtx, d: u32, l: u32, kmin: usize, kmax: usize) -> Vec<ResultRecord> {
    let started = Instant::now();
    let (q, gamma) = (ctx.q(), ctx.gamma());
    let seq = match sidelnikov_subsequence(ctx, d, l) {
        Ok(s) => s,
        Err(e) => {
            return (kmin..=kmax).map(|k| ResultRecord::skipped(q, d, l, k as u32, e.to_string())).collect();
        }
    };
    let feasible_k = if cfg.toggles.klc {
        (0..=kmax).take_while(|&k| search_size(l as usize, d, k) <= cfg.budget).last()
    } else {
        Some(0)
    };
    let profile = match feasible_k {
        Some(k) if cfg.toggles.lc || cfg.toggles.klc => {
            Some(k_error_profile(&seq, k, cfg.budget).expect("search size checked against the budget"))
        }
        _ => None,
    };
    let thm2 = if cfg.toggles.thm2 && d == 3 && q % 12 == 7 && l == ctx.group_order() / 2 {
        bounds::theorem2_predict(ctx).ok().map(|p| {
            let (s1, s1_1) = bounds::s_values(&seq);
            Thm2Values {
                s1,
                s1_1,
                predicted_s1: p.predicted_s1,
                predicted_s1_1: p.predicted_s1_1,
                relation: p.relation,
            }
        })
    } else {
        None
    };
    let elapsed = started.elapsed().as_secs_f64() * 1e3;

    let mut out = Vec::new();
    for k in kmin..=kmax {
        let started = Instant::now();
        let mut rec = ResultRecord::bare(q, gamma, d, l, k as u32, Status::Ok);
        rec.lc = profile.as_ref().map(|p| p.lc).or_else(|| cfg.toggles.lc.then(|| lc_via_gcd(&seq)));
        if cfg.toggles.klc {
            if feasible_k.is_some_and(|f| k <= f) {
                let entry = &profile.as_ref().expect("profile computed").entries[k];
                rec.lc_k = Some(entry.lc_k);
                rec.witness = Some(entry.witness.clone());
                rec.candidates = Some(search_size(l as usize, d, k));
            } else {
                let count = search_size(l as usize, d, k);
                rec.status = Status::BudgetExceeded;
                rec.reason = Some(Error::BudgetExceeded { count, budget: cfg.budget }.to_string());
            }
        } else if k == 0 {
            rec.lc_k = rec.lc;
        }
        if cfg.toggles.bounds {
            match bounds::bound_report(ctx, d, l, k as u32) {
                Ok(b) => {
                    if let Some(lc_k) = rec.lc_k {
                        rec.checks.theorem1 = Some(lc_k as f64 > b.theorem1_bound);
                        rec.checks.corollary1 = b.corollary1_bound.map(|c| lc_k as u64 >= c);
                    }
                    rec.bounds = Some(b);
                }
                Err(e) => rec.reason = Some(e.to_string()),
            }
        }
        if let Some(t) = &thm2 {
            rec.checks.thm2_s_values = Some((t.s1, t.s1_1) == (t.predicted_s1, t.predicted_s1_1));
            if let (1, Some(lc), Some(lc1)) = (k, rec.lc, rec.lc_k) {
                rec.checks.thm2_relation = match t.relation {
                    PredictedRelation::Lc1EqualsLc => Some(lc1 == lc),
                    PredictedRelation::Lc1EqualsLMinus1 => Some(lc1 + 1 == l as usize),
                    PredictedRelation::None => None,
                };
            }
            rec.thm2 = Some(t.clone());
        }
        rec.wall_ms = elapsed + started.elapsed().as_secs_f64() * 1e3;
        out.push(rec);
    }
    out
}

/// Weil check over `samples` random non-power polynomials of degree at most
/// 4, seeded by `(seed, q, d)`.
pub fn weil_summary(ctx: &FieldCtx, d: u32, samples: usize, seed: u64) -> WeilSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((ctx.q() as u64) << 32) ^ d as u64);
    let mut summary = WeilSummary { samples, violations: 0, max_ratio: 0.0 };
    for f in bounds::sample_non_power_polynomials(ctx, d, samples, 4, &mut rng) {
        let report = bounds::character_sum(ctx, d, &f).expect("d divides q - 1");
        if !bounds::weil_check(&report).expect("sampled polynomials are not d-th powers") {
            summary.violations += 1;
        }
        if report.weil_rhs > 0.0 {
            summary.max_ratio = summary.max_ratio.max(report.magnitude / report.weil_rhs);
        }
    }
    summary
}

pub fn write_records(path: &Path, records: &[ResultRecord]) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut w = std::io::BufWriter::new(file);
    for r in records {
        serde_json::to_writer(&mut w, r).map_err(|e| Error::Internal(e.to_string()))?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records(path: &Path) -> Result<Vec<ResultRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    text.lines()
        .filter(|line| !line.trim().is_empty())
        .map(|line| serde_json::from_str(line).map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

pub fn run_sweep_to_file(cfg: &SweepConfig, out: &Path) -> Result<SweepSummary> {
    let records = run_sweep(cfg)?;
    write_records(out, &records)?;
    Ok(SweepSummary::of(&records))
}
