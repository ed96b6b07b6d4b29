//! Lower bounds on `LC_k` and the exact 1-error predictions for `d = 3`.

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::complexity::hasse::{hasse_at, lucas_binomial};
use crate::complexity::kerror::search_size;
use crate::complexity::lc::sequence_poly;
use crate::complexity::poly::DensePoly;
use crate::cyclotomy::{self, ABDecomposition, Order6Case};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::sequence::{self, PeriodicSequence};

/// Real lower bound: `LC_k > l / (sqrt(q) + 2k) - 1` for odd `l`, and
/// `l / (sqrt(q) + 2k + 2) - 1` for even `l`.
pub fn theorem1_bound(q: u64, l: u64, k: u64) -> f64 {
    let extra = if l.is_multiple_of(2) { 2.0 } else { 0.0 };
    l as f64 / ((q as f64).sqrt() + 2.0 * k as f64 + extra) - 1.0
}

/// Whether the root-exclusion argument applies to the prime `r`, with every
/// failed clause listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Applicability {
    pub applicable: bool,
    pub reasons: Vec<String>,
}

pub fn prop1_applicability(q: u64, d: u64, l: u64, r: u64, k: u64) -> Applicability {
    let mut reasons = Vec::new();
    let prime = arith::is_prime(r);
    if !prime || r == 2 {
        reasons.push(format!("r = {r} must be an odd prime"));
    }
    if r == d {
        reasons.push("r ≠ d required".to_string());
    }
    if r == 0 || !l.is_multiple_of(r) {
        reasons.push(format!("r = {r} does not divide l = {l}"));
    }
    if prime && r != d && !cyclotomy::is_primitive_root(d, r).unwrap_or(false) {
        reasons.push(format!("d = {d} is not a primitive root modulo r = {r}"));
    }
    let threshold = (q as f64).sqrt() + 2.0 * k as f64 + 1.0;
    if (r as f64) < threshold {
        reasons.push(format!("r = {r} < sqrt(q) + 2k + 1 = {threshold:.4}"));
    }
    Applicability { applicable: reasons.is_empty(), reasons }
}

/// True iff every sequence within Hamming distance `k` of `seq` (including
/// `seq`) has `gcd(T(x), 1 + x + ... + x^(r-1)) = 1` over `F_d`.
pub fn prop1_verify_exhaustive(seq: &PeriodicSequence, r: usize, k: usize, budget: u128) -> Result<bool> {
    let (l, d) = (seq.period(), seq.d());
    if r < 2 || l % r != 0 {
        return Err(Error::NotADivisor { divisor: r as u64, n: l as u64 });
    }
    let count = search_size(l, d, k);
    if count > budget {
        return Err(Error::BudgetExceeded { count, budget });
    }
    let psi = DensePoly::new(d, vec![1; r]);
    // T mod (x^r - 1); psi divides x^r - 1.
    let mut folded = vec![0u32; r];
    for (n, &t) in seq.terms().iter().enumerate() {
        folded[n % r] = (folded[n % r] + t) % d;
    }
    let coprime = |coeffs: &[u32]| -> bool {
        let t = DensePoly::new(d, coeffs.to_vec());
        !t.is_zero() && t.gcd(&psi).map(|g| g.is_one()).unwrap_or(false)
    };
    if !coprime(&folded) {
        return Ok(false);
    }
    for pattern in sequence::enumerate_error_patterns(seq, k) {
        let mut cur = folded.clone();
        for &(pos, value) in pattern.changes() {
            let delta = (value + d - seq.terms()[pos]) % d;
            cur[pos % r] = (cur[pos % r] + delta) % d;
        }
        if !coprime(&cur) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(r - 1) d^m`.
pub fn corollary1_bound(d: u64, m: u32, r: u64) -> u64 {
    (r - 1) * d.pow(m)
}

/// `l = d^s * r * v` with `r` the prime used for the root-exclusion bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodFactorization {
    pub s: u32,
    pub r: Option<u64>,
    pub v: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub q: u32,
    pub gamma: u32,
    pub d: u32,
    pub l: u32,
    pub k: u32,
    pub theorem1_bound: f64,
    pub factorization: PeriodFactorization,
    pub prop1_applicable: bool,
    pub prop1_reasons: Vec<String>,
    pub corollary1_bound: Option<u64>,
    pub theorem2: Option<Theorem2Prediction>,
}

impl BoundReport {
    /// Smallest integer the proven bounds force `LC_k` to reach.
    pub fn guaranteed_minimum(&self) -> u64 {
        let t1 = if self.theorem1_bound < 0.0 { 0 } else { self.theorem1_bound.floor() as u64 + 1 };
        t1.max(self.corollary1_bound.unwrap_or(0))
    }
}

pub fn bound_report(ctx: &FieldCtx, d: u32, l: u32, k: u32) -> Result<BoundReport> {
    let n = ctx.group_order();
    for x in [d, l] {
        if x == 0 || !n.is_multiple_of(x) {
            return Err(Error::NotADivisor { divisor: x as u64, n: n as u64 });
        }
    }
    let (q64, d64, l64, k64) = (ctx.q() as u64, d as u64, l as u64, k as u64);
    let (s, cofactor) = arith::split_power(l64, d64);
    let mut candidates: Vec<u64> = arith::prime_factors(cofactor).into_iter().filter(|&r| r != 2).collect();
    candidates.sort_unstable_by(|a, b| b.cmp(a));
    let chosen = candidates
        .iter()
        .map(|&r| (r, prop1_applicability(q64, d64, l64, r, k64)))
        .find(|(_, a)| a.applicable)
        .or_else(|| candidates.first().map(|&r| (r, prop1_applicability(q64, d64, l64, r, k64))));
    let (factorization, applicability) = match chosen {
        Some((r, a)) => (PeriodFactorization { s, r: Some(r), v: cofactor / r }, a),
        None => (
            PeriodFactorization { s, r: None, v: cofactor },
            Applicability {
                applicable: false,
                reasons: vec![format!("l = {l} has no odd prime divisor other than d = {d}")],
            },
        ),
    };
    let corollary = if applicability.applicable {
        factorization.r.map(|r| corollary1_bound(d64, s, r))
    } else {
        None
    };
    let theorem2 = if d == 3 && ctx.q() % 12 == 7 && l == n / 2 {
        Some(theorem2_predict(ctx)?)
    } else {
        None
    };
    Ok(BoundReport {
        q: ctx.q(),
        gamma: ctx.gamma(),
        d,
        l,
        k,
        theorem1_bound: theorem1_bound(q64, l64, k64),
        factorization,
        prop1_applicable: applicability.applicable,
        prop1_reasons: applicability.reasons,
        corollary1_bound: corollary,
        theorem2,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PredictedRelation {
    #[serde(rename = "LC1=LC")]
    Lc1EqualsLc,
    #[serde(rename = "LC1=l-1")]
    Lc1EqualsLMinus1,
    #[serde(rename = "none")]
    None,
}

impl PredictedRelation {
    pub fn label(self) -> &'static str {
        match self {
            PredictedRelation::Lc1EqualsLc => "LC1=LC",
            PredictedRelation::Lc1EqualsLMinus1 => "LC1=l-1",
            PredictedRelation::None => "none",
        }
    }
}

/// Predictions for `d = 3`, `l = (q - 1) / 2`, `q ≡ 7 (mod 12)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Theorem2Prediction {
    pub q: u32,
    pub gamma: u32,
    pub l: u32,
    pub a: i64,
    pub b: i64,
    pub b_sign_calibrated: bool,
    /// `log_gamma(2) mod 3`.
    pub two_exponent_mod3: u32,
    pub case: Order6Case,
    /// `S(1) mod 3`.
    pub predicted_s1: u32,
    /// `S^(1)(1) mod 3`.
    pub predicted_s1_1: u32,
    /// `l = 3^power3 * cofactor`.
    pub power3: u32,
    pub cofactor: u64,
    /// Whether the hypotheses on `l` needed for the `LC_1` claims hold.
    pub hypotheses_hold: bool,
    pub hypothesis_failures: Vec<String>,
    pub relation: PredictedRelation,
}

pub fn theorem2_predict(ctx: &FieldCtx) -> Result<Theorem2Prediction> {
    let q = ctx.q();
    if q % 12 != 7 {
        return Err(Error::Unsupported(format!("q = {q} is not 7 mod 12")));
    }
    let dec: ABDecomposition = cyclotomy::decompose_a_b(ctx)?;
    let case = dec.case();
    let c_b = match case {
        Order6Case::Ia => 0,
        Order6Case::Ib => -1,
        Order6Case::Ic => 1,
    };
    let predicted_s1 = (-dec.b).rem_euclid(3) as u32;
    let predicted_s1_1 = ((1 - dec.a) / 3 + c_b * dec.b).rem_euclid(3) as u32;

    let l = ctx.group_order() / 2;
    let (power3, cofactor) = arith::split_power(l as u64, 3);
    let mut failures = Vec::new();
    if power3 == 0 {
        failures.push(format!("3 does not divide l = {l}"));
    }
    if !arith::is_prime(cofactor) || cofactor == 3 {
        failures.push(format!("r = {cofactor} is not a prime other than 3"));
    } else if !cyclotomy::is_primitive_root(3, cofactor)? {
        failures.push(format!("3 is not a primitive root modulo r = {cofactor}"));
    }
    let threshold = (q as f64).sqrt() + 3.0;
    if (cofactor as f64) < threshold {
        failures.push(format!("r = {cofactor} < sqrt(q) + 3 = {threshold:.4}"));
    }
    let hypotheses_hold = failures.is_empty();
    let relation = if !hypotheses_hold {
        PredictedRelation::None
    } else if dec.b.rem_euclid(3) == 0 {
        PredictedRelation::Lc1EqualsLc
    } else if dec.a.rem_euclid(9) != 1 {
        PredictedRelation::Lc1EqualsLMinus1
    } else {
        PredictedRelation::None
    };
    Ok(Theorem2Prediction {
        q,
        gamma: ctx.gamma(),
        l,
        a: dec.a,
        b: dec.b,
        b_sign_calibrated: dec.sign_calibrated,
        two_exponent_mod3: dec.two_exponent % 3,
        case,
        predicted_s1,
        predicted_s1_1,
        power3,
        cofactor,
        hypotheses_hold,
        hypothesis_failures: failures,
        relation,
    })
}

/// `(S(1), S^(1)(1))` computed directly from the terms.
pub fn s_values(seq: &PeriodicSequence) -> (u32, u32) {
    let s = sequence_poly(seq);
    (hasse_at(&s, 0, 1), hasse_at(&s, 1, 1))
}

/// `S^(h)(1)` from brute-force cyclotomic numbers of order `(q-1)/l * d^e`,
/// with `e` the least digit length such that `h < d^e`, `d^e | l`, and `d`
/// divides the order.
pub fn hasse_at_one_via_cyclotomy(ctx: &FieldCtx, d: u32, l: u32, h: usize) -> Result<u32> {
    let n = ctx.group_order();
    for x in [d, l] {
        if x == 0 || !n.is_multiple_of(x) {
            return Err(Error::NotADivisor { divisor: x as u64, n: n as u64 });
        }
    }
    let w = (n / l) as u64;
    let mut e = 0u32;
    let mut block = 1u64;
    while block <= h as u64 || !(w * block).is_multiple_of(d as u64) {
        e += 1;
        block *= d as u64;
    }
    if !(l as u64).is_multiple_of(block) {
        return Err(Error::InvalidArgument(format!(
            "h = {h} needs d^{e} = {block} to divide l = {l}"
        )));
    }
    hasse_at_one_with_digits(ctx, d, l, h, e)
}

/// As [`hasse_at_one_via_cyclotomy`] with an explicit digit length `e`.
pub fn hasse_at_one_with_digits(ctx: &FieldCtx, d: u32, l: u32, h: usize, e: u32) -> Result<u32> {
    let block = (d as u64).pow(e);
    let w = ctx.group_order() / l;
    if h as u64 >= block || !(l as u64).is_multiple_of(block) || !(w as u64 * block).is_multiple_of(d as u64) {
        return Err(Error::InvalidArgument(format!(
            "need h = {h} < d^e = {block}, d^e | l = {l} and d | (q-1)/l * d^e"
        )));
    }
    let v = w * block as u32;
    let table = cyclotomy::cyclotomic_numbers_bruteforce(ctx, v)?;
    let d64 = d as u64;
    let mut acc = 0u64;
    for i in h as u64..block {
        let binom = lucas_binomial(i, h as u64, d) as u64;
        if binom == 0 {
            continue;
        }
        let mut inner = 0u64;
        for j in 0..(v / d) as i64 {
            for m in 1..d as i64 {
                inner += table.get((w as u64 * i) as i64, j * d as i64 + m) * m as u64;
            }
        }
        acc = (acc + binom * (inner % d64)) % d64;
    }
    Ok(acc as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::sidelnikov_subsequence;

    #[test]
    fn lower_bound_examples() {
        assert!((theorem1_bound(1423, 711, 1) - 16.899).abs() < 1e-3);
        assert!((theorem1_bound(7, 6, 0) - 0.2915).abs() < 1e-3);
        assert!(theorem1_bound(103, 51, 2) < theorem1_bound(103, 51, 1));
    }

    #[test]
    fn applicability_examples() {
        assert!(prop1_applicability(1423, 3, 711, 79, 1).applicable);
        let a = prop1_applicability(1423, 3, 711, 3, 1);
        assert!(a.reasons.iter().any(|r| r == "r ≠ d required"));
        let a = prop1_applicability(1423, 3, 711, 5, 1);
        assert!(!a.applicable);
        assert!(a.reasons.iter().any(|r| r.contains("does not divide")));
        assert!(a.reasons.iter().any(|r| r.contains("sqrt(q)")));
        assert!(prop1_applicability(103, 3, 51, 17, 1).applicable);
    }

    #[test]
    fn root_exclusion_bound_examples() {
        assert_eq!(corollary1_bound(3, 2, 79), 702);
        assert_eq!(corollary1_bound(5, 0, 11), 10);
        assert_eq!(corollary1_bound(3, 1, 17), 48);
    }

    #[test]
    fn root_exclusion_fails_on_all_ones() {
        let s = PeriodicSequence::new(3, vec![1; 5]).unwrap();
        assert!(!prop1_verify_exhaustive(&s, 5, 0, 10).unwrap());
    }

    #[test]
    fn bound_report_q103() {
        let ctx = FieldCtx::with_order(103, None).unwrap();
        let r = bound_report(&ctx, 3, 51, 1).unwrap();
        assert_eq!(r.factorization, PeriodFactorization { s: 1, r: Some(17), v: 1 });
        assert_eq!(r.corollary1_bound, Some(48));
        assert!(r.theorem2.is_some());
        assert!(bound_report(&ctx, 3, 17, 1).unwrap().theorem2.is_none());
        let r = bound_report(&ctx, 3, 6, 1).unwrap();
        assert!(!r.prop1_applicable);
        assert_eq!(r.corollary1_bound, None);
    }

    #[test]
    fn predictions_q7() {
        let ctx = FieldCtx::with_order(7, Some(3)).unwrap();
        let p = theorem2_predict(&ctx).unwrap();
        assert_eq!((p.a, p.b, p.two_exponent_mod3), (-2, 1, 2));
        assert_eq!((p.predicted_s1, p.predicted_s1_1), (2, 2));
        assert_eq!(p.relation, PredictedRelation::None);
        let seq = sidelnikov_subsequence(&ctx, 3, 3).unwrap();
        assert_eq!(seq.terms(), &[2, 1, 2]);
        assert_eq!(s_values(&seq), (2, 2));
    }

    #[test]
    fn predictions_q1423() {
        let ctx = FieldCtx::with_order(1423, None).unwrap();
        let p = theorem2_predict(&ctx).unwrap();
        assert_eq!(p.a, 10);
        assert_eq!(p.b.rem_euclid(3), 0);
        assert_eq!((p.power3, p.cofactor), (2, 79));
        assert!(p.hypotheses_hold);
        assert_eq!(p.relation, PredictedRelation::Lc1EqualsLc);
        assert!(matches!(
            theorem2_predict(&FieldCtx::with_order(13, None).unwrap()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn hasse_via_cyclotomy_q7() {
        let ctx = FieldCtx::with_order(7, Some(3)).unwrap();
        assert_eq!(hasse_at_one_via_cyclotomy(&ctx, 3, 3, 0).unwrap(), 2);
        assert_eq!(hasse_at_one_via_cyclotomy(&ctx, 3, 3, 1).unwrap(), 2);
        assert_eq!(hasse_at_one_with_digits(&ctx, 3, 3, 0, 1).unwrap(), 2);
        assert!(hasse_at_one_via_cyclotomy(&ctx, 3, 3, 3).is_err());
    }
}
