//! Periodic sequences over `F_d`, the Sidel'nikov subsequence construction
//! and bounded-weight error patterns.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::FieldCtx;

/// Parameters a generated sequence came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceOrigin {
    pub q: u32,
    pub gamma: u32,
    /// `alpha = gamma^alpha_exponent`, with `alpha_exponent = (q - 1) / l`.
    pub alpha_exponent: u32,
}

/// One period of an `l`-periodic sequence with terms in `F_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicSequence {
    d: u32,
    terms: Vec<u32>,
    origin: Option<SequenceOrigin>,
}

impl PeriodicSequence {
    pub fn new(d: u32, terms: Vec<u32>) -> Result<Self> {
        if !arith::is_prime(d as u64) {
            return Err(Error::NotPrime(d as u64));
        }
        if terms.is_empty() {
            return Err(Error::InvalidArgument("a period needs at least one term".into()));
        }
        if let Some(&bad) = terms.iter().find(|&&t| t >= d) {
            return Err(Error::InvalidArgument(format!("term {bad} is not below d = {d}")));
        }
        Ok(PeriodicSequence { d, terms, origin: None })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn period(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[u32] {
        &self.terms
    }

    pub fn origin(&self) -> Option<&SequenceOrigin> {
        self.origin.as_ref()
    }

    /// `s_n` for any `n`, reading the period cyclically.
    pub fn term(&self, n: usize) -> u32 {
        self.terms[n % self.terms.len()]
    }

    /// Applies `pattern`; the result carries no origin.
    pub fn perturb(&self, pattern: &ErrorPattern) -> Result<PeriodicSequence> {
        let mut terms = self.terms.clone();
        for &(pos, value) in pattern.changes() {
            if pos >= terms.len() {
                return Err(Error::InvalidPattern(format!(
                    "position {pos} outside period {}",
                    terms.len()
                )));
            }
            if value >= self.d {
                return Err(Error::InvalidPattern(format!("value {value} is not below d = {}", self.d)));
            }
            if terms[pos] == value {
                return Err(Error::InvalidPattern(format!(
                    "replacement at position {pos} equals the original term {value}"
                )));
            }
            terms[pos] = value;
        }
        Ok(PeriodicSequence { d: self.d, terms, origin: None })
    }

    /// The two-line text format: `d l`, then the `l` terms.
    pub fn to_file_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PeriodicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.d, self.terms.len())?;
        let body: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        writeln!(f, "{}", body.join(" "))
    }
}

impl FromStr for PeriodicSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|line| !line.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing header line `d l`".into()))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        let [d, l] = head.as_slice() else {
            return Err(Error::Parse(format!("header must be `d l`, got `{header}`")));
        };
        let d: u32 = d.parse().map_err(|_| Error::Parse(format!("bad d `{d}`")))?;
        let l: usize = l.parse().map_err(|_| Error::Parse(format!("bad l `{l}`")))?;
        let body = lines
            .next()
            .ok_or_else(|| Error::Parse("missing line of terms".into()))?;
        if lines.next().is_some() {
            return Err(Error::Parse("trailing content after the terms line".into()));
        }
        let terms = body
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad term `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if terms.len() != l {
            return Err(Error::Parse(format!("header says {l} terms, found {}", terms.len())));
        }
        PeriodicSequence::new(d, terms)
    }
}

/// The `l`-periodic subsequence of the `d`-ary Sidel'nikov sequence:
/// `s_n = j` when `alpha^n + 1 ∈ D_j`, and `s_n = 0` when `alpha^n + 1 = 0`,
/// where `alpha = gamma^((q-1)/l)`.
pub fn sidelnikov_subsequence(ctx: &FieldCtx, d: u32, l: u32) -> Result<PeriodicSequence> {
    let n = ctx.group_order();
    if !arith::is_prime(d as u64) {
        return Err(Error::NotPrime(d as u64));
    }
    if !n.is_multiple_of(d) {
        return Err(Error::NotADivisor { divisor: d as u64, n: n as u64 });
    }
    if l == 0 || !n.is_multiple_of(l) {
        return Err(Error::NotADivisor { divisor: l as u64, n: n as u64 });
    }
    let step = n / l;
    let terms = (0..l)
        .map(|i| {
            let y = ctx.add(ctx.antilog(i as u64 * step as u64), 1);
            if y == 0 {
                0
            } else {
                ctx.log_unchecked(y) % d
            }
        })
        .collect();
    Ok(PeriodicSequence {
        d,
        terms,
        origin: Some(SequenceOrigin { q: ctx.q(), gamma: ctx.gamma(), alpha_exponent: step }),
    })
}

/// A set of `(position, replacement)` changes at distinct positions,
/// sorted by position.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ErrorPattern {
    changes: Vec<(usize, u32)>,
}

impl ErrorPattern {
    pub fn new(mut changes: Vec<(usize, u32)>) -> Result<Self> {
        changes.sort_unstable();
        if changes.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidPattern("duplicate positions".into()));
        }
        Ok(ErrorPattern { changes })
    }

    pub fn empty() -> Self {
        ErrorPattern::default()
    }

    pub fn weight(&self) -> usize {
        self.changes.len()
    }

    pub fn changes(&self) -> &[(usize, u32)] {
        &self.changes
    }

    /// The pattern that undoes `self` when applied to `original.perturb(self)`.
    pub fn reverting(&self, original: &PeriodicSequence) -> ErrorPattern {
        ErrorPattern {
            changes: self.changes.iter().map(|&(pos, _)| (pos, original.terms[pos])).collect(),
        }
    }
}

/// Replacement value of the given rank among `[0, d) \ {original}`, ascending.
#[inline]
pub fn replacement_for_rank(original: u32, rank: u32) -> u32 {
    if rank < original {
        rank
    } else {
        rank + 1
    }
}

#[inline]
pub fn rank_of_replacement(original: u32, value: u32) -> u32 {
    if value < original {
        value
    } else {
        value - 1
    }
}

/// Number of patterns of weight `1..=k`: `Σ C(l, w) (d-1)^w`, saturating.
pub fn pattern_count(l: usize, d: u32, k: usize) -> u128 {
    (1..=k.min(l)).fold(0u128, |acc, w| acc.saturating_add(weight_count(l, d, w)))
}

fn weight_count(l: usize, d: u32, w: usize) -> u128 {
    let per = (d as u128 - 1).checked_pow(w as u32).unwrap_or(u128::MAX);
    arith::binomial(l as u64, w as u64).saturating_mul(per)
}

/// Index of a pattern in the enumeration order of [`PatternEnumerator`]:
/// weight first, then positions lexicographically, then replacement ranks
/// lexicographically.
pub fn pattern_rank(l: usize, d: u32, positions: &[usize], ranks: &[u32]) -> u128 {
    let w = positions.len();
    let base = pattern_count(l, d, w - 1);
    let combo = combination_rank(l, positions);
    let radix = d as u128 - 1;
    let digits = ranks.iter().fold(0u128, |acc, &r| acc * radix + r as u128);
    base + combo * radix.pow(w as u32) + digits
}

fn combination_rank(l: usize, positions: &[usize]) -> u128 {
    let w = positions.len();
    let mut rank = 0u128;
    let mut prev = None;
    for (i, &c) in positions.iter().enumerate() {
        let start = prev.map_or(0, |p| p + 1);
        for x in start..c {
            rank += arith::binomial((l - 1 - x) as u64, (w - 1 - i) as u64);
        }
        prev = Some(c);
    }
    rank
}

fn combination_unrank(l: usize, w: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(w);
    let mut x = 0;
    for i in 0..w {
        loop {
            let below = arith::binomial((l - 1 - x) as u64, (w - 1 - i) as u64);
            if rank < below {
                break;
            }
            rank -= below;
            x += 1;
        }
        out.push(x);
        x += 1;
    }
    out
}

/// Streams every error pattern of weight `1..=k` exactly once, in a fixed
/// order that does not depend on the sequence contents. Replacements are
/// produced as ranks and resolved against the base sequence, so the order
/// is "replacement values ascending" at each position.
#[derive(Clone, Debug)]
pub struct PatternEnumerator<'a> {
    seq: &'a PeriodicSequence,
    k: usize,
    positions: Vec<usize>,
    ranks: Vec<u32>,
    remaining: u128,
}

impl<'a> PatternEnumerator<'a> {
    pub fn new(seq: &'a PeriodicSequence, k: usize) -> Self {
        Self::starting_at(seq, k, 0)
    }

    /// Enumerator positioned at the pattern with the given index, for
    /// splitting the search space between workers.
    pub fn starting_at(seq: &'a PeriodicSequence, k: usize, index: u128) -> Self {
        let (l, d) = (seq.period(), seq.d());
        let k = k.min(l);
        let total = pattern_count(l, d, k);
        let mut out = PatternEnumerator { seq, k, positions: Vec::new(), ranks: Vec::new(), remaining: 0 };
        if index >= total || d < 2 {
            return out;
        }
        out.remaining = total - index;
        let mut rest = index;
        let mut w = 1;
        while rest >= weight_count(l, d, w) {
            rest -= weight_count(l, d, w);
            w += 1;
        }
        let block = (d as u128 - 1).pow(w as u32);
        out.positions = combination_unrank(l, w, rest / block);
        let mut digits = rest % block;
        out.ranks = vec![0; w];
        for slot in out.ranks.iter_mut().rev() {
            *slot = (digits % (d as u128 - 1)) as u32;
            digits /= d as u128 - 1;
        }
        out
    }

    fn advance(&mut self) {
        let (l, d) = (self.seq.period(), self.seq.d());
        // Replacement ranks, last slot fastest.
        for i in (0..self.ranks.len()).rev() {
            if self.ranks[i] + 2 < d {
                self.ranks[i] += 1;
                return;
            }
            self.ranks[i] = 0;
        }
        // Next combination of the same weight.
        let w = self.positions.len();
        for i in (0..w).rev() {
            if self.positions[i] < l - w + i {
                self.positions[i] += 1;
                for j in i + 1..w {
                    self.positions[j] = self.positions[j - 1] + 1;
                }
                return;
            }
        }
        // Next weight.
        let w = w + 1;
        if w <= self.k {
            self.positions = (0..w).collect();
            self.ranks = vec![0; w];
        }
    }
}

impl Iterator for PatternEnumerator<'_> {
    type Item = ErrorPattern;

    fn next(&mut self) -> Option<ErrorPattern> {
        if self.remaining == 0 {
            return None;
        }
        let terms = self.seq.terms();
        let changes = self
            .positions
            .iter()
            .zip(&self.ranks)
            .map(|(&pos, &rank)| (pos, replacement_for_rank(terms[pos], rank)))
            .collect();
        self.remaining -= 1;
        if self.remaining > 0 {
            self.advance();
        }
        Some(ErrorPattern { changes })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, usize::try_from(self.remaining).ok())
    }
}

/// Every pattern of weight `1..=k` for `seq`, in enumeration order.
pub fn enumerate_error_patterns(seq: &PeriodicSequence, k: usize) -> PatternEnumerator<'_> {
    PatternEnumerator::new(seq, k)
}
