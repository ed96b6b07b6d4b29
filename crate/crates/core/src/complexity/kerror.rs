//! Exhaustive k-error linear complexity.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexity::lc::{berlekamp_massey, lc_via_gcd, BaseResidues, LcEvaluator};
use crate::error::{Error, Result};
use crate::sequence::{self, ErrorPattern, PeriodicSequence};

/// Default cap on candidate evaluations for one search.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KErrorEntry {
    pub k: usize,
    pub lc_k: usize,
    /// First minimizing pattern in enumeration order (empty when the
    /// unmodified sequence already attains the minimum).
    pub witness: ErrorPattern,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Methods {
    pub gcd: bool,
    pub bm: bool,
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityReport {
    pub d: u32,
    pub l: usize,
    pub lc: usize,
    /// One entry per `k = 0..=max_k`.
    pub entries: Vec<KErrorEntry>,
    pub methods: Methods,
    /// Size of the search space, identity included.
    pub candidates: u128,
}

impl ComplexityReport {
    pub fn lc_k(&self, k: usize) -> Option<usize> {
        self.entries.get(k).map(|e| e.lc_k)
    }
}

/// Candidates in a search up to weight `k`, the unmodified sequence included.
pub fn search_size(l: usize, d: u32, k: usize) -> u128 {
    sequence::pattern_count(l, d, k).saturating_add(1)
}

/// Best candidate found: `(lc, rank, pattern)`; rank `None` is the identity.
type Best = (usize, Option<u128>, ErrorPattern);

fn better(a: &Best, b: &Best) -> bool {
    (a.0, a.1.map_or(0, |r| r + 1)) < (b.0, b.1.map_or(0, |r| r + 1))
}

/// Minimum `LC` over all changes of at most `k` terms, with a witness.
pub fn k_error_lc(seq: &PeriodicSequence, k: usize, budget: u128) -> Result<KErrorEntry> {
    let report = k_error_profile(seq, k, budget)?;
    Ok(report.entries.into_iter().last().expect("k = 0 entry always present"))
}

/// `LC_0 ..= LC_max_k` from a single pass over the search space.
///
/// The result does not depend on the number of worker threads: ties are
/// broken by enumeration index.
pub fn k_error_profile(seq: &PeriodicSequence, max_k: usize, budget: u128) -> Result<ComplexityReport> {
    let (l, d) = (seq.period(), seq.d());
    let max_k = max_k.min(l);
    let count = search_size(l, d, max_k);
    if count > budget {
        return Err(Error::BudgetExceeded { count, budget });
    }
    let evaluator = LcEvaluator::new(d, l);
    let base = evaluator.base(seq.terms());
    let lc = evaluator.lc_with_changes(&base, &[]);

    let mut best: Best = (lc, None, ErrorPattern::empty());
    let mut entries = vec![KErrorEntry { k: 0, lc_k: lc, witness: ErrorPattern::empty() }];
    for w in 1..=max_k {
        if best.0 > 0 {
            if let Some(found) = best_of_weight(seq, &evaluator, &base, w) {
                if better(&found, &best) {
                    best = found;
                }
            }
        }
        entries.push(KErrorEntry { k: w, lc_k: best.0, witness: best.2.clone() });
    }
    Ok(ComplexityReport {
        d,
        l,
        lc,
        entries,
        methods: Methods { gcd: true, bm: false, exhaustive: max_k > 0 },
        candidates: count,
    })
}

/// LC by both the gcd formula and Berlekamp-Massey, plus the exhaustive
/// profile up to `max_k`.
pub fn complexity_report(seq: &PeriodicSequence, max_k: usize, budget: u128) -> Result<ComplexityReport> {
    let mut report = k_error_profile(seq, max_k, budget)?;
    let (bm, _) = berlekamp_massey(seq);
    if bm != report.lc {
        return Err(Error::Internal(format!(
            "Berlekamp-Massey gives {bm} but the gcd route gives {}",
            report.lc
        )));
    }
    report.methods.bm = true;
    Ok(report)
}

fn best_of_weight(
    seq: &PeriodicSequence,
    evaluator: &LcEvaluator,
    base: &BaseResidues,
    w: usize,
) -> Option<Best> {
    let l = seq.period();
    if w > l {
        return None;
    }
    (0..=l - w)
        .into_par_iter()
        .filter_map(|first| {
            let mut search = WeightSearch {
                seq,
                evaluator,
                base,
                w,
                positions: Vec::with_capacity(w),
                ranks: Vec::with_capacity(w),
                changes: Vec::with_capacity(w),
                best: None,
            };
            search.descend_from(first);
            search.best
        })
        .reduce_with(|a, b| if better(&b, &a) { b } else { a })
}

struct WeightSearch<'a> {
    seq: &'a PeriodicSequence,
    evaluator: &'a LcEvaluator,
    base: &'a BaseResidues,
    w: usize,
    positions: Vec<usize>,
    ranks: Vec<u32>,
    changes: Vec<(usize, u32)>,
    best: Option<Best>,
}

impl WeightSearch<'_> {
    fn descend_from(&mut self, pos: usize) {
        let d = self.seq.d();
        let original = self.seq.terms()[pos];
        for rank in 0..d - 1 {
            let value = sequence::replacement_for_rank(original, rank);
            let delta = (value + d - original) % d;
            self.positions.push(pos);
            self.ranks.push(rank);
            self.changes.push((pos, delta));
            if self.positions.len() == self.w {
                self.evaluate();
            } else {
                let remaining = self.w - self.positions.len();
                for next in pos + 1..=self.seq.period() - remaining {
                    self.descend_from(next);
                }
            }
            self.positions.pop();
            self.ranks.pop();
            self.changes.pop();
        }
    }

    fn evaluate(&mut self) {
        let lc = self.evaluator.lc_with_changes(self.base, &self.changes);
        if let Some(best) = &self.best {
            if lc > best.0 {
                return;
            }
        }
        let rank = sequence::pattern_rank(self.seq.period(), self.seq.d(), &self.positions, &self.ranks);
        let candidate = (lc, Some(rank), ErrorPattern::empty());
        let improves = match &self.best {
            None => true,
            Some(b) => better(&candidate, b),
        };
        if improves {
            let terms = self.seq.terms();
            let changes = self
                .positions
                .iter()
                .zip(&self.ranks)
                .map(|(&p, &r)| (p, sequence::replacement_for_rank(terms[p], r)))
                .collect();
            let pattern = ErrorPattern::new(changes).expect("positions are distinct");
            self.best = Some((lc, Some(rank), pattern));
        }
    }
}

/// Reference search: perturb and recompute with plain Euclid for every
/// pattern in enumeration order. Slow; meant as an oracle.
pub fn k_error_lc_reference(seq: &PeriodicSequence, k: usize) -> (usize, ErrorPattern) {
    let mut best = (lc_via_gcd(seq), ErrorPattern::empty());
    for pattern in sequence::enumerate_error_patterns(seq, k) {
        let lc = lc_via_gcd(&seq.perturb(&pattern).expect("enumerated patterns are valid"));
        if lc < best.0 {
            best = (lc, pattern);
        }
    }
    best
}
