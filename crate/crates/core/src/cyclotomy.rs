//! Cyclotomic classes and cyclotomic numbers `(i, j)_v = |(D_i + 1) ∩ D_j|`.
//!
//! Brute-force tables work for any order `v | q - 1`. For `v = 6` and
//! `q ≡ 7 (mod 12)` the classical closed forms in terms of the
//! representation `q = A^2 + 3B^2` are also available; they are completed
//! through the symmetry relations and cross-checked against brute force
//! entry by entry.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::FieldCtx;

/// Index `j` of the class `D_j` (order `d`) containing `x`.
pub fn class_index(ctx: &FieldCtx, d: u32, x: u32) -> Result<u32> {
    require_order(ctx, d)?;
    Ok(ctx.discrete_log(x)? % d)
}

fn require_order(ctx: &FieldCtx, v: u32) -> Result<()> {
    if v == 0 || !ctx.group_order().is_multiple_of(v) {
        return Err(Error::NotADivisor { divisor: v as u64, n: ctx.group_order() as u64 });
    }
    Ok(())
}

/// True iff `d` generates the multiplicative group modulo the prime `r`.
pub fn is_primitive_root(d: u64, r: u64) -> Result<bool> {
    if !arith::is_prime(r) {
        return Err(Error::NotPrime(r));
    }
    if d.is_multiple_of(r) {
        return Err(Error::InvalidArgument(format!("{d} is divisible by {r}")));
    }
    Ok(arith::multiplicative_order(d, r) == Some(r - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    BruteForce,
    ClosedFormOrder6,
}

/// Where a single table entry came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum EntrySource {
    /// Counted directly.
    BruteForce,
    /// Closed form (possibly transported through a symmetry), agrees with
    /// the direct count.
    Formula,
    /// No closed form reaches this entry; filled from the direct count.
    BruteForceFill,
    /// A closed form reaches this entry but disagrees with the direct count
    /// (or two closed forms disagree). The stored value is the direct count;
    /// `numerator` is the closed form's value times 36.
    FormulaMismatch { numerator: i64 },
}

/// A `v x v` table of cyclotomic numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycloTable {
    pub q: u32,
    pub v: u32,
    /// Class size `(q - 1) / v`.
    pub f: u32,
    pub gamma: u32,
    pub provenance: Provenance,
    counts: Vec<u64>,
    sources: Vec<EntrySource>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<ABDecomposition>,
}

impl CycloTable {
    /// Entry `(i, j)_v`; indices are taken mod `v`.
    pub fn get(&self, i: i64, j: i64) -> u64 {
        self.counts[self.index(i, j)]
    }

    pub fn source(&self, i: i64, j: i64) -> EntrySource {
        self.sources[self.index(i, j)]
    }

    fn index(&self, i: i64, j: i64) -> usize {
        let v = self.v as i64;
        (i.rem_euclid(v) * v + j.rem_euclid(v)) as usize
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.counts.chunks(self.v as usize).map(|r| r.to_vec()).collect()
    }

    /// Entries whose value was produced by a closed form.
    pub fn formula_entries(&self) -> Vec<(u32, u32)> {
        self.entries_where(|s| matches!(s, EntrySource::Formula | EntrySource::FormulaMismatch { .. }))
    }

    pub fn formula_mismatches(&self) -> Vec<(u32, u32)> {
        self.entries_where(|s| matches!(s, EntrySource::FormulaMismatch { .. }))
    }

    fn entries_where(&self, pred: impl Fn(&EntrySource) -> bool) -> Vec<(u32, u32)> {
        let v = self.v;
        self.sources
            .iter()
            .enumerate()
            .filter(|(_, s)| pred(s))
            .map(|(k, _)| (k as u32 / v, k as u32 % v))
            .collect()
    }

    /// Entries violating `(i,j) = (-i, j-i)` or the transposition rule
    /// (`(i,j) = (j,i)` when `-1 ∈ D_0`, else `(i,j) = (j+v/2, i+v/2)`).
    pub fn symmetry_violations(&self) -> Vec<(u32, u32)> {
        let v = self.v as i64;
        let minus_one_in_d0 = self.f.is_multiple_of(2) || self.q.is_multiple_of(2);
        let mut bad = Vec::new();
        for i in 0..v {
            for j in 0..v {
                let x = self.get(i, j);
                let negated = self.get(-i, j - i);
                let swapped = if minus_one_in_d0 {
                    self.get(j, i)
                } else {
                    self.get(j + v / 2, i + v / 2)
                };
                if x != negated || x != swapped {
                    bad.push((i as u32, j as u32));
                }
            }
        }
        bad
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,count,source\n");
        for i in 0..self.v as i64 {
            for j in 0..self.v as i64 {
                let src = match self.source(i, j) {
                    EntrySource::BruteForce => "brute_force",
                    EntrySource::Formula => "formula",
                    EntrySource::BruteForceFill => "brute_force_fill",
                    EntrySource::FormulaMismatch { .. } => "formula_mismatch",
                };
                out.push_str(&format!("{i},{j},{},{src}\n", self.get(i, j)));
            }
        }
        out
    }
}

/// Cyclotomic numbers of order `v` by direct enumeration of `F_q^*`.
pub fn cyclotomic_numbers_bruteforce(ctx: &FieldCtx, v: u32) -> Result<CycloTable> {
    require_order(ctx, v)?;
    let minus_one = ctx.minus_one();
    let mut counts = vec![0u64; (v * v) as usize];
    for x in 1..ctx.q() {
        if x == minus_one {
            continue;
        }
        let i = ctx.log_unchecked(x) % v;
        let j = ctx.log_unchecked(ctx.add(x, 1)) % v;
        counts[(i * v + j) as usize] += 1;
    }
    Ok(CycloTable {
        q: ctx.q(),
        v,
        f: ctx.group_order() / v,
        gamma: ctx.gamma(),
        provenance: Provenance::BruteForce,
        sources: vec![EntrySource::BruteForce; counts.len()],
        counts,
        decomposition: None,
    })
}

/// `|{x ∈ D_i : x + 1 ∈ D_j}|` for one pair, without building the table.
fn single_count(ctx: &FieldCtx, v: u32, i: u32, j: u32) -> u64 {
    let minus_one = ctx.minus_one();
    (0..ctx.group_order() / v)
        .map(|t| ctx.antilog((i + v * t) as u64))
        .filter(|&x| x != minus_one && ctx.log_unchecked(ctx.add(x, 1)) % v == j)
        .count() as u64
}

/// The three closed-form cases for order 6, selected by `b mod 3` where
/// `2 = gamma^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Order6Case {
    Ia,
    Ib,
    Ic,
}

impl Order6Case {
    pub fn from_two_exponent(b: u32) -> Self {
        match b % 3 {
            0 => Order6Case::Ia,
            1 => Order6Case::Ib,
            _ => Order6Case::Ic,
        }
    }

    /// Listed entries as `((i, j), c, a, b)` meaning `(q + c + a*A + b*B) / 36`.
    fn formulas(self) -> &'static [((i64, i64), i64, i64, i64)] {
        match self {
            Order6Case::Ia => &[
                ((0, 1), 1, -2, 12),
                ((0, 2), 1, -2, 12),
                ((0, 4), 1, -2, -12),
                ((0, 5), 1, -2, -12),
                ((1, 0), -5, 4, 6),
                ((1, 1), -5, 4, -6),
                ((1, 2), 1, -2, 0),
                ((2, 1), 1, -2, 0),
            ],
            // (0,5) shares the (0,2) form here.
            Order6Case::Ib => &[
                ((0, 1), 1, 4, 0),
                ((1, 2), 1, 4, 0),
                ((0, 2), 1, -2, 12),
                ((0, 4), 1, -8, -12),
                ((2, 1), 1, -8, -12),
                ((0, 5), 1, -2, 12),
                ((1, 0), -5, -2, 6),
            ],
            Order6Case::Ic => &[
                ((0, 1), 1, -2, -12),
                ((0, 4), 1, -2, -12),
                ((0, 2), 1, -8, 12),
                ((2, 1), 1, -8, 12),
                ((0, 5), 1, 4, 0),
                ((1, 2), 1, 4, 0),
                ((1, 0), -5, 4, 6),
                ((1, 1), -5, -2, -6),
            ],
        }
    }

    /// Closed form for `(0,2)_6`, times 36.
    fn zero_two_numerator(self, q: i64, a: i64, b: i64) -> i64 {
        let ((_, _), c, ca, cb) = self
            .formulas()
            .iter()
            .find(|(ij, ..)| *ij == (0, 2))
            .copied()
            .expect("every case lists (0,2)");
        q + c + ca * a + cb * b
    }
}

/// `q = A^2 + 3B^2` with `A ≡ 1 (mod 3)`, plus `b` with `2 = gamma^b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ABDecomposition {
    pub q: u32,
    pub a: i64,
    /// Sign calibrated against `(0,2)_6` when `q ≡ 7 (mod 12)`.
    pub b: i64,
    /// `(q - 1) / 6`.
    pub f: u32,
    /// Discrete log of 2.
    pub two_exponent: u32,
    pub sign_calibrated: bool,
}

impl ABDecomposition {
    pub fn case(&self) -> Order6Case {
        Order6Case::from_two_exponent(self.two_exponent)
    }
}

pub fn decompose_a_b(ctx: &FieldCtx) -> Result<ABDecomposition> {
    let q = ctx.q() as i64;
    if q % 6 != 1 {
        return Err(Error::Unsupported(format!("q = {q} is not 1 mod 6")));
    }
    let p = ctx.p() as i64;
    let (a, b_abs) = (0..=arith::isqrt(q as u64 / 3) as i64)
        .find_map(|b| {
            let a2 = q - 3 * b * b;
            let a0 = arith::isqrt(a2 as u64) as i64;
            if a0 * a0 != a2 || a0 % 3 == 0 {
                return None;
            }
            if p % 6 == 1 && a0 % p == 0 {
                return None;
            }
            let a = if a0 % 3 == 1 { a0 } else { -a0 };
            Some((a, b))
        })
        .ok_or_else(|| Error::Internal(format!("no representation q = A^2 + 3B^2 for q = {q}")))?;
    let two_exponent = ctx.discrete_log(2 % ctx.p())?;
    let mut out = ABDecomposition {
        q: ctx.q(),
        a,
        b: b_abs,
        f: ctx.group_order() / 6,
        two_exponent,
        sign_calibrated: b_abs == 0,
    };
    if q % 12 == 7 && b_abs != 0 {
        let observed = 36 * single_count(ctx, 6, 0, 2) as i64;
        let case = out.case();
        let plus = case.zero_two_numerator(q, a, b_abs) == observed;
        let minus = case.zero_two_numerator(q, a, -b_abs) == observed;
        match (plus, minus) {
            (true, false) => out.sign_calibrated = true,
            (false, true) => {
                out.b = -b_abs;
                out.sign_calibrated = true;
            }
            _ => {}
        }
    }
    Ok(out)
}

/// Order-6 table from the closed forms for `q ≡ 7 (mod 12)`.
///
/// Listed entries are transported along their symmetry orbits; entries no
/// formula reaches are filled from the direct count. Every formula entry is
/// compared with the direct count and flagged on disagreement.
pub fn cyclotomic_numbers_order6(ctx: &FieldCtx) -> Result<CycloTable> {
    if ctx.q() % 12 != 7 {
        return Err(Error::Unsupported(format!(
            "closed-form order-6 cyclotomic numbers need q = 7 mod 12, got q = {}",
            ctx.q()
        )));
    }
    let dec = decompose_a_b(ctx)?;
    let brute = cyclotomic_numbers_bruteforce(ctx, 6)?;
    let q = ctx.q() as i64;
    let idx = |i: i64, j: i64| (i.rem_euclid(6) * 6 + j.rem_euclid(6)) as usize;

    let mut numerators: Vec<Option<i64>> = vec![None; 36];
    let mut conflict = [false; 36];
    for &((i, j), c, ca, cb) in dec.case().formulas() {
        let num = q + c + ca * dec.a + cb * dec.b;
        for (x, y) in order6_orbit(i, j) {
            let k = idx(x, y);
            match numerators[k] {
                None => numerators[k] = Some(num),
                Some(prev) if prev != num => conflict[k] = true,
                _ => {}
            }
        }
    }

    let mut counts = vec![0u64; 36];
    let mut sources = vec![EntrySource::BruteForceFill; 36];
    for k in 0..36 {
        let direct = brute.counts[k];
        counts[k] = direct;
        if let Some(num) = numerators[k] {
            let agrees = !conflict[k] && num >= 0 && num % 36 == 0 && (num / 36) as u64 == direct;
            sources[k] = if agrees {
                EntrySource::Formula
            } else {
                EntrySource::FormulaMismatch { numerator: num }
            };
        }
    }
    Ok(CycloTable {
        q: ctx.q(),
        v: 6,
        f: ctx.group_order() / 6,
        gamma: ctx.gamma(),
        provenance: Provenance::ClosedFormOrder6,
        counts,
        sources,
        decomposition: Some(dec),
    })
}

/// Orbit of `(i, j)` under `(i,j) -> (-i, j-i)` and `(i,j) -> (j+3, i+3)`
/// (the relations for order 6 with odd class size).
fn order6_orbit(i: i64, j: i64) -> Vec<(i64, i64)> {
    let norm = |(a, b): (i64, i64)| (a.rem_euclid(6), b.rem_euclid(6));
    let mut seen = vec![norm((i, j))];
    let mut queue = VecDeque::from([norm((i, j))]);
    while let Some((a, b)) = queue.pop_front() {
        for next in [norm((-a, b - a)), norm((b + 3, a + 3))] {
            if !seen.contains(&next) {
                seen.push(next);
                queue.push_back(next);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FieldCtx {
        FieldCtx::new(7, 1, None, None).unwrap()
    }

    #[test]
    fn class_indices_f7() {
        let f = f7();
        assert_eq!(class_index(&f, 3, 6).unwrap(), 0);
        assert_eq!(class_index(&f, 3, 4).unwrap(), 1);
        assert_eq!(class_index(&f, 3, 1).unwrap(), 0);
        assert!(class_index(&f, 3, 0).is_err());
        assert!(class_index(&f, 4, 1).is_err());
    }

    #[test]
    fn order2_f7() {
        // Squares {1,2,4}, non-squares {3,5,6}.
        let t = cyclotomic_numbers_bruteforce(&f7(), 2).unwrap();
        assert_eq!(t.rows(), vec![vec![1, 2], vec![1, 1]]);
        assert_eq!(t.total(), 5);
    }

    #[test]
    fn order6_f7_singletons() {
        let t = cyclotomic_numbers_bruteforce(&f7(), 6).unwrap();
        assert_eq!(t.get(0, 1), 0);
        assert_eq!(t.get(0, 2), 1);
        assert!(t.symmetry_violations().is_empty());
        assert!(cyclotomic_numbers_bruteforce(&f7(), 4).is_err());
    }

    #[test]
    fn decomposition_small() {
        let d = decompose_a_b(&f7()).unwrap();
        assert_eq!((d.a, d.b, d.two_exponent), (-2, 1, 2));
        assert!(d.sign_calibrated);
        assert_eq!(d.case(), Order6Case::Ic);

        let d13 = decompose_a_b(&FieldCtx::with_order(13, None).unwrap()).unwrap();
        assert_eq!((d13.a, d13.b.abs()), (1, 2));
        assert!(!d13.sign_calibrated);

        let d1423 = decompose_a_b(&FieldCtx::with_order(1423, None).unwrap()).unwrap();
        assert_eq!((d1423.a, d1423.b.abs()), (10, 21));

        assert!(decompose_a_b(&FieldCtx::with_order(11, None).unwrap()).is_err());
    }

    #[test]
    fn closed_form_f7() {
        let t = cyclotomic_numbers_order6(&f7()).unwrap();
        assert_eq!(t.get(0, 1), 0);
        assert_eq!(t.get(0, 2), 1);
        assert_eq!(t.source(0, 2), EntrySource::Formula);
        assert!(t.formula_mismatches().is_empty());
        assert!(matches!(
            cyclotomic_numbers_order6(&FieldCtx::with_order(13, None).unwrap()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn primitive_roots() {
        assert!(is_primitive_root(3, 79).unwrap());
        assert!(is_primitive_root(3, 7).unwrap());
        assert!(!is_primitive_root(2, 7).unwrap());
        assert!(is_primitive_root(3, 9).is_err());
        assert!(is_primitive_root(7, 7).is_err());
    }

    #[test]
    fn orbit_is_closed() {
        let orbit = order6_orbit(0, 1);
        for &(i, j) in &orbit {
            assert!(orbit.contains(&((-i).rem_euclid(6), (j - i).rem_euclid(6))));
        }
    }
}
