//! Linear complexity of periodic sequences over `F_d`.
//!
//! Three routes are provided: the gcd formula with plain Euclid, the
//! Berlekamp-Massey algorithm on two periods, and [`LcEvaluator`], which
//! precomputes the factorization of `x^l - 1` so that many sequences of the
//! same period (the k-error search) can be evaluated from residues.

use crate::complexity::factor::CyclicFactorization;
use crate::complexity::poly::{inv_mod_prime, DensePoly};
use crate::sequence::PeriodicSequence;

/// `S(x) = s_0 + s_1 x + ... + s_{l-1} x^{l-1}`.
pub fn sequence_poly(seq: &PeriodicSequence) -> DensePoly {
    DensePoly::new(seq.d(), seq.terms().to_vec())
}

/// `l - deg gcd(x^l - 1, S(x))`; the all-zero sequence has complexity 0.
pub fn lc_via_gcd(seq: &PeriodicSequence) -> usize {
    let s = sequence_poly(seq);
    if s.is_zero() {
        return 0;
    }
    let l = seq.period();
    let g = DensePoly::x_pow_minus_one(seq.d(), l).gcd(&s).expect("S is nonzero");
    l - g.degree().expect("gcd is nonzero")
}

/// Berlekamp-Massey over `F_d` on an arbitrary finite prefix.
///
/// Returns the length `L` and the connection polynomial
/// `C(x) = 1 + c_1 x + ... + c_L x^L` with `s_i + Σ c_j s_{i-j} = 0`.
pub fn berlekamp_massey_terms(d: u32, terms: &[u32]) -> (usize, DensePoly) {
    let d64 = d as u64;
    let mut c: Vec<u32> = vec![1];
    let mut b: Vec<u32> = vec![1];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut last_disc = 1u32;
    for i in 0..terms.len() {
        let mut disc = terms[i] as u64;
        for j in 1..c.len().min(i + 1) {
            disc = (disc + c[j] as u64 * terms[i - j] as u64) % d64;
        }
        if disc == 0 {
            shift += 1;
            continue;
        }
        let coef = disc * inv_mod_prime(last_disc, d) as u64 % d64;
        let prev = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, 0);
        }
        for (j, &bj) in b.iter().enumerate() {
            let slot = &mut c[j + shift];
            *slot = ((*slot as u64 + (d64 - coef) * bj as u64) % d64) as u32;
        }
        if 2 * len <= i {
            len = i + 1 - len;
            b = prev;
            last_disc = disc as u32;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.truncate(len + 1);
    (len, DensePoly::new(d, c))
}

/// Berlekamp-Massey on two full periods.
///
/// Returns `L` and the monic feedback polynomial
/// `x^L + c_{L-1} x^{L-1} + ... + c_0`, whose coefficients give the
/// recurrence `s_{n+L} + c_{L-1} s_{n+L-1} + ... + c_0 s_n = 0`.
pub fn berlekamp_massey(seq: &PeriodicSequence) -> (usize, DensePoly) {
    let doubled: Vec<u32> = seq.terms().iter().chain(seq.terms()).copied().collect();
    let (len, conn) = berlekamp_massey_terms(seq.d(), &doubled);
    let reversed: Vec<u32> = (0..=len).map(|i| conn.coeff(len - i)).collect();
    (len, DensePoly::new(seq.d(), reversed))
}

/// Tables above this many entries make [`LcEvaluator`] fall back to Euclid.
const MAX_TABLE_ENTRIES: usize = 1 << 24;

#[derive(Clone, Debug)]
struct FactorTable {
    factor: DensePoly,
    deg: usize,
    /// Row `j` holds `x^j mod factor`, `deg` entries per row.
    cols: Vec<u32>,
    /// `factor^(d^s)` and its residue rows; empty when `s = 0`.
    power_deg: usize,
    power_cols: Vec<u32>,
}

/// Residues of one base sequence, reused across perturbations of it.
#[derive(Clone, Debug)]
pub struct BaseResidues {
    terms: Vec<u32>,
    mod_factor: Vec<Vec<u32>>,
    mod_power: Vec<Vec<u32>>,
}

impl BaseResidues {
    pub fn terms(&self) -> &[u32] {
        &self.terms
    }
}

#[derive(Clone, Debug)]
enum Strategy {
    Factored(Vec<FactorTable>),
    Euclid,
}

/// Evaluates `LC` for many sequences of one period `l` over `F_d`.
///
/// With `x^l - 1 = Π f^(d^s)` over distinct irreducibles `f`,
/// `deg gcd(x^l - 1, T) = Σ deg f * min(v_f(T), d^s)`. Residues of `x^j`
/// modulo every `f` (and `f^(d^s)` when `s > 0`) are tabulated once, so a
/// perturbation touching `k` positions costs `O(k)` per factor in the common
/// case that `f` does not divide `T`.
#[derive(Clone, Debug)]
pub struct LcEvaluator {
    d: u32,
    l: usize,
    repeat: usize,
    strategy: Strategy,
}

impl LcEvaluator {
    pub fn new(d: u32, l: usize) -> Self {
        let (s, coprime) = crate::arith::split_power(l as u64, d as u64);
        let repeat = (d as usize).pow(s);
        let entries = l * coprime as usize + if s > 0 { l * l } else { 0 };
        if entries > MAX_TABLE_ENTRIES {
            return LcEvaluator { d, l, repeat, strategy: Strategy::Euclid };
        }
        let fac = CyclicFactorization::new(d, l);
        let tables = fac
            .factors
            .iter()
            .map(|f| {
                let deg = f.degree().expect("factors are nonconstant");
                let cols = residue_rows(f, l);
                let (power, power_cols) = if repeat > 1 {
                    let pw = f.pow(repeat as u64);
                    let rows = residue_rows(&pw, l);
                    (pw, rows)
                } else {
                    (DensePoly::zero(d), Vec::new())
                };
                let power_deg = power.degree().unwrap_or(0);
                FactorTable { factor: f.clone(), deg, cols, power_deg, power_cols }
            })
            .collect();
        LcEvaluator { d, l, repeat, strategy: Strategy::Factored(tables) }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn period(&self) -> usize {
        self.l
    }

    pub fn is_factored(&self) -> bool {
        matches!(self.strategy, Strategy::Factored(_))
    }

    pub fn base(&self, terms: &[u32]) -> BaseResidues {
        assert_eq!(terms.len(), self.l, "sequence period does not match the evaluator");
        let d = self.d as u64;
        let (mut mod_factor, mut mod_power) = (Vec::new(), Vec::new());
        if let Strategy::Factored(tables) = &self.strategy {
            for t in tables {
                mod_factor.push(combine(&t.cols, t.deg, terms, d));
                if self.repeat > 1 {
                    mod_power.push(combine(&t.power_cols, t.power_deg, terms, d));
                }
            }
        }
        BaseResidues { terms: terms.to_vec(), mod_factor, mod_power }
    }

    pub fn lc(&self, terms: &[u32]) -> usize {
        let base = self.base(terms);
        self.lc_with_changes(&base, &[])
    }

    /// `LC` of the base sequence after adding `delta` at each listed
    /// position (`(position, delta)`, deltas in `[1, d)`).
    pub fn lc_with_changes(&self, base: &BaseResidues, changes: &[(usize, u32)]) -> usize {
        let d = self.d as u64;
        let tables = match &self.strategy {
            Strategy::Factored(tables) => tables,
            Strategy::Euclid => {
                let mut terms = base.terms.clone();
                for &(pos, delta) in changes {
                    terms[pos] = ((terms[pos] as u64 + delta as u64) % d) as u32;
                }
                let seq = PeriodicSequence::new(self.d, terms).expect("valid terms");
                return lc_via_gcd(&seq);
            }
        };
        let mut common = 0usize;
        for (idx, t) in tables.iter().enumerate() {
            let base_res = &base.mod_factor[idx];
            let divisible = (0..t.deg).all(|c| {
                let mut v = base_res[c] as u64;
                for &(pos, delta) in changes {
                    v += delta as u64 * t.cols[pos * t.deg + c] as u64;
                }
                v.is_multiple_of(d)
            });
            if !divisible {
                continue;
            }
            let mult = if self.repeat == 1 {
                1
            } else {
                let mut res = base.mod_power[idx].clone();
                for &(pos, delta) in changes {
                    let row = &t.power_cols[pos * t.power_deg..(pos + 1) * t.power_deg];
                    for (r, &x) in res.iter_mut().zip(row) {
                        *r = ((*r as u64 + delta as u64 * x as u64) % d) as u32;
                    }
                }
                capped_multiplicity(DensePoly::new(self.d, res), &t.factor, self.repeat)
            };
            common += t.deg * mult;
        }
        self.l - common
    }

    /// `(f, min(v_f(S), d^s))` for every irreducible factor `f` of `x^l - 1`.
    pub fn factor_multiplicities(&self, terms: &[u32]) -> Vec<(DensePoly, usize)> {
        let s = DensePoly::new(self.d, terms.to_vec());
        CyclicFactorization::new(self.d, self.l)
            .factors
            .into_iter()
            .map(|f| {
                let m = capped_multiplicity(s.clone(), &f, self.repeat);
                (f, m)
            })
            .collect()
    }
}

/// Rows `x^j mod f` for `j` in `0..l`, flattened.
fn residue_rows(f: &DensePoly, l: usize) -> Vec<u32> {
    let deg = f.degree().expect("nonconstant modulus");
    let d = f.modulus() as u64;
    let fc = f.coeffs();
    let mut out = Vec::with_capacity(l * deg);
    let mut cur = vec![0u32; deg];
    if deg > 0 {
        cur[0] = 1;
    }
    for _ in 0..l {
        out.extend_from_slice(&cur);
        // cur <- x * cur mod f (f monic).
        let top = cur[deg - 1] as u64;
        for i in (1..deg).rev() {
            cur[i] = ((cur[i - 1] as u64 + (d - top) * fc[i] as u64 % d) % d) as u32;
        }
        cur[0] = ((d - top) * fc[0] as u64 % d) as u32;
    }
    out
}

fn combine(rows: &[u32], deg: usize, terms: &[u32], d: u64) -> Vec<u32> {
    let mut acc = vec![0u64; deg];
    for (j, &t) in terms.iter().enumerate() {
        if t == 0 {
            continue;
        }
        for (a, &x) in acc.iter_mut().zip(&rows[j * deg..(j + 1) * deg]) {
            *a = (*a + t as u64 * x as u64) % d;
        }
    }
    acc.into_iter().map(|x| x as u32).collect()
}

/// `min(v_f(r), cap)`, with the zero polynomial counting as `cap`.
fn capped_multiplicity(mut r: DensePoly, f: &DensePoly, cap: usize) -> usize {
    let mut m = 0;
    while m < cap {
        if r.is_zero() {
            return cap;
        }
        let (q, rem) = r.div_rem(f).expect("f nonzero");
        if !rem.is_zero() {
            break;
        }
        r = q;
        m += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(d: u32, terms: &[u32]) -> PeriodicSequence {
        PeriodicSequence::new(d, terms.to_vec()).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(lc_via_gcd(&seq(3, &[0, 0, 0, 0])), 0);
        assert_eq!(lc_via_gcd(&seq(3, &[1, 0, 0, 0, 0])), 5);
        assert_eq!(lc_via_gcd(&seq(3, &[1, 1, 0])), 3);
    }

    #[test]
    fn bm_examples() {
        let (l0, c0) = berlekamp_massey(&seq(3, &[0, 0, 0]));
        assert_eq!(l0, 0);
        assert!(c0.is_one());
        let (l, c) = berlekamp_massey(&seq(3, &[1, 1, 0]));
        assert_eq!(l, 3);
        assert_eq!(c.degree(), Some(3));
        assert_eq!(c.leading(), 1);
    }

    #[test]
    fn bm_feedback_annihilates() {
        let s = seq(5, &[1, 4, 0, 2, 2, 3, 1, 0]);
        let (len, fb) = berlekamp_massey(&s);
        for n in 0..2 * s.period() {
            let v: u64 = (0..=len).map(|i| fb.coeff(i) as u64 * s.term(n + i) as u64).sum();
            assert_eq!(v % 5, 0);
        }
        assert_eq!(len, lc_via_gcd(&s));
    }

    #[test]
    fn evaluator_matches_euclid_small() {
        for (d, terms) in [
            (3u32, vec![2, 1, 1, 0, 2, 0]),
            (3, vec![0, 0, 0, 0, 0, 0, 0, 0, 0]),
            (3, vec![1, 1, 1, 1, 1, 1, 1, 1, 1]),
            (2, vec![1, 0, 1, 1, 0, 0, 0, 1]),
            (5, vec![1, 2, 3, 4, 0, 1, 2, 3, 4, 0]),
        ] {
            let s = seq(d, &terms);
            let ev = LcEvaluator::new(d, terms.len());
            assert!(ev.is_factored());
            assert_eq!(ev.lc(&terms), lc_via_gcd(&s), "{terms:?}");
        }
    }

    #[test]
    fn evaluator_with_changes() {
        let s = seq(3, &[2, 1, 1, 0, 2, 0]);
        let ev = LcEvaluator::new(3, 6);
        let base = ev.base(s.terms());
        let mut t = s.terms().to_vec();
        t[1] = (t[1] + 2) % 3;
        t[4] = (t[4] + 1) % 3;
        assert_eq!(ev.lc_with_changes(&base, &[(1, 2), (4, 1)]), lc_via_gcd(&seq(3, &t)));
    }
}
