//! Multiplicative character sums over `F_q` and the Weil bound.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldCtx;

/// Absolute tolerance for the floating-point Weil comparison.
pub const WEIL_TOLERANCE: f64 = 1e-6;

/// Polynomial over `F_q`, coefficients as field-element encodings, constant
/// term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqPoly {
    coeffs: Vec<u32>,
}

impl FqPoly {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FqPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn eval(&self, ctx: &FieldCtx, x: u32) -> u32 {
        self.coeffs.iter().rev().fold(0, |acc, &c| ctx.add(ctx.mul(acc, x), c))
    }

    fn derivative(&self, ctx: &FieldCtx) -> FqPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| ctx.mul((i as u64 % ctx.p() as u64) as u32, c))
            .collect();
        FqPoly::new(coeffs)
    }

    fn monic(&self, ctx: &FieldCtx) -> FqPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => {
                let inv = ctx.inv(lead).expect("leading coefficient is nonzero");
                FqPoly::new(self.coeffs.iter().map(|&c| ctx.mul(c, inv)).collect())
            }
        }
    }

    fn div_rem(&self, ctx: &FieldCtx, divisor: &FqPoly) -> (FqPoly, FqPoly) {
        let db = divisor.degree().expect("nonzero divisor");
        let inv = ctx.inv(divisor.coeffs[db]).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return (FqPoly::new(Vec::new()), self.clone());
        }
        let mut quot = vec![0; rem.len() - db];
        for top in (db..rem.len()).rev() {
            let c = ctx.mul(rem[top], inv);
            if c == 0 {
                continue;
            }
            quot[top - db] = c;
            for (i, &bc) in divisor.coeffs.iter().enumerate() {
                rem[top - db + i] = ctx.sub(rem[top - db + i], ctx.mul(c, bc));
            }
        }
        (FqPoly::new(quot), FqPoly::new(rem))
    }

    fn exact_div(&self, ctx: &FieldCtx, divisor: &FqPoly) -> FqPoly {
        let (q, r) = self.div_rem(ctx, divisor);
        debug_assert!(r.is_zero());
        q
    }

    fn gcd(&self, ctx: &FieldCtx, other: &FqPoly) -> FqPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(ctx, &b);
            a = b;
            b = r;
        }
        a.monic(ctx)
    }

    /// `g` with `g^p = self`, given `self' = 0`.
    fn pth_root(&self, ctx: &FieldCtx) -> FqPoly {
        let p = ctx.p() as usize;
        FqPoly::new(self.coeffs.iter().step_by(p).map(|&c| ctx.pth_root(c)).collect())
    }
}

/// Squarefree decomposition over `F_q`: `(g_i, i)` with `f = c * Π g_i^i`.
pub fn squarefree_decomposition(ctx: &FieldCtx, f: &FqPoly) -> Vec<(FqPoly, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) > 0 {
        sqf_rec(ctx, &f.monic(ctx), 1, &mut out);
    }
    out
}

fn sqf_rec(ctx: &FieldCtx, f: &FqPoly, scale: usize, out: &mut Vec<(FqPoly, usize)>) {
    let p = ctx.p() as usize;
    let fp = f.derivative(ctx);
    if fp.is_zero() {
        sqf_rec(ctx, &f.pth_root(ctx), scale * p, out);
        return;
    }
    let mut c = f.gcd(ctx, &fp);
    let mut w = f.exact_div(ctx, &c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(ctx, &c);
        let fac = w.exact_div(ctx, &y);
        if !fac.is_one() {
            out.push((fac.monic(ctx), i * scale));
        }
        c = c.exact_div(ctx, &y);
        w = y;
        i += 1;
    }
    if !c.is_one() {
        sqf_rec(ctx, &c.pth_root(ctx), scale * p, out);
    }
}

/// Number of distinct roots of `f` in its splitting field (degree of the
/// radical).
pub fn distinct_root_count(ctx: &FieldCtx, f: &FqPoly) -> usize {
    squarefree_decomposition(ctx, f)
        .iter()
        .map(|(g, _)| g.degree().unwrap_or(0))
        .sum()
}

/// True iff `f` is a constant times a `d`-th power of a polynomial.
pub fn is_constant_times_dth_power(ctx: &FieldCtx, f: &FqPoly, d: u32) -> bool {
    squarefree_decomposition(ctx, f)
        .iter()
        .all(|(_, m)| *m % d as usize == 0)
}

/// `count` random polynomials of degree `1..=max_degree` over `F_q` that are
/// not a constant times a `d`-th power.
pub fn sample_non_power_polynomials<R: Rng>(
    ctx: &FieldCtx,
    d: u32,
    count: usize,
    max_degree: usize,
    rng: &mut R,
) -> Vec<FqPoly> {
    assert!(max_degree >= 1, "degree bound must be positive");
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let deg = rng.gen_range(1..=max_degree);
        let mut coeffs: Vec<u32> = (0..deg).map(|_| rng.gen_range(0..ctx.q())).collect();
        coeffs.push(rng.gen_range(1..ctx.q()));
        let f = FqPoly::new(coeffs);
        if !is_constant_times_dth_power(ctx, &f, d) {
            out.push(f);
        }
    }
    out
}

/// Exact tally of `Σ_{c ∈ F_q} χ(f(c))` for `χ(γ^j) = ξ_d^j`, `χ(0) = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharSumReport {
    pub q: u32,
    pub gamma: u32,
    pub order: u32,
    pub poly: Vec<u32>,
    /// Distinct roots of `f` in its splitting field.
    pub e: usize,
    /// `tally[j]` counts points with `χ(f(c)) = ξ^j`.
    pub tally: Vec<u64>,
    /// Points with `f(c) = 0`.
    pub zeros: u64,
    pub points: u64,
    pub magnitude: f64,
    pub weil_rhs: f64,
    /// `|sum|^2` when it can be read off the integer tally as a rational
    /// integer; see [`exact_norm_squared`].
    pub norm_squared: Option<i64>,
    /// `f` is a constant times a `d`-th power (the Weil bound makes no claim).
    pub dth_power: bool,
}

pub fn character_sum(ctx: &FieldCtx, d: u32, f: &FqPoly) -> Result<CharSumReport> {
    if d < 2 {
        return Err(Error::InvalidArgument("character order must exceed 1".into()));
    }
    if !ctx.group_order().is_multiple_of(d) {
        return Err(Error::NotADivisor { divisor: d as u64, n: ctx.group_order() as u64 });
    }
    if f.is_zero() {
        return Err(Error::InvalidArgument("polynomial must be nonzero".into()));
    }
    for &c in f.coeffs() {
        ctx.check(c)?;
    }
    let mut tally = vec![0u64; d as usize];
    let mut zeros = 0;
    for c in 0..ctx.q() {
        let y = f.eval(ctx, c);
        if y == 0 {
            zeros += 1;
        } else {
            tally[(ctx.log_unchecked(y) % d) as usize] += 1;
        }
    }
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for (j, &c) in tally.iter().enumerate() {
        let angle = 2.0 * std::f64::consts::PI * j as f64 / d as f64;
        re += c as f64 * angle.cos();
        im += c as f64 * angle.sin();
    }
    let e = distinct_root_count(ctx, f);
    Ok(CharSumReport {
        q: ctx.q(),
        gamma: ctx.gamma(),
        order: d,
        poly: f.coeffs().to_vec(),
        e,
        norm_squared: exact_norm_squared(&tally),
        tally,
        zeros,
        points: ctx.q() as u64,
        magnitude: re.hypot(im),
        weil_rhs: e.saturating_sub(1) as f64 * (ctx.q() as f64).sqrt(),
        dth_power: is_constant_times_dth_power(ctx, f, d),
    })
}

/// `|Σ c_j ξ^j|^2 = Σ_t a_t ξ^t` with `a_t = Σ_j c_j c_{j-t}`. When all
/// `a_t` for `t != 0` agree the value is the integer `a_0 - a_1`, because the
/// `d`-th roots of unity sum to zero.
pub fn exact_norm_squared(tally: &[u64]) -> Option<i64> {
    let d = tally.len();
    let autocorr: Vec<i64> = (0..d)
        .map(|t| (0..d).map(|j| tally[j] as i64 * tally[(j + d - t) % d] as i64).sum())
        .collect();
    if d == 1 {
        return Some(autocorr[0]);
    }
    if autocorr[1..].iter().all(|&a| a == autocorr[1]) {
        Some(autocorr[0] - autocorr[1])
    } else {
        None
    }
}

/// Checks `|sum| <= (e - 1) sqrt(q)` (with tolerance).
///
/// Errors with [`Error::NotApplicable`] when `f` is constant or a constant
/// times a `d`-th power, where the bound makes no claim.
pub fn weil_check(report: &CharSumReport) -> Result<bool> {
    if report.poly.len() < 2 {
        return Err(Error::NotApplicable("polynomial has no positive degree".into()));
    }
    if report.dth_power {
        return Err(Error::NotApplicable(format!(
            "polynomial is c * g(x)^{} for some constant c and polynomial g",
            report.order
        )));
    }
    Ok(report.magnitude <= report.weil_rhs + WEIL_TOLERANCE)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FieldCtx {
        FieldCtx::with_order(7, None).unwrap()
    }

    #[test]
    fn linear_sums_vanish() {
        let ctx = f7();
        let r = character_sum(&ctx, 3, &FqPoly::new(vec![1, 1])).unwrap();
        assert_eq!(r.e, 1);
        assert_eq!(r.tally, vec![2, 2, 2]);
        assert!(r.magnitude < 1e-9);
        assert!(weil_check(&r).unwrap());
        let r = character_sum(&ctx, 3, &FqPoly::new(vec![0, 1])).unwrap();
        assert_eq!(r.norm_squared, Some(0));
    }

    #[test]
    fn quadratic_equality_case() {
        let ctx = f7();
        let r = character_sum(&ctx, 3, &FqPoly::new(vec![0, 1, 1])).unwrap();
        assert_eq!(r.tally, vec![2, 0, 3]);
        assert_eq!(r.zeros, 2);
        assert_eq!(r.e, 2);
        assert_eq!(r.norm_squared, Some(7));
        assert!((r.magnitude - 7f64.sqrt()).abs() < 1e-9);
        assert!(weil_check(&r).unwrap());
    }

    #[test]
    fn cube_is_not_applicable() {
        let ctx = f7();
        // (x + 1)^3 = x^3 + 3x^2 + 3x + 1.
        let r = character_sum(&ctx, 3, &FqPoly::new(vec![1, 3, 3, 1])).unwrap();
        assert!(r.dth_power);
        assert!(matches!(weil_check(&r), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn distinct_roots_with_vanishing_derivative() {
        // x^3 + 1 = (x + 1)^3 over F_3.
        let ctx = FieldCtx::with_order(3, None).unwrap();
        assert_eq!(distinct_root_count(&ctx, &FqPoly::new(vec![1, 0, 0, 1])), 1);
        // Over F_9: x^3 - x has three distinct roots.
        let f9 = FieldCtx::with_order(9, None).unwrap();
        assert_eq!(distinct_root_count(&f9, &FqPoly::new(vec![0, f9.minus_one(), 0, 1])), 3);
    }

    #[test]
    fn rejects_bad_orders() {
        let ctx = f7();
        assert!(character_sum(&ctx, 4, &FqPoly::new(vec![1, 1])).is_err());
        assert!(character_sum(&ctx, 1, &FqPoly::new(vec![1, 1])).is_err());
        assert!(character_sum(&ctx, 3, &FqPoly::new(vec![])).is_err());
    }
}
