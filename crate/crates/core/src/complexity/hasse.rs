//! Hasse derivatives, binomials mod a prime, and root multiplicities.

use crate::complexity::poly::DensePoly;
use crate::error::{Error, Result};

/// `C(n, h) mod d` as the product of digit binomials in base `d`.
pub fn lucas_binomial(n: u64, h: u64, d: u32) -> u32 {
    let d64 = d as u64;
    let (mut n, mut h) = (n, h);
    let mut acc = 1u64;
    while h > 0 || n > 0 {
        let (ni, hi) = (n % d64, h % d64);
        if hi > ni {
            return 0;
        }
        acc = acc * small_binomial_mod(ni, hi, d64) % d64;
        n /= d64;
        h /= d64;
    }
    acc as u32
}

// Digits are below d, so this is C(n, k) with n < d, computed mod d.
fn small_binomial_mod(n: u64, k: u64, d: u64) -> u64 {
    let k = k.min(n - k);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..k {
        num = num * ((n - i) % d) % d;
        den = den * ((i + 1) % d) % d;
    }
    num * crate::arith::inv_mod(den, d).expect("digits below d are invertible") % d
}

/// `S^(h)(x) = Σ_{n >= h} C(n, h) s_n x^(n - h)`.
pub fn hasse_derivative(s: &DensePoly, h: usize) -> DensePoly {
    let d = s.modulus();
    let coeffs = s
        .coeffs()
        .iter()
        .enumerate()
        .skip(h)
        .map(|(n, &c)| {
            let b = lucas_binomial(n as u64, h as u64, d) as u64;
            (b * c as u64 % d as u64) as u32
        })
        .collect();
    DensePoly::new(d, coeffs)
}

/// `S^(h)(theta)` without materializing the derivative.
pub fn hasse_at(s: &DensePoly, h: usize, theta: u32) -> u32 {
    let d = s.modulus() as u64;
    let mut acc = 0u64;
    let mut power = 1u64;
    for (n, &c) in s.coeffs().iter().enumerate().skip(h) {
        if c != 0 {
            let b = lucas_binomial(n as u64, h as u64, s.modulus()) as u64;
            acc = (acc + b * c as u64 % d * power) % d;
        }
        power = power * theta as u64 % d;
    }
    acc as u32
}

/// Least `u` with `S^(u)(theta) != 0`.
pub fn root_multiplicity(s: &DensePoly, theta: u32) -> Result<usize> {
    if s.is_zero() {
        return Err(Error::InvalidArgument("the zero polynomial has no root multiplicity".into()));
    }
    let theta = theta % s.modulus();
    Ok((0..).find(|&u| hasse_at(s, u, theta) != 0).expect("nonzero S has a nonvanishing derivative"))
}

/// Multiplicity of `theta` by repeated exact division by `x - theta`.
pub fn root_multiplicity_by_division(s: &DensePoly, theta: u32) -> Result<usize> {
    if s.is_zero() {
        return Err(Error::InvalidArgument("the zero polynomial has no root multiplicity".into()));
    }
    let lin = DensePoly::linear(s.modulus(), theta);
    let mut cur = s.clone();
    let mut u = 0;
    loop {
        let (q, r) = cur.div_rem(&lin)?;
        if !r.is_zero() {
            return Ok(u);
        }
        cur = q;
        u += 1;
    }
}
