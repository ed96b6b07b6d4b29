//! Dense univariate polynomials over the prime field `F_d`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::arith;
use crate::error::{Error, Result};

/// Coefficients are stored lowest degree first with no trailing zeros; the
/// zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DensePoly {
    d: u32,
    coeffs: Vec<u32>,
}

#[inline]
pub(crate) fn inv_mod_prime(a: u32, d: u32) -> u32 {
    arith::inv_mod(a as u64, d as u64).expect("nonzero element of a prime field") as u32
}

pub(crate) fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Replaces `a` by `a mod b` in place. `b` must be trimmed and nonzero.
pub(crate) fn rem_in_place(a: &mut Vec<u32>, b: &[u32], d: u32) {
    let db = b.len() - 1;
    let d64 = d as u64;
    let inv_lead = inv_mod_prime(b[db], d) as u64;
    trim(a);
    while a.len() > db {
        let top = a.len() - 1;
        let factor = a[top] as u64 * inv_lead % d64;
        let neg = d64 - factor;
        let shift = top - db;
        for (i, &bc) in b[..db].iter().enumerate() {
            if bc != 0 {
                let slot = &mut a[shift + i];
                *slot = ((*slot as u64 + neg * bc as u64) % d64) as u32;
            }
        }
        a.pop();
        trim(a);
    }
}

impl DensePoly {
    /// Reduces coefficients mod `d` and trims; `d` must be prime.
    pub fn new(d: u32, coeffs: Vec<u32>) -> Self {
        let mut coeffs: Vec<u32> = coeffs.into_iter().map(|c| c % d).collect();
        trim(&mut coeffs);
        DensePoly { d, coeffs }
    }

    /// From signed integer coefficients, reduced into `[0, d)`.
    pub fn from_signed(d: u32, coeffs: &[i64]) -> Self {
        DensePoly::new(d, coeffs.iter().map(|&c| c.rem_euclid(d as i64) as u32).collect())
    }

    pub fn zero(d: u32) -> Self {
        DensePoly { d, coeffs: Vec::new() }
    }

    pub fn one(d: u32) -> Self {
        DensePoly::new(d, vec![1])
    }

    pub fn monomial(d: u32, degree: usize, c: u32) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        DensePoly::new(d, coeffs)
    }

    /// `x - theta`.
    pub fn linear(d: u32, theta: u32) -> Self {
        DensePoly::new(d, vec![(d - theta % d) % d, 1])
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(d: u32, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = 1;
        coeffs[0] = (coeffs[0] + d - 1) % d;
        DensePoly::new(d, coeffs)
    }

    pub fn modulus(&self) -> u32 {
        self.d
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> DensePoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod_prime(self.leading(), self.d))
    }

    pub fn scale(&self, c: u32) -> DensePoly {
        let d = self.d as u64;
        DensePoly::new(
            self.d,
            self.coeffs.iter().map(|&x| (x as u64 * c as u64 % d) as u32).collect(),
        )
    }

    pub fn eval(&self, x: u32) -> u32 {
        let d = self.d as u64;
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % d) as u32
    }

    /// Formal derivative.
    pub fn derivative(&self) -> DensePoly {
        let d = self.d as u64;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| ((i as u64 % d) * c as u64 % d) as u32)
            .collect();
        DensePoly::new(self.d, coeffs)
    }

    pub fn pow(&self, mut n: u64) -> DensePoly {
        let mut acc = DensePoly::one(self.d);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn div_rem(&self, divisor: &DensePoly) -> Result<(DensePoly, DensePoly)> {
        if divisor.is_zero() {
            return Err(Error::ZeroElement("polynomial division"));
        }
        let d = self.d as u64;
        let db = divisor.coeffs.len() - 1;
        let inv_lead = inv_mod_prime(divisor.leading(), self.d) as u64;
        let mut rem: Vec<u32> = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((DensePoly::zero(self.d), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - db];
        for top in (db..rem.len()).rev() {
            let c = rem[top] as u64 * inv_lead % d;
            if c == 0 {
                continue;
            }
            quot[top - db] = c as u32;
            let neg = d - c;
            for (i, &bc) in divisor.coeffs.iter().enumerate() {
                let slot = &mut rem[top - db + i];
                *slot = ((*slot as u64 + neg * bc as u64) % d) as u32;
            }
        }
        Ok((DensePoly::new(self.d, quot), DensePoly::new(self.d, rem)))
    }

    pub fn rem(&self, divisor: &DensePoly) -> Result<DensePoly> {
        if divisor.is_zero() {
            return Err(Error::ZeroElement("polynomial division"));
        }
        let mut a = self.coeffs.clone();
        rem_in_place(&mut a, &divisor.coeffs, self.d);
        Ok(DensePoly { d: self.d, coeffs: a })
    }

    /// Quotient of an exact division.
    pub fn exact_div(&self, divisor: &DensePoly) -> Result<DensePoly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InvalidArgument("division is not exact".into()));
        }
        Ok(q)
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &DensePoly) -> Result<DensePoly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::InvalidArgument("gcd of two zero polynomials".into()));
        }
        let mut a = self.coeffs.clone();
        let mut b = other.coeffs.clone();
        while !b.is_empty() {
            rem_in_place(&mut a, &b, self.d);
            std::mem::swap(&mut a, &mut b);
        }
        Ok(DensePoly { d: self.d, coeffs: a }.monic())
    }
}

impl Add for &DensePoly {
    type Output = DensePoly;

    fn add(self, rhs: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| (self.coeff(i) + rhs.coeff(i)) % self.d).collect();
        DensePoly::new(self.d, coeffs)
    }
}

impl Sub for &DensePoly {
    type Output = DensePoly;

    fn sub(self, rhs: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| (self.coeff(i) + self.d - rhs.coeff(i)) % self.d).collect();
        DensePoly::new(self.d, coeffs)
    }
}

impl Mul for &DensePoly {
    type Output = DensePoly;

    fn mul(self, rhs: &DensePoly) -> DensePoly {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero(self.d);
        }
        let d = self.d as u64;
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % d;
            }
        }
        DensePoly::new(self.d, out.into_iter().map(|c| c as u32).collect())
    }
}

impl fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensePoly(F_{}; {})", self.d, self)
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3(c: &[i64]) -> DensePoly {
        DensePoly::from_signed(3, c)
    }

    #[test]
    fn gcd_examples() {
        let x_plus_1 = p3(&[1, 1]);
        let x_plus_2_cubed = p3(&[2, 1]).pow(3);
        assert!(x_plus_1.gcd(&x_plus_2_cubed).unwrap().is_one());

        let a = p3(&[2, 2]);
        assert_eq!(a.gcd(&DensePoly::zero(3)).unwrap(), a.monic());

        let xm1 = p3(&[-1, 1]);
        assert_eq!(xm1.pow(2).gcd(&xm1.pow(3)).unwrap(), xm1.pow(2));
        assert!(DensePoly::zero(3).gcd(&DensePoly::zero(3)).is_err());
    }

    #[test]
    fn division() {
        let a = p3(&[1, 0, 2, 1]);
        let b = p3(&[1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 1);
        assert_eq!(a.rem(&b).unwrap(), r);
        assert!(a.div_rem(&DensePoly::zero(3)).is_err());
    }

    #[test]
    fn x_pow_minus_one_and_display() {
        let p = DensePoly::x_pow_minus_one(3, 3);
        assert_eq!(p.coeffs(), &[2, 0, 0, 1]);
        assert_eq!(p.to_string(), "x^3 + 2");
        assert_eq!(p3(&[-1, 1]).pow(3), p);
        assert_eq!(p3(&[0, 1, 1]).eval(2), 0);
    }
}
