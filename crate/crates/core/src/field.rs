//! Arithmetic in `F_q`, `q = p^m`, with a fixed primitive element and
//! eagerly built discrete-log tables.
//!
//! Elements are encoded as `u32`: for `m = 1` the residue itself, for
//! `m > 1` the base-`p` integer whose digits are the coefficients of the
//! polynomial representative (constant term least significant). That
//! encoding is also the canonical element order used to pick the smallest
//! primitive element and the smallest irreducible modulus.

use crate::arith;
use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldCtx`].
pub const MAX_FIELD_ORDER: u64 = 1_000_000;

/// Table-free arithmetic in `F_p[x] / (modulus)`.
///
/// This is the field before a primitive element has been chosen; it is used
/// to find one and as an independent check on the table-driven
/// multiplication in [`FieldCtx`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldArith {
    p: u32,
    m: u32,
    q: u32,
    /// Monic, `m + 1` coefficients, constant term first.
    modulus: Vec<u32>,
}

impl FieldArith {
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !arith::is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let modulus = match modulus {
            Some(c) => {
                if c.len() != m as usize + 1 || c[m as usize] != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected a monic polynomial of degree {m}"
                    )));
                }
                if c.iter().any(|&x| x >= p) {
                    return Err(Error::InvalidModulus(format!("coefficients must be < {p}")));
                }
                if !is_irreducible(p, c) {
                    return Err(Error::InvalidModulus("polynomial is reducible".into()));
                }
                c.to_vec()
            }
            None if m == 1 => vec![0, 1],
            None => smallest_irreducible(p, m),
        };
        Ok(FieldArith { p, m, q: q as u32, modulus })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Coefficients of the polynomial representative, constant term first.
    pub fn digits(&self, mut x: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    pub fn encode(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.m == 1 {
            return (self.p - a) % self.p;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.m {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Schoolbook multiplication followed by reduction modulo the modulus.
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.m == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let m = self.m as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for top in (m..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, &mc) in self.modulus[..m].iter().enumerate() {
                let idx = top - m + i;
                prod[idx] = (prod[idx] + c * (p - mc as u64)) % p;
            }
        }
        let digits: Vec<u32> = prod[..m].iter().map(|&c| c as u32).collect();
        self.encode(&digits)
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// True iff `x` has multiplicative order exactly `q - 1`.
    pub fn is_primitive(&self, x: u32) -> bool {
        if x == 0 || x >= self.q {
            return false;
        }
        let n = self.q as u64 - 1;
        if n == 1 {
            return x == 1;
        }
        arith::prime_factors(n)
            .into_iter()
            .all(|r| self.pow(x, n / r) != 1)
    }
}

/// The smallest element (in canonical order) of multiplicative order `q - 1`.
pub fn find_primitive_element(field: &FieldArith) -> u32 {
    (1..field.q())
        .find(|&x| field.is_primitive(x))
        .expect("every finite field has a primitive element")
}

/// Exhaustive irreducibility test: no monic factor of degree `1..=deg/2`.
pub fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let deg = poly.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    let p64 = p as u64;
    for fdeg in 1..=deg / 2 {
        let count = p64.pow(fdeg as u32);
        for code in 0..count {
            let mut factor = Vec::with_capacity(fdeg + 1);
            let mut c = code;
            for _ in 0..fdeg {
                factor.push((c % p64) as u32);
                c /= p64;
            }
            factor.push(1);
            if divides_monic(p, &factor, poly) {
                return false;
            }
        }
    }
    true
}

fn divides_monic(p: u32, factor: &[u32], poly: &[u32]) -> bool {
    let p = p as u64;
    let mut rem: Vec<u64> = poly.iter().map(|&c| c as u64).collect();
    let fdeg = factor.len() - 1;
    for top in (fdeg..rem.len()).rev() {
        let c = rem[top];
        if c == 0 {
            continue;
        }
        for (i, &fc) in factor.iter().enumerate() {
            let idx = top - fdeg + i;
            rem[idx] = (rem[idx] + c * (p - fc as u64)) % p;
        }
    }
    rem[..fdeg].iter().all(|&c| c == 0)
}

/// The monic irreducible of degree `m` whose lower coefficients have the
/// smallest base-`p` encoding.
pub fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for code in 0..count {
        let mut poly = Vec::with_capacity(m as usize + 1);
        let mut c = code;
        for _ in 0..m {
            poly.push((c % p as u64) as u32);
            c /= p as u64;
        }
        poly.push(1);
        if is_irreducible(p, &poly) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// `F_q` with a chosen primitive element `gamma` and log/antilog tables.
///
/// Immutable after construction; share it freely between threads.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    arith: FieldArith,
    gamma: u32,
    /// `log[x]` for `x != 0`; `log[0]` holds `u32::MAX`.
    log: Vec<u32>,
    /// `exp[k] = gamma^k` for `k` in `0..q-1`.
    exp: Vec<u32>,
}

impl FieldCtx {
    /// Builds `F_{p^m}`. Omitted modulus: smallest monic irreducible.
    /// Omitted `gamma`: smallest primitive element.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>, gamma: Option<u32>) -> Result<Self> {
        let arith = FieldArith::new(p, m, modulus)?;
        let gamma = match gamma {
            Some(g) => {
                if g >= arith.q() {
                    return Err(Error::ElementOutOfRange { element: g, q: arith.q() });
                }
                if !arith.is_primitive(g) {
                    return Err(Error::NotPrimitive(g));
                }
                g
            }
            None => find_primitive_element(&arith),
        };
        let q = arith.q() as usize;
        let mut exp = Vec::with_capacity(q - 1);
        let mut log = vec![u32::MAX; q];
        let mut x = 1;
        for k in 0..q - 1 {
            exp.push(x);
            log[x as usize] = k as u32;
            x = arith.mul(x, gamma);
        }
        Ok(FieldCtx { arith, gamma, log, exp })
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn with_order(q: u64, gamma: Option<u32>) -> Result<Self> {
        if q > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let (p, m) = arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        FieldCtx::new(p as u32, m, None, gamma)
    }

    pub fn arith(&self) -> &FieldArith {
        &self.arith
    }

    pub fn p(&self) -> u32 {
        self.arith.p
    }

    pub fn m(&self) -> u32 {
        self.arith.m
    }

    pub fn q(&self) -> u32 {
        self.arith.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.arith.modulus
    }

    pub fn gamma(&self) -> u32 {
        self.gamma
    }

    /// `q - 1`, the order of the multiplicative group.
    pub fn group_order(&self) -> u32 {
        self.arith.q - 1
    }

    pub fn check(&self, x: u32) -> Result<u32> {
        if x < self.q() {
            Ok(x)
        } else {
            Err(Error::ElementOutOfRange { element: x, q: self.q() })
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.arith.add(a, b)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.arith.sub(a, b)
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.arith.neg(a)
    }

    /// Table-driven multiplication.
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.group_order() as u64;
        let k = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % n;
        self.exp[k as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroElement("multiplicative inverse"));
        }
        let n = self.group_order();
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `x^n`, with `x^0 = 1` (including `0^0`).
    pub fn pow(&self, x: u32, n: u64) -> u32 {
        if n == 0 {
            return 1;
        }
        if x == 0 {
            return 0;
        }
        let order = self.group_order() as u64;
        let k = (self.log[x as usize] as u64 % order) * (n % order) % order;
        self.exp[k as usize]
    }

    /// Exponent `k` in `[0, q-2]` with `gamma^k = x`.
    pub fn discrete_log(&self, x: u32) -> Result<u32> {
        self.check(x)?;
        if x == 0 {
            return Err(Error::ZeroElement("discrete logarithm"));
        }
        Ok(self.log[x as usize])
    }

    /// `gamma^k`, exponent taken mod `q - 1`.
    pub fn antilog(&self, k: u64) -> u32 {
        self.exp[(k % self.group_order() as u64) as usize]
    }

    /// Unchecked log lookup for hot loops; `x` must be nonzero.
    #[inline]
    pub(crate) fn log_unchecked(&self, x: u32) -> u32 {
        self.log[x as usize]
    }

    pub fn minus_one(&self) -> u32 {
        self.neg(1)
    }

    /// `x^(q/p)`, the inverse of the Frobenius map.
    pub fn pth_root(&self, x: u32) -> u32 {
        self.pow(x, self.q() as u64 / self.p() as u64)
    }
}
