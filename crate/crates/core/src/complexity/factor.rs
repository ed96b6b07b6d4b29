//! Factorization over `F_d`: squarefree decomposition, Berlekamp's
//! algorithm, and the irreducible factorization of `x^n - 1`.

use crate::arith;
use crate::complexity::poly::DensePoly;

/// Squarefree decomposition `f = c * Π g_i^i` as `(g_i, i)` pairs with
/// nonconstant, pairwise coprime, squarefree monic `g_i`.
pub fn squarefree_decomposition(f: &DensePoly) -> Vec<(DensePoly, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    squarefree_rec(&f.monic(), 1, &mut out);
    out.sort_by(|a, b| (a.1, a.0.coeffs()).cmp(&(b.1, b.0.coeffs())));
    out
}

fn squarefree_rec(f: &DensePoly, scale: usize, out: &mut Vec<(DensePoly, usize)>) {
    let d = f.modulus() as usize;
    let fp = f.derivative();
    if fp.is_zero() {
        // f = g(x^d); over a prime field the d-th root only rescales exponents.
        let root = pth_root(f);
        squarefree_rec(&root, scale * d, out);
        return;
    }
    let mut c = f.gcd(&fp).expect("f is nonzero");
    let mut w = f.exact_div(&c).expect("gcd divides f");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c).expect("w is nonzero");
        let fac = w.exact_div(&y).expect("gcd divides w");
        if !fac.is_one() {
            out.push((fac.monic(), i * scale));
        }
        c = c.exact_div(&y).expect("gcd divides c");
        w = y;
        i += 1;
    }
    if !c.is_one() {
        squarefree_rec(&pth_root(&c), scale * d, out);
    }
}

fn pth_root(f: &DensePoly) -> DensePoly {
    let d = f.modulus() as usize;
    let coeffs = f.coeffs().iter().step_by(d).copied().collect();
    DensePoly::new(f.modulus(), coeffs)
}

/// Irreducible monic factors of a squarefree polynomial, by Berlekamp's
/// algorithm. Output is sorted by degree, then coefficients.
pub fn berlekamp(f: &DensePoly) -> Vec<DensePoly> {
    let f = f.monic();
    let n = match f.degree() {
        None | Some(0) => return Vec::new(),
        Some(1) => return vec![f],
        Some(n) => n,
    };
    let d = f.modulus();
    let d64 = d as u64;

    // Row i of Q holds x^(d*i) mod f.
    let xp = DensePoly::monomial(d, d as usize, 1).rem(&f).expect("f nonzero");
    let mut rows = Vec::with_capacity(n);
    let mut cur = DensePoly::one(d);
    for _ in 0..n {
        rows.push((0..n).map(|j| cur.coeff(j)).collect::<Vec<u32>>());
        cur = (&cur * &xp).rem(&f).expect("f nonzero");
    }
    // Kernel of v (Q - I) = 0, i.e. of the transpose acting on columns.
    let mut mat: Vec<Vec<u32>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let q = rows[i][j] as u64;
                    let delta = if i == j { d64 - 1 } else { 0 };
                    ((q + delta) % d64) as u32
                })
                .collect()
        })
        .collect();
    let basis = nullspace(&mut mat, d);
    let r = basis.len();
    let mut factors = vec![f.clone()];
    for vecg in basis {
        if factors.len() == r {
            break;
        }
        let g = DensePoly::new(d, vecg);
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(factors.len());
        for h in factors {
            if h.degree() == Some(1) {
                next.push(h);
                continue;
            }
            let mut parts = Vec::new();
            for c in 0..d {
                let shifted = &g - &DensePoly::new(d, vec![c]);
                let u = h.gcd(&shifted).expect("h nonzero");
                if u.degree().unwrap_or(0) > 0 {
                    parts.push(u);
                }
            }
            next.extend(parts);
        }
        factors = next;
    }
    factors.sort_by(|a, b| (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs())));
    factors
}

/// Basis of `{ v : mat * v = 0 }` over `F_d`. Destroys `mat`.
fn nullspace(mat: &mut [Vec<u32>], d: u32) -> Vec<Vec<u32>> {
    let d64 = d as u64;
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| mat[i][c] != 0) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = super::poly::inv_mod_prime(mat[r][c], d) as u64;
        for x in mat[r].iter_mut() {
            *x = (*x as u64 * inv % d64) as u32;
        }
        for i in 0..rows {
            if i != r && mat[i][c] != 0 {
                let factor = d64 - mat[i][c] as u64;
                for j in 0..cols {
                    let v = mat[r][j] as u64;
                    if v != 0 {
                        mat[i][j] = ((mat[i][j] as u64 + factor * v) % d64) as u32;
                    }
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u32; cols];
            v[fc] = 1;
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = ((d64 - mat[row][fc] as u64) % d64) as u32;
            }
            v
        })
        .collect()
}

/// `x^n - 1 = Π f^(d^s)` over `F_d`, with `n = d^s * n'` and `gcd(n', d) = 1`.
#[derive(Clone, Debug)]
pub struct CyclicFactorization {
    pub d: u32,
    pub n: usize,
    pub s: u32,
    pub coprime_part: usize,
    /// Distinct monic irreducible factors of `x^n' - 1`.
    pub factors: Vec<DensePoly>,
}

impl CyclicFactorization {
    pub fn new(d: u32, n: usize) -> Self {
        assert!(n > 0, "period must be positive");
        let (s, coprime) = arith::split_power(n as u64, d as u64);
        let mut cyclotomics: Vec<(u64, DensePoly)> = Vec::new();
        let mut factors = Vec::new();
        for e in arith::divisors(coprime) {
            // Φ_e = (x^e - 1) / Π_{e' | e, e' < e} Φ_e'.
            let mut phi = DensePoly::x_pow_minus_one(d, e as usize);
            for (e2, p2) in &cyclotomics {
                if e % e2 == 0 {
                    phi = phi.exact_div(p2).expect("cyclotomic factor divides x^e - 1");
                }
            }
            let ord = arith::multiplicative_order(d as u64, e).expect("e coprime to d");
            if ord == arith::euler_phi(e) {
                factors.push(phi.clone());
            } else {
                factors.extend(berlekamp(&phi));
            }
            cyclotomics.push((e, phi));
        }
        factors.sort_by(|a, b| (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs())));
        CyclicFactorization { d, n, s, coprime_part: coprime as usize, factors }
    }

    /// Multiplicity `d^s` of every factor in `x^n - 1`.
    pub fn repeat(&self) -> usize {
        (self.d as usize).pow(self.s)
    }
}
