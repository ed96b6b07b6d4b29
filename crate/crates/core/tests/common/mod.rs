//! Independent oracles for prime fields. Nothing here calls into the library;
//! every quantity is recomputed from first principles.

#![allow(dead_code)]

/// `F_p` with the smallest primitive root and naive log tables.
pub struct PrimeField {
    pub p: u64,
    pub g: u64,
    pub log: Vec<u64>,
    pub exp: Vec<u64>,
}

fn order(x: u64, p: u64) -> u64 {
    let mut y = x % p;
    let mut n = 1;
    while y != 1 {
        y = y * x % p;
        n += 1;
    }
    n
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        let g = (2..p).find(|&x| order(x, p) == p - 1).unwrap_or(1);
        Self::with_generator(p, g)
    }

    pub fn with_generator(p: u64, g: u64) -> Self {
        assert_eq!(order(g, p), p - 1, "{g} is not primitive mod {p}");
        let mut log = vec![0; p as usize];
        let mut exp = vec![0; (p - 1) as usize];
        let mut y = 1;
        for k in 0..p - 1 {
            exp[k as usize] = y;
            log[y as usize] = k;
            y = y * g % p;
        }
        PrimeField { p, g, log, exp }
    }

    /// Every primitive root, ascending.
    pub fn primitive_roots(p: u64) -> Vec<u64> {
        (1..p).filter(|&x| order(x, p) == p - 1).collect()
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|i| i * i <= n).all(|i| !n.is_multiple_of(i))
}

/// `s_i = log(alpha^i + 1) mod d`, 0 when `alpha^i = -1`.
pub fn sequence(f: &PrimeField, d: u64, l: u64) -> Vec<u32> {
    let step = (f.p - 1) / l;
    (0..l)
        .map(|i| {
            let y = (f.exp[((i * step) % (f.p - 1)) as usize] + 1) % f.p;
            if y == 0 {
                0
            } else {
                (f.log[y as usize] % d) as u32
            }
        })
        .collect()
}

/// `(i, j)_v` for all `i, j`, by direct count.
pub fn cyclotomic_table(f: &PrimeField, v: u64) -> Vec<Vec<u64>> {
    let mut t = vec![vec![0u64; v as usize]; v as usize];
    for x in 1..f.p {
        let y = (x + 1) % f.p;
        if y != 0 {
            t[(f.log[x as usize] % v) as usize][(f.log[y as usize] % v) as usize] += 1;
        }
    }
    t
}

/// Rank over `F_d` of the `l x l` matrix `M[i][j] = s_{(i+j) mod l}`, which
/// equals the linear complexity of the periodic sequence.
pub fn hankel_rank(terms: &[u32], d: u32) -> usize {
    let l = terms.len();
    let d = d as u64;
    let mut m: Vec<Vec<u64>> = (0..l).map(|i| (0..l).map(|j| terms[(i + j) % l] as u64).collect()).collect();
    let mut rank = 0;
    for c in 0..l {
        let Some(pr) = (rank..l).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, pr);
        let inv = (1..d).find(|&x| x * m[rank][c] % d == 1).unwrap();
        for r in 0..l {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * inv % d;
                for j in c..l {
                    m[r][j] = (m[r][j] + d * d - f * m[rank][j] % d) % d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `C(n, h) mod d` from Pascal's triangle.
pub fn pascal_mod(n: usize, h: usize, d: u32) -> u32 {
    let mut row = vec![1u32];
    for _ in 0..n {
        let mut next = vec![1u32; row.len() + 1];
        for i in 1..row.len() {
            next[i] = (row[i - 1] + row[i]) % d;
        }
        row = next;
    }
    row.get(h).copied().unwrap_or(0) % d
}

/// `(A, |B|)` with `q = A^2 + 3B^2`, `A ≡ 1 (mod 3)`, `q` prime.
pub fn ab(q: i64) -> (i64, i64) {
    for b in 0.. {
        let a2 = q - 3 * b * b;
        assert!(a2 >= 0, "no representation for {q}");
        let a = (a2 as f64).sqrt().round() as i64;
        if a * a == a2 && a % 3 != 0 {
            return (if a % 3 == 1 { a } else { -a }, b);
        }
    }
    unreachable!()
}

/// Predicted `(S(1), S^(1)(1)) mod 3` for `d = 3`, `l = (q-1)/2`,
/// `q ≡ 7 (mod 12)`, with the sign of `B` fixed by the direct `(0,2)_6`.
pub fn predicted_s_values(f: &PrimeField) -> (u32, u32) {
    let q = f.p as i64;
    let (a, b_abs) = ab(q);
    let two_class = f.log[2] % 3;
    // (0,2)_6 * 36 = q + 1 + ca*A + 12B in each case.
    let ca = if two_class == 2 { -8 } else { -2 };
    let direct = 36 * cyclotomic_table(f, 6)[0][2] as i64;
    let b = if q + 1 + ca * a + 12 * b_abs == direct { b_abs } else { -b_abs };
    assert_eq!(q + 1 + ca * a + 12 * b, direct, "sign of B not determined for q = {q}");
    let c_b = [0, -1, 1][two_class as usize];
    (
        (-b).rem_euclid(3) as u32,
        ((1 - a) / 3 + c_b * b).rem_euclid(3) as u32,
    )
}

/// Direct `(S(1), S^(1)(1)) mod d`.
pub fn direct_s_values(terms: &[u32], d: u32) -> (u32, u32) {
    let d = d as u64;
    let s1 = terms.iter().map(|&t| t as u64).sum::<u64>() % d;
    let s11 = terms.iter().enumerate().map(|(n, &t)| n as u64 % d * t as u64).sum::<u64>() % d;
    (s1 as u32, s11 as u32)
}

/// Polynomial over `F_p` evaluated at `x`.
pub fn eval(coeffs: &[u32], x: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c as u64) % p)
}
