//! Small helpers for arithmetic in Z/p and plain integer number theory.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in ascending order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// p-adic valuation. `n` must be nonzero.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

pub fn add(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn reduce(a: i64, p: u32) -> u32 {
    a.rem_euclid(p as i64) as u32
}

pub fn inverse(a: u32, p: u32) -> Option<u32> {
    let g = (a as i64).extended_gcd(&(p as i64));
    if g.gcd != 1 {
        return None;
    }
    Some(reduce(g.x, p))
}

/// Binomial coefficient mod p via Lucas' theorem.
pub fn binomial(n: u64, k: u64, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    let p64 = p as u64;
    let (mut n, mut k) = (n, k);
    let mut acc = 1u32;
    while n > 0 || k > 0 {
        let (nd, kd) = (n % p64, k % p64);
        if kd > nd {
            return 0;
        }
        acc = mul(acc, small_binomial(nd, kd, p), p);
        n /= p64;
        k /= p64;
    }
    acc
}

fn small_binomial(n: u64, k: u64, p: u32) -> u32 {
    let mut num = 1u32;
    let mut den = 1u32;
    for i in 0..k {
        num = mul(num, ((n - i) % p as u64) as u32, p);
        den = mul(den, ((i + 1) % p as u64) as u32, p);
    }
    mul(num, inverse(den, p).expect("nonzero digit factorial"), p)
}

/// Symmetric representative in (-p/2, p/2].
pub fn signed(a: u32, p: u32) -> i64 {
    if p > 2 && a > p / 2 {
        a as i64 - p as i64
    } else {
        a as i64
    }
}

/// Solve `A x = b` over Z/p where `columns[j]` is the j-th column of A.
/// Free variables are set to zero. Returns `None` when inconsistent.
pub fn solve(columns: &[Vec<u32>], rhs: &[u32], p: u32) -> Option<Vec<u32>> {
    let rows = rhs.len();
    let cols = columns.len();
    let mut m: Vec<Vec<u32>> = (0..rows)
        .map(|i| {
            let mut row: Vec<u32> = columns.iter().map(|c| c[i] % p).collect();
            row.push(rhs[i] % p);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inverse(m[r][c], p)?;
        for v in m[r].iter_mut() {
            *v = mul(*v, inv, p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..=cols {
                    let t = mul(f, m[r][j], p);
                    m[i][j] = add(m[i][j], neg(t, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| row[cols] != 0) {
        return None;
    }
    let mut x = vec![0; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols];
    }
    Some(x)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
