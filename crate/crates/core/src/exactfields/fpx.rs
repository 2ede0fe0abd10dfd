//! Dense polynomials over 𝔽_p with `u64` coefficients, low-to-high.
//!
//! This is the workhorse behind 𝔽_p(t) arithmetic. All functions expect
//! reduced residues and return trimmed vectors (no trailing zeros; the zero
//! polynomial is the empty vector).

pub fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &[u64]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue; `p` is prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(p as i128) as u64
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out.push((x + y) % p);
    }
    trim(&mut out);
    out
}

pub fn neg(a: &[u64], p: u64) -> Vec<u64> {
    a.iter().map(|&c| (p - c) % p).collect()
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    add(a, &neg(b, p), p)
}

pub fn scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().map(|&x| mul_mod(x, c, p)).collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

/// Division with remainder; `b` must be nonzero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "fpx::divrem by zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lc_inv = inv_mod(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = mul_mod(*r.last().unwrap(), lc_inv, p);
        q[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            let t = mul_mod(c, bj, p);
            r[shift + j] = (r[shift + j] + p - t) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(a, inv_mod(lc, p), p),
    }
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}

pub fn pow(a: &[u64], mut e: u64, p: u64) -> Vec<u64> {
    let mut acc = vec![1 % p];
    trim(&mut acc);
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base, p);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base, p);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let p = 7;
        let a = vec![3, 0, 5, 1, 2];
        let b = vec![1, 4, 1];
        let (q, r) = divrem(&a, &b, p);
        assert!(r.len() < b.len());
        assert_eq!(add(&mul(&q, &b, p), &r, p), a);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let p = 5;
        // (x+1)(x+2) and (x+1)(x+3)
        let f = mul(&[1, 1], &[2, 1], p);
        let g = mul(&[1, 1], &[3, 1], p);
        assert_eq!(gcd(&f, &g, p), vec![1, 1]);
    }

    #[test]
    fn inverse_mod_prime() {
        assert_eq!(inv_mod(3, 7), 5);
        for a in 1..13 {
            assert_eq!(mul_mod(a, inv_mod(a, 13), 13), 1);
        }
    }
}
