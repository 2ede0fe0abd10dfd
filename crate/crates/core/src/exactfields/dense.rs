//! Slice-level dense polynomial arithmetic over an arbitrary [`Field`].
//!
//! Coefficients are low-to-high; results are trimmed. Both the extension
//! arithmetic in this module's parent and `unipoly::Poly` are built on
//! these routines.

use super::{Field, Value};

pub(crate) fn trim(f: &Field, a: &mut Vec<Value>) {
    while let Some(last) = a.last() {
        if f.is_zero(last) {
            a.pop();
        } else {
            break;
        }
    }
}

pub(crate) fn add(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => f.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    trim(f, &mut out);
    out
}

pub(crate) fn neg(f: &Field, a: &[Value]) -> Vec<Value> {
    a.iter().map(|c| f.neg(c)).collect()
}

pub(crate) fn sub(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    add(f, a, &neg(f, b))
}

pub(crate) fn scale(f: &Field, a: &[Value], c: &Value) -> Vec<Value> {
    if f.is_zero(c) {
        return Vec::new();
    }
    let mut out: Vec<Value> = a.iter().map(|x| f.mul(x, c)).collect();
    trim(f, &mut out);
    out
}

pub(crate) fn mul(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if f.is_zero(y) {
                continue;
            }
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, &mut out);
    out
}

/// Quotient and remainder; `b` must be trimmed and nonzero.
pub(crate) fn divrem(f: &Field, a: &[Value], b: &[Value]) -> (Vec<Value>, Vec<Value>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = a.to_vec();
    trim(f, &mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lc_inv = f.inv(&b[db]).expect("trimmed divisor has nonzero leading coefficient");
    let monic_divisor = f.is_one(&b[db]);
    let mut q = vec![f.zero(); r.len() - db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let top = r.pop().unwrap();
        if f.is_zero(&top) {
            continue;
        }
        let c = if monic_divisor { top } else { f.mul(&top, &lc_inv) };
        for (j, bj) in b[..db].iter().enumerate() {
            if !f.is_zero(bj) {
                r[shift + j] = f.sub(&r[shift + j], &f.mul(&c, bj));
            }
        }
        q[shift] = c;
    }
    trim(f, &mut r);
    trim(f, &mut q);
    (q, r)
}

pub(crate) fn monic(f: &Field, a: &[Value]) -> Vec<Value> {
    match a.last() {
        None => Vec::new(),
        Some(lc) if f.is_one(lc) => a.to_vec(),
        Some(lc) => scale(f, a, &f.inv(lc).expect("nonzero leading coefficient")),
    }
}

/// Monic gcd; zero when both inputs are zero.
pub(crate) fn gcd(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(f, &mut x);
    trim(f, &mut y);
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &monic(f, &y));
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Extended Euclid: returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
pub(crate) fn ext_gcd(f: &Field, a: &[Value], b: &[Value]) -> (Vec<Value>, Vec<Value>, Vec<Value>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(f, &mut r0);
    trim(f, &mut r1);
    let mut s0 = vec![f.one()];
    let mut s1: Vec<Value> = Vec::new();
    let mut t0: Vec<Value> = Vec::new();
    let mut t1 = vec![f.one()];
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        let t = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    match r0.last() {
        None => (r0, s0, t0),
        Some(lc) => {
            let inv = f.inv(lc).expect("nonzero");
            (scale(f, &r0, &inv), scale(f, &s0, &inv), scale(f, &t0, &inv))
        }
    }
}

pub(crate) fn eval(f: &Field, a: &[Value], x: &Value) -> Value {
    a.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}
