//! Independent oracles shared by the integration tests: exhaustive root
//! search, the rational-root test, a Sylvester-matrix resultant and random
//! polynomial generators. None of them call the factoring code.

#![allow(dead_code)]

use fieldext::{Field, Poly, Value};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Monic-or-not polynomial of exact degree `deg` with random coefficients.
pub fn random_poly(field: &Field, deg: usize, rng: &mut ChaCha8Rng) -> Poly {
    let mut cs: Vec<Value> = (0..deg).map(|_| field.random(rng)).collect();
    let mut lead = field.random(rng);
    while field.is_zero(&lead) {
        lead = field.random(rng);
    }
    cs.push(lead);
    Poly::from_coeffs(field, cs)
}

/// Integer coefficients in `[-height, height]`, nonzero leading term.
pub fn random_int_poly(deg: usize, height: i64, rng: &mut ChaCha8Rng) -> Poly {
    let q = Field::rationals();
    let mut cs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-height..=height)).collect();
    while cs[deg] == 0 {
        cs[deg] = rng.gen_range(-height..=height);
    }
    Poly::from_ints(&q, &cs)
}

/// Every root of `f` in a finite field, by evaluation at all elements.
pub fn exhaustive_roots(f: &Poly) -> Vec<Value> {
    let elems = f.field().elements(1 << 16).expect("small finite field");
    elems.into_iter().filter(|x| f.field().is_zero(&f.eval(x))).collect()
}

fn rational(v: &Value) -> BigRational {
    match v {
        Value::Rational(r) => r.clone(),
        _ => panic!("not a rational"),
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let m = n.to_u64().expect("small constant term");
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(BigInt::from(d));
            if d * d != m {
                out.push(BigInt::from(m / d));
            }
        }
        d += 1;
    }
    out
}

/// Rational roots of `f ∈ ℚ[x]` by the rational-root theorem.
pub fn rational_roots_oracle(f: &Poly) -> Vec<BigRational> {
    let cs: Vec<BigRational> = f.coeffs().iter().map(rational).collect();
    let den = cs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = cs.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    // strip x^k so the constant term is nonzero
    let shift = ints.iter().position(|c| !c.is_zero()).unwrap();
    let mut out = Vec::new();
    if shift > 0 {
        out.push(BigRational::zero());
    }
    let ints = &ints[shift..];
    if ints.len() == 1 {
        return out;
    }
    let eval = |x: &BigRational| ints.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()));
    for p in divisors(&ints[0]) {
        for q in divisors(ints.last().unwrap()) {
            for sign in [1, -1] {
                let x = BigRational::new(p.clone() * sign, q.clone());
                if eval(&x).is_zero() && !out.contains(&x) {
                    out.push(x);
                }
            }
        }
    }
    out
}

/// Determinant by plain Gaussian elimination, written independently of
/// the library's linear algebra.
pub fn determinant_oracle(field: &Field, mut m: Vec<Vec<Value>>) -> Value {
    let n = m.len();
    let mut det = field.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !field.is_zero(&m[r][col])) else {
            return field.zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = field.neg(&det);
        }
        let p = m[col][col].clone();
        det = field.mul(&det, &p);
        let pinv = field.inv(&p).unwrap();
        for r in col + 1..n {
            let factor = field.mul(&m[r][col], &pinv);
            if field.is_zero(&factor) {
                continue;
            }
            for c in col..n {
                let v = field.sub(&m[r][c], &field.mul(&factor, &m[col][c]));
                m[r][c] = v;
            }
        }
    }
    det
}

/// `Res(f, g)` as the determinant of the Sylvester matrix.
pub fn sylvester_resultant(f: &Poly, g: &Poly) -> Value {
    let field = f.field();
    let (m, n) = (f.deg(), g.deg());
    let size = m + n;
    let mut rows = Vec::new();
    for i in 0..n {
        let mut row = vec![field.zero(); size];
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![field.zero(); size];
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    determinant_oracle(field, rows)
}

/// Factors `count` seeded random polynomials over `field` (or integer
/// polynomials over ℚ) and checks the product and the low-degree
/// irreducible outputs against root oracles.
pub fn factor_roundtrip_suite(field: &Field, count: usize, max_deg: usize, seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    for i in 0..count {
        let deg = r.gen_range(1..=max_deg);
        let f = if field.characteristic() == 0 { random_int_poly(deg, 20, &mut r) } else { random_poly(field, deg, &mut r) };
        let fac = fieldext::unipoly::factor(&f).map_err(|e| format!("#{i} {f}: {e}"))?;
        if fac.expand(field) != f {
            return Err(format!("#{i}: product of factors of {f} differs from input"));
        }
        for (g, _) in &fac.factors {
            if !g.is_monic() || g.deg() == 0 {
                return Err(format!("#{i}: factor {g} of {f} is not monic of positive degree"));
            }
            if (2..=3).contains(&g.deg()) {
                let rootless = if field.characteristic() == 0 {
                    rational_roots_oracle(g).is_empty()
                } else {
                    exhaustive_roots(g).is_empty()
                };
                if !rootless {
                    return Err(format!("#{i}: factor {g} of {f} has a root"));
                }
            }
        }
    }
    Ok(())
}
