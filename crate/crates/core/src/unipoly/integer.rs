//! Factorization over ℚ: clear denominators, reduce to a monic integer
//! polynomial, factor modulo a good prime, Hensel-lift, and recombine
//! (Zassenhaus). Coefficient growth is capped by the Mignotte bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{factor_finite, Factorization, Poly};
use crate::error::{Error, Result};
use crate::exactfields::{is_prime, Field, Value};

type ZPoly = Vec<BigInt>;

/// Number of good primes inspected before choosing the one with the fewest
/// modular factors.
const PRIME_TRIALS: usize = 6;

pub fn factor_rational(f: &Poly) -> Result<Factorization> {
    let field = f.field();
    if field.depth() != 0 || field.characteristic() != 0 {
        return Err(Error::domain("factor_rational expects a polynomial over Q"));
    }
    let Some(lc) = f.lc().cloned() else {
        return Err(Error::domain("cannot factor the zero polynomial"));
    };
    let mut out = Factorization { unit: lc, factors: Vec::new() };
    let dec = f.squarefree_decomposition()?;
    for (part, mult) in dec.parts {
        for g in factor_squarefree(&part)? {
            out.factors.push((g, mult));
        }
    }
    out.normalize();
    Ok(out)
}

fn rat(v: &Value) -> &BigRational {
    match v {
        Value::Rational(r) => r,
        _ => unreachable!("non-rational coefficient"),
    }
}

/// Primitive integer polynomial with positive leading coefficient.
fn primitive_integer(f: &Poly) -> ZPoly {
    let den = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(rat(c).denom()));
    let mut z: ZPoly = f.coeffs().iter().map(|c| (rat(c) * BigRational::from_integer(den.clone())).to_integer()).collect();
    let content = z.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    for c in z.iter_mut() {
        *c /= &content;
    }
    if z.last().unwrap().is_negative() {
        for c in z.iter_mut() {
            *c = -c.clone();
        }
    }
    z
}

fn to_monic_rational(field: &Field, z: &ZPoly) -> Poly {
    let lc = z.last().unwrap().clone();
    Poly::from_coeffs(field, z.iter().map(|c| Value::Rational(BigRational::new(c.clone(), lc.clone()))).collect())
}

fn factor_squarefree(f: &Poly) -> Result<Vec<Poly>> {
    if f.deg() <= 1 {
        return Ok(vec![f.monic()]);
    }
    let field = f.field();
    let z = primitive_integer(f);
    let n = z.len() - 1;
    let a = z[n].clone();
    // monic transform G(x) = a^{n-1} F(x/a)
    let mut g: ZPoly = Vec::with_capacity(n + 1);
    let mut pw = BigInt::one();
    let mut powers = vec![BigInt::one(); n];
    for item in powers.iter_mut() {
        *item = pw.clone();
        pw *= &a;
    }
    for (i, c) in z.iter().enumerate() {
        if i == n {
            g.push(BigInt::one());
        } else {
            g.push(c * &powers[n - 1 - i]);
        }
    }
    let factors = zassenhaus(&g)?;
    Ok(factors
        .into_iter()
        .map(|h| {
            // back-substitute x -> a x and take the primitive part
            let mut scaled: ZPoly = Vec::with_capacity(h.len());
            let mut pw = BigInt::one();
            for c in &h {
                scaled.push(c * &pw);
                pw *= &a;
            }
            let content = scaled.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
            let prim: ZPoly = scaled.into_iter().map(|c| c / &content).collect();
            to_monic_rational(field, &prim)
        })
        .collect())
}

fn mod_floor(c: &BigInt, m: &BigInt) -> BigInt {
    c.mod_floor(m)
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn to_fp(z: &ZPoly, fp: &Field, p: u64) -> Poly {
    let pb = BigInt::from(p);
    Poly::from_coeffs(
        fp,
        z.iter()
            .map(|c| {
                let (_, digits) = mod_floor(c, &pb).to_u64_digits();
                Value::Prime(digits.first().copied().unwrap_or(0))
            })
            .collect(),
    )
}

fn from_fp(f: &Poly) -> ZPoly {
    f.coeffs()
        .iter()
        .map(|c| match c {
            Value::Prime(x) => BigInt::from(*x),
            _ => unreachable!(),
        })
        .collect()
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn zreduce(a: &ZPoly, m: &BigInt) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|c| mod_floor(c, m)).collect();
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// Exact division by a monic integer polynomial; `None` if inexact.
fn zdiv_monic(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let db = b.len() - 1;
    let mut r = a.clone();
    if r.len() < b.len() {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for shift in (0..q.len()).rev() {
        let c = r[shift + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| is_prime(n))
}

fn zassenhaus(g: &ZPoly) -> Result<Vec<ZPoly>> {
    let n = g.len() - 1;
    if n <= 1 {
        return Ok(vec![g.clone()]);
    }
    let mut best: Option<(u64, Vec<Poly>)> = None;
    let mut good = 0;
    for p in small_primes().take(200) {
        let fp = Field::prime(p)?;
        let gp = to_fp(g, &fp, p);
        if gp.deg() != n || !gp.is_squarefree()? {
            continue;
        }
        let fac = factor_finite(&gp)?;
        let mods: Vec<Poly> = fac.factors.into_iter().map(|(h, _)| h).collect();
        if mods.len() == 1 {
            return Ok(vec![g.clone()]);
        }
        if best.as_ref().is_none_or(|(_, b)| mods.len() < b.len()) {
            best = Some((p, mods));
        }
        good += 1;
        if good >= PRIME_TRIALS {
            break;
        }
    }
    let (p, mods) = best.ok_or_else(|| Error::internal("no good reduction prime found"))?;

    let norm_sq: BigInt = g.iter().map(|c| c * c).sum();
    let bound = (norm_sq.sqrt() + 1) * (BigInt::one() << n);
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1u32;
    while modulus <= &bound * 2 {
        modulus *= &pb;
        k += 1;
    }
    let fp = Field::prime(p)?;
    let lifted = hensel_lift_all(&zreduce(g, &modulus), &mods, &fp, p, k)?;
    Ok(recombine(g, lifted, &modulus))
}

/// Lifts a factorization `f ≡ Π mods (mod p)` of a monic `f` to `p^k`.
fn hensel_lift_all(f: &ZPoly, mods: &[Poly], fp: &Field, p: u64, k: u32) -> Result<Vec<ZPoly>> {
    let pk = BigInt::from(p).pow(k);
    if mods.len() == 1 {
        return Ok(vec![zreduce(f, &pk)]);
    }
    let mid = mods.len() / 2;
    let prod = |fs: &[Poly]| fs.iter().fold(Poly::one(fp), |acc, h| acc.mul(h));
    let g = prod(&mods[..mid]);
    let h = prod(&mods[mid..]);
    let (big_g, big_h) = hensel_lift_pair(f, &g, &h, fp, p, k)?;
    let mut out = hensel_lift_all(&big_g, &mods[..mid], fp, p, k)?;
    out.extend(hensel_lift_all(&big_h, &mods[mid..], fp, p, k)?);
    Ok(out)
}

fn hensel_lift_pair(f: &ZPoly, g: &Poly, h: &Poly, fp: &Field, p: u64, k: u32) -> Result<(ZPoly, ZPoly)> {
    let (one, s, t) = g.ext_gcd(h)?;
    if one.deg() != 0 {
        return Err(Error::internal("modular factors are not coprime"));
    }
    let pb = BigInt::from(p);
    let mut big_g = from_fp(g);
    let mut big_h = from_fp(h);
    let mut pj = pb.clone();
    for _ in 1..k {
        let gh = zmul(&big_g, &big_h);
        let len = f.len().max(gh.len());
        let diff: ZPoly = (0..len)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = gh.get(i).cloned().unwrap_or_default();
                a - b
            })
            .collect();
        let e_int: ZPoly = diff
            .iter()
            .map(|c| {
                debug_assert!((c % &pj).is_zero());
                c / &pj
            })
            .collect();
        let e = to_fp(&e_int, fp, p);
        let te = t.mul(&e);
        let (quo, delta_g) = te.divmod(g)?;
        let delta_h = s.mul(&e).add(&quo.mul(h));
        add_scaled(&mut big_g, &from_fp(&delta_g), &pj);
        add_scaled(&mut big_h, &from_fp(&delta_h), &pj);
        pj *= &pb;
    }
    let pk = pj;
    Ok((zreduce(&big_g, &pk), zreduce(&big_h, &pk)))
}

fn add_scaled(target: &mut ZPoly, delta: &ZPoly, scale: &BigInt) {
    if target.len() < delta.len() {
        target.resize(delta.len(), BigInt::zero());
    }
    for (t, d) in target.iter_mut().zip(delta) {
        *t += d * scale;
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn recombine(g: &ZPoly, lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut remaining = lifted;
    let mut current = g.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for combo in combinations(remaining.len(), size) {
            let prod = combo.iter().fold(vec![BigInt::one()], |acc, &i| zreduce(&zmul(&acc, &remaining[i]), modulus));
            let cand: ZPoly = prod.iter().map(|c| symmetric(c, modulus)).collect();
            // constant-term screen before the full division
            let c0 = &current[0];
            if !cand[0].is_zero() && !c0.is_zero() && !(c0 % &cand[0]).is_zero() {
                continue;
            }
            if let Some(q) = zdiv_monic(&current, &cand) {
                hit = Some((combo, cand, q));
                break;
            }
        }
        match hit {
            Some((combo, cand, q)) => {
                found.push(cand);
                current = q;
                remaining = remaining.into_iter().enumerate().filter(|(i, _)| !combo.contains(i)).map(|(_, h)| h).collect();
            }
            None => size += 1,
        }
    }
    if current.len() > 1 {
        found.push(current);
    }
    found
}
