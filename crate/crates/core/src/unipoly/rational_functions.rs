//! Roots in 𝔽_p(t) by the rational-root test over 𝔽_p[t].

use super::{factor_finite, Poly};
use crate::error::{Error, Result};
use crate::exactfields::{fpx, BaseField, Field, RatFun, Value};

/// Candidate roots tried before giving up with a capability error.
const MAX_CANDIDATES: usize = 50_000;

/// Distinct roots in 𝔽_p(t) of a nonzero polynomial over 𝔽_p(t).
///
/// After clearing denominators every root is `λ·u/v` with `u | a_0`,
/// `v | a_n` monic and `λ ∈ 𝔽_p^*`, so the search is complete.
pub fn rational_roots(f: &Poly) -> Result<Vec<Value>> {
    let field = f.field();
    let BaseField::RationalFunctions(p) = field.base() else {
        return Err(Error::domain("rational_roots expects a polynomial over GF(p)(t)"));
    };
    if field.depth() != 0 {
        return Err(Error::domain("rational_roots works over GF(p)(t) itself"));
    }
    if f.is_zero() {
        return Err(Error::domain("roots of the zero polynomial"));
    }
    let mut polys: Vec<&RatFun> = Vec::new();
    for c in f.coeffs() {
        let Value::RatFun(r) = c else { unreachable!() };
        polys.push(r);
    }
    let den = polys.iter().fold(vec![1u64], |acc, r| lcm(&acc, r.denominator(), p));
    let mut ints: Vec<Vec<u64>> =
        polys.iter().map(|r| fpx::mul(r.numerator(), &fpx::divrem(&den, r.denominator(), p).0, p)).collect();

    let mut roots = Vec::new();
    let lead_zeros = ints.iter().take_while(|c| c.is_empty()).count();
    if lead_zeros > 0 {
        roots.push(field.zero());
        ints.drain(..lead_zeros);
    }
    if ints.len() <= 1 {
        return Ok(roots);
    }
    let reduced = Poly::from_coeffs(field, ints.iter().map(|c| Value::RatFun(RatFun::polynomial(c.clone(), p))).collect());
    let us = monic_divisors(&ints[0], p)?;
    let vs = monic_divisors(ints.last().unwrap(), p)?;
    if us.len() * vs.len() * (p as usize - 1) > MAX_CANDIDATES {
        return Err(Error::capability("rational-root search over GF(p)(t) exceeds the candidate budget"));
    }
    for u in &us {
        for v in &vs {
            for lambda in 1..p {
                let cand = Value::RatFun(RatFun::new(fpx::scale(u, lambda, p), v.clone(), p));
                if field.is_zero(&reduced.eval(&cand)) && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

fn lcm(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let g = fpx::gcd(a, b, p);
    fpx::monic(&fpx::mul(&fpx::divrem(a, &g, p).0, b, p), p)
}

/// All monic divisors of a nonzero polynomial over 𝔽_p.
fn monic_divisors(a: &[u64], p: u64) -> Result<Vec<Vec<u64>>> {
    if fpx::degree(a).unwrap_or(0) == 0 {
        return Ok(vec![vec![1]]);
    }
    let fp = Field::prime(p)?;
    let poly = Poly::from_coeffs(&fp, a.iter().map(|&c| Value::Prime(c)).collect());
    let fac = factor_finite(&poly)?;
    let mut out = vec![vec![1u64]];
    for (g, m) in &fac.factors {
        let g: Vec<u64> = g.coeffs().iter().map(|c| if let Value::Prime(x) = c { *x } else { 0 }).collect();
        let mut next = Vec::new();
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*m {
                acc = fpx::mul(&acc, &g, p);
                next.push(acc.clone());
            }
        }
        out = next;
        if out.len() > MAX_CANDIDATES {
            return Err(Error::capability("too many divisors in the rational-root test"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[u64], den: &[u64], p: u64) -> Value {
        Value::RatFun(RatFun::new(num.to_vec(), den.to_vec(), p))
    }

    #[test]
    fn x2_minus_t_has_no_root() {
        let k = Field::rational_functions(2).unwrap();
        let f = Poly::from_coeffs(&k, vec![rf(&[0, 1], &[1], 2), k.zero(), k.one()]);
        assert!(rational_roots(&f).unwrap().is_empty());
    }

    #[test]
    fn finds_quotient_roots() {
        // (x - t/(t+1))(x - 1)(x) over 𝔽_3(t)
        let k = Field::rational_functions(3).unwrap();
        let r = rf(&[0, 1], &[1, 1], 3);
        let f = Poly::linear(&k, &r).mul(&Poly::linear(&k, &k.one())).mul(&Poly::x(&k));
        let roots = rational_roots(&f).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&r));
        assert!(roots.contains(&k.zero()));
    }
}
