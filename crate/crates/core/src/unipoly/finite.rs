//! Factorization over finite fields (𝔽_p and finite towers over it):
//! square-free decomposition, distinct-degree splitting, then
//! Cantor–Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use num_traits::{One, Pow};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Factorization, Poly};
use crate::error::{Error, Result};

const EDF_SEED: u64 = 0x5eed_f00d;

pub fn factor_finite(f: &Poly) -> Result<Factorization> {
    let field = f.field();
    if !field.is_finite() {
        return Err(Error::domain("factor_finite called on an infinite field"));
    }
    let Some(lc) = f.lc().cloned() else {
        return Err(Error::domain("cannot factor the zero polynomial"));
    };
    let mut out = Factorization { unit: lc, factors: Vec::new() };
    if f.deg() == 0 {
        return Ok(out);
    }
    let dec = f.squarefree_decomposition()?;
    debug_assert!(dec.is_complete());
    for (part, mult) in dec.parts {
        for (chunk, d) in distinct_degree(&part)? {
            for g in equal_degree(&chunk, d)? {
                out.factors.push((g, mult));
            }
        }
    }
    out.normalize();
    Ok(out)
}

/// Splits a monic square-free polynomial into products of irreducibles of
/// equal degree `d`.
pub(crate) fn distinct_degree(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let q = f.field().order().unwrap();
    let x = Poly::x(f.field());
    let mut rest = f.clone();
    let mut h = x.rem(&rest)?;
    let mut out = Vec::new();
    let mut d = 0;
    while 2 * (d + 1) <= rest.deg() {
        d += 1;
        h = h.pow_mod(&q, &rest)?;
        let g = rest.gcd(&h.sub(&x))?;
        if g.deg() > 0 {
            rest = rest.exact_div(&g)?;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let n = rest.deg();
        out.push((rest, n));
    }
    Ok(out)
}

/// Cantor–Zassenhaus splitting of a product of distinct degree-`d`
/// irreducibles.
pub(crate) fn equal_degree(f: &Poly, d: usize) -> Result<Vec<Poly>> {
    if f.deg() == d {
        return Ok(vec![f.monic()]);
    }
    let field = f.field();
    let q = field.order().unwrap();
    let p = field.characteristic();
    let n = f.deg();
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED ^ n as u64);

    // small deterministic candidates first, then seeded random ones
    let small: Vec<Poly> = (1..n)
        .flat_map(|k| (0..p.min(8)).map(move |c| (k, c)))
        .map(|(k, c)| Poly::monomial(field, field.one(), k).add(&Poly::constant(field, field.from_i64(c as i64))))
        .collect();
    let mut attempt = 0usize;
    loop {
        let r = if attempt < small.len() {
            small[attempt].clone()
        } else {
            let coeffs = (0..n).map(|_| field.random(&mut rng)).collect();
            Poly::from_coeffs(field, coeffs)
        };
        attempt += 1;
        if attempt > 10_000 {
            return Err(Error::internal("equal-degree splitting did not converge"));
        }
        if r.deg() == 0 {
            continue;
        }
        let s = if p == 2 {
            // trace map r + r^2 + … + r^{2^{kd-1}} where q = 2^k
            let k = field.absolute_degree();
            let mut acc = r.rem(f)?;
            let mut term = acc.clone();
            let two = BigUint::from(2u32);
            for _ in 1..k * d {
                term = term.pow_mod(&two, f)?;
                acc = acc.add(&term);
            }
            acc
        } else {
            let e = (Pow::pow(&q, d as u32) - BigUint::one()) / BigUint::from(2u32);
            r.pow_mod(&e, f)?.sub(&Poly::one(field))
        };
        if s.is_zero() {
            continue;
        }
        let g = f.gcd(&s)?;
        if g.deg() > 0 && g.deg() < f.deg() {
            let h = f.exact_div(&g)?;
            let mut out = equal_degree(&g, d)?;
            out.extend(equal_degree(&h, d)?);
            return Ok(out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfields::{Field, Value};

    #[test]
    fn x2_plus_1_over_f5() {
        let f5 = Field::prime(5).unwrap();
        let f = Poly::from_ints(&f5, &[1, 0, 1]);
        let fac = factor_finite(&f).unwrap();
        assert_eq!(
            fac.factors,
            vec![(Poly::from_ints(&f5, &[2, 1]), 1), (Poly::from_ints(&f5, &[3, 1]), 1)]
        );
    }

    #[test]
    fn x4_plus_x_over_f2() {
        let f2 = Field::prime(2).unwrap();
        let f = Poly::from_ints(&f2, &[0, 1, 0, 0, 1]);
        let fac = factor_finite(&f).unwrap();
        assert_eq!(
            fac.factors,
            vec![
                (Poly::from_ints(&f2, &[0, 1]), 1),
                (Poly::from_ints(&f2, &[1, 1]), 1),
                (Poly::from_ints(&f2, &[1, 1, 1]), 1)
            ]
        );
    }

    #[test]
    fn over_f4() {
        let f2 = Field::prime(2).unwrap();
        let f4 = Field::extension_unchecked(&f2, vec![Value::Prime(1), Value::Prime(1), Value::Prime(1)], false);
        // x^2 + x + 1 splits over 𝔽_4
        let f = Poly::from_ints(&f4, &[1, 1, 1]);
        let fac = factor_finite(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(&f4), f);
        // x^4 + x over 𝔽_4 splits into all four linear factors
        let g = Poly::from_ints(&f4, &[0, 1, 0, 0, 1]);
        let fac = factor_finite(&g).unwrap();
        assert_eq!(fac.factors.len(), 4);
        assert!(fac.factors.iter().all(|(h, m)| h.deg() == 1 && *m == 1));
    }
}
