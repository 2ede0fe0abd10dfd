mod common;

use fieldext::unipoly::{factor, factor_in, Poly};
use fieldext::Field;
use proptest::prelude::*;

#[test]
fn roundtrip_prime_fields() {
    for (p, seed) in [(2, 11), (3, 12), (5, 13), (7, 14)] {
        let f = Field::prime(p).unwrap();
        common::factor_roundtrip_suite(&f, 500, 8, seed).unwrap();
    }
}

#[test]
fn roundtrip_rationals() {
    common::factor_roundtrip_suite(&Field::rationals(), 500, 6, 15).unwrap();
}

fn all_monic(field: &Field, deg: usize) -> Vec<Poly> {
    let elems = field.elements(1 << 10).unwrap();
    let q = elems.len();
    (0..q.pow(deg as u32))
        .map(|mut idx| {
            let mut cs = Vec::new();
            for _ in 0..deg {
                cs.push(elems[idx % q].clone());
                idx /= q;
            }
            cs.push(field.one());
            Poly::from_coeffs(field, cs)
        })
        .collect()
}

/// Irreducible iff no monic divisor of degree at most half, by trial
/// division against every candidate.
#[test]
fn irreducibility_matches_trial_division() {
    for (p, max_deg) in [(2u64, 7usize), (3, 4)] {
        let field = Field::prime(p).unwrap();
        for deg in 1..=max_deg {
            for f in all_monic(&field, deg) {
                let brute = (1..=deg / 2).all(|d| all_monic(&field, d).iter().all(|g| !f.rem(g).unwrap().is_zero()));
                let fac = factor(&f).unwrap();
                assert_eq!(fac.is_irreducible(), brute, "{f} over GF({p})");
            }
        }
    }
}

#[test]
fn counts_of_irreducibles_over_gf2() {
    // number of monic irreducibles of degree n over GF(2): 2, 1, 2, 3, 6, 9, 18
    let field = Field::prime(2).unwrap();
    let expected = [2, 1, 2, 3, 6, 9, 18];
    for (i, want) in expected.iter().enumerate() {
        let n = all_monic(&field, i + 1).iter().filter(|f| factor(f).unwrap().is_irreducible()).count();
        assert_eq!(n, *want, "degree {}", i + 1);
    }
}

#[test]
fn number_field_factorizations() {
    let q = Field::rationals();
    let sqrt2 = fieldext::towers::adjoin(&q, &Poly::from_ints(&q, &[-2, 0, 1]), false).unwrap();
    // x^4 - 10x^2 + 1 = (x^2 - 2a x - 1)(x^2 + 2a x - 1) over ℚ(√2)
    let f = Poly::from_ints(&q, &[1, 0, -10, 0, 1]);
    let fac = factor_in(&sqrt2, &f).unwrap();
    assert_eq!(fac.factors.len(), 2);
    assert!(fac.factors.iter().all(|(g, m)| g.deg() == 2 && *m == 1));
    assert_eq!(fac.expand(&sqrt2), f.embed_into(&sqrt2).unwrap());
    // x^2 - 3 stays irreducible over ℚ(√2)
    assert!(factor_in(&sqrt2, &Poly::from_ints(&q, &[-3, 0, 1])).unwrap().is_irreducible());
    // the cyclotomic Φ5 splits completely over ℚ(ζ5)
    let phi5 = Poly::from_ints(&q, &[1, 1, 1, 1, 1]);
    let zeta = fieldext::towers::adjoin(&q, &phi5, false).unwrap();
    let fac = factor_in(&zeta, &phi5).unwrap();
    assert_eq!(fac.factors.len(), 4);
}

fn small_prime_poly() -> impl Strategy<Value = (u64, Vec<u64>)> {
    prop::sample::select(vec![2u64, 3, 5, 7])
        .prop_flat_map(|p| (Just(p), prop::collection::vec(0..p, 1..9)))
}

fn poly_mod(p: u64, cs: &[u64]) -> Poly {
    let f = Field::prime(p).unwrap();
    Poly::from_ints(&f, &cs.iter().map(|&c| c as i64).collect::<Vec<_>>())
}

fn int_poly() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..=20, 1..7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn divmod_identity((p, a) in small_prime_poly(), (_, b) in small_prime_poly()) {
        let a = poly_mod(p, &a);
        let b = poly_mod(p, &b);
        prop_assume!(!b.is_zero());
        let (q, r) = a.divmod(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.is_zero() || r.deg() < b.deg());
    }

    #[test]
    fn gcd_divides_and_bezout(a in int_poly(), b in int_poly()) {
        let q = Field::rationals();
        let (a, b) = (Poly::from_ints(&q, &a), Poly::from_ints(&q, &b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let (g, s, t) = a.ext_gcd(&b).unwrap();
        prop_assert!(a.rem(&g).unwrap().is_zero());
        prop_assert!(b.rem(&g).unwrap().is_zero());
        prop_assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn resultant_matches_sylvester(a in int_poly(), b in int_poly()) {
        let q = Field::rationals();
        let (a, b) = (Poly::from_ints(&q, &a), Poly::from_ints(&q, &b));
        prop_assume!(a.deg() >= 1 && b.deg() >= 1);
        prop_assert_eq!(a.resultant(&b).unwrap(), common::sylvester_resultant(&a, &b));
    }

    #[test]
    fn resultant_matches_sylvester_mod_p((p, a) in small_prime_poly(), (_, b) in small_prime_poly()) {
        let (a, b) = (poly_mod(p, &a), poly_mod(p, &b));
        prop_assume!(a.degree().unwrap_or(0) >= 1 && b.degree().unwrap_or(0) >= 1);
        prop_assert_eq!(a.resultant(&b).unwrap(), common::sylvester_resultant(&a, &b));
    }

    #[test]
    fn squarefree_parts_multiply_back(a in int_poly(), b in int_poly()) {
        let q = Field::rationals();
        let (a, b) = (Poly::from_ints(&q, &a), Poly::from_ints(&q, &b));
        prop_assume!(a.deg() >= 1 && b.deg() >= 1);
        let f = a.mul(&a).mul(&b).monic();
        let dec = f.squarefree_decomposition().unwrap();
        prop_assert!(dec.is_complete());
        let prod = dec.parts.iter().fold(Poly::one(&q), |acc, (g, m)| acc.mul(&g.pow(*m as u64)));
        prop_assert_eq!(prod, f);
    }

    #[test]
    fn roots_agree_with_exhaustive_search((p, a) in small_prime_poly()) {
        let f = poly_mod(p, &a);
        prop_assume!(f.deg() >= 1);
        let field = f.field().clone();
        let mut found = fieldext::unipoly::roots_in(&f, &field).unwrap();
        let mut brute = common::exhaustive_roots(&f);
        found.sort();
        brute.sort();
        prop_assert_eq!(found, brute);
    }
}
