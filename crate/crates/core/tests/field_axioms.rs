mod common;

use fieldext::unipoly::Poly;
use fieldext::Field;
use proptest::prelude::*;

fn descriptors() -> Vec<(&'static str, Field)> {
    let q = Field::rationals();
    let f2 = Field::prime(2).unwrap();
    let f2t = Field::rational_functions(2).unwrap();
    let f3t = Field::rational_functions(3).unwrap();
    let sqrt2 = fieldext::towers::adjoin(&q, &Poly::from_ints(&q, &[-2, 0, 1]), false).unwrap();
    let biquad = fieldext::towers::adjoin(&sqrt2, &Poly::from_ints(&sqrt2, &[-3, 0, 1]), false).unwrap();
    let f4 = fieldext::towers::adjoin(&f2, &Poly::from_ints(&f2, &[1, 1, 1]), false).unwrap();
    let t = f3t.generator().unwrap();
    let sqrt_t = fieldext::towers::adjoin(&f3t, &Poly::from_coeffs(&f3t, vec![f3t.neg(&t), f3t.zero(), f3t.one()]), false).unwrap();
    vec![
        ("Q", q),
        ("GF(7)", Field::prime(7).unwrap()),
        ("GF(4)", f4),
        ("GF(2)(t)", f2t),
        ("Q(sqrt2)", sqrt2),
        ("Q(sqrt2,sqrt3)", biquad),
        ("GF(3)(t)(sqrt t)", sqrt_t),
    ]
}

/// Ring and field axioms on three seeded random elements.
fn check_axioms(field: &Field, seed: u64) -> Result<(), TestCaseError> {
    let mut r = common::rng(seed);
    let (a, b, c) = (field.random(&mut r), field.random(&mut r), field.random(&mut r));
    let f = field;
    prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
    prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
    prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
    prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
    prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
    prop_assert_eq!(f.add(&a, &f.zero()), a.clone());
    prop_assert_eq!(f.mul(&a, &f.one()), a.clone());
    prop_assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
    prop_assert_eq!(f.sub(&a, &b), f.add(&a, &f.neg(&b)));
    if f.is_zero(&a) {
        prop_assert!(f.inv(&a).is_err());
    } else {
        let ai = f.inv(&a).unwrap();
        prop_assert!(f.is_one(&f.mul(&a, &ai)));
        prop_assert_eq!(f.div(&b, &a).unwrap(), f.mul(&b, &ai));
    }
    prop_assert_eq!(f.pow(&a, 3), f.mul(&a, &f.mul(&a, &a)));
    let p = f.characteristic();
    if p > 0 {
        // Frobenius is additive
        prop_assert_eq!(f.pow(&f.add(&a, &b), p), f.add(&f.pow(&a, p), &f.pow(&b, p)));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn axioms_hold(seed in any::<u64>()) {
        for (_, field) in descriptors() {
            check_axioms(&field, seed)?;
        }
    }

    #[test]
    fn coordinates_round_trip(seed in any::<u64>()) {
        for (_, field) in descriptors() {
            let mut r = common::rng(seed);
            let a = field.random(&mut r);
            let base = field.base_field();
            let coords = field.coords_over(&a, &base);
            prop_assert_eq!(coords.len(), field.absolute_degree());
            prop_assert_eq!(field.from_coords_over(&coords, &base), a);
        }
    }
}

#[test]
fn finite_field_orders() {
    for (name, field) in descriptors() {
        if let Some(elems) = field.elements(1 << 12) {
            assert_eq!(elems.len() as u64, num_traits::ToPrimitive::to_u64(&field.order().unwrap()).unwrap(), "{name}");
            // the multiplicative group has order q - 1
            let q = elems.len() as u64;
            for e in elems.iter().filter(|e| !field.is_zero(e)) {
                assert!(field.is_one(&field.pow(e, q - 1)), "{name}");
            }
        }
    }
}
