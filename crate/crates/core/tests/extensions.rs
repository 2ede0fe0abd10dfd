mod common;

use fieldext::classify::{self, Flag};
use fieldext::cli::parse::InputSpec;
use fieldext::composite::CompositeRing;
use fieldext::harness;
use fieldext::magid;
use fieldext::towers::{self, Extension};
use fieldext::unipoly::Poly;
use fieldext::Field;
use proptest::prelude::*;

fn build(base: &str, ext: &[&str]) -> Extension {
    InputSpec::new(base, ext).build().unwrap().extension
}

fn finite_catalog() -> Vec<(String, Extension)> {
    harness::builtin_catalog()
        .into_iter()
        .filter(|s| s.infinite.is_none())
        .map(|s| (s.display_name(), s.build().unwrap().extension))
        .collect()
}

#[test]
fn galois_iff_group_order_is_degree() {
    for (name, ext) in finite_catalog() {
        let r = classify::classify(&ext).unwrap();
        let n = r.degree.finite().unwrap();
        assert_eq!(r.galois.known(), Some(r.aut_order.unwrap() == n), "{name}");
        assert_eq!(r.galois, r.separable.and(r.normal), "{name}");
        assert_eq!(r.finite, Flag::True, "{name}");
        assert_eq!(r.algebraic, Flag::True, "{name}");
        if r.perfect_base {
            assert_eq!(r.separable, Flag::True, "{name}");
        }
    }
}

#[test]
fn degree_one_has_every_property() {
    let q = Field::rationals();
    let r = classify::classify(&Extension::new(&q, &q).unwrap()).unwrap();
    for flag in [r.finite, r.algebraic, r.separable, r.normal, r.galois, r.fixed_field_is_k] {
        assert_eq!(flag, Flag::True);
    }
}

#[test]
fn frobenius_generates_finite_field_groups() {
    for (p, modulus) in [(2u64, &[1i64, 1, 0, 0, 1][..]), (3, &[2, 2, 0, 1][..]), (5, &[2, 0, 1][..])] {
        let k = Field::prime(p).unwrap();
        let l = towers::adjoin(&k, &Poly::from_ints(&k, modulus), false).unwrap();
        let ext = Extension::new(&k, &l).unwrap();
        let n = modulus.len() - 1;
        let group = towers::automorphisms(&ext).unwrap();
        assert_eq!(group.order(), n);
        assert_eq!(group.identify(), format!("C{n}"));
        // some automorphism acts as x -> x^p on every element
        let elems = l.elements(1 << 12).unwrap();
        let frob = group
            .elements
            .iter()
            .position(|g| elems.iter().all(|e| g.apply(e) == l.pow(e, p)))
            .expect("Frobenius is an automorphism");
        assert_eq!(group.element_order(frob), n);
    }
}

#[test]
fn primitive_element_of_biquadratic() {
    let ext = build("Q", &["x^2-2", "x^2-3"]);
    let pe = towers::primitive_element(&ext).unwrap();
    let q = Field::rationals();
    assert_eq!(pe.minpoly, Poly::from_ints(&q, &[1, 0, -10, 0, 1]));
    let l = ext.upper().unwrap();
    assert!(l.is_zero(&pe.minpoly.embed_into(l).unwrap().eval(&pe.gamma)));
    assert_eq!(towers::automorphisms(&ext).unwrap().identify(), "V4");
}

#[test]
fn embedding_counts() {
    let q = Field::rationals();
    let cbrt = build("Q", &["x^3-2"]);
    let l = cbrt.upper().unwrap();
    let closure = towers::normal_closure(&cbrt).unwrap();
    assert_eq!(closure.degree_over(&q), Some(6));
    assert_eq!(towers::embeddings(l, &closure, &q).unwrap().len(), 3);
    assert_eq!(towers::embeddings(l, l, &q).unwrap().len(), 1);
    let sqrt2 = build("Q", &["x^2-2"]);
    let l2 = sqrt2.upper().unwrap();
    assert_eq!(towers::embeddings(l2, l, &q).unwrap().len(), 0);
}

#[test]
fn fixed_field_of_full_group_is_base_exactly_when_galois() {
    for (name, ext) in finite_catalog() {
        let Ok(group) = towers::automorphisms(&ext) else { continue };
        let all: Vec<usize> = (0..group.order()).collect();
        let ff = towers::fixed_field(&ext, &group, &all).unwrap();
        let r = classify::classify(&ext).unwrap();
        assert_eq!(Some(ff.equals_base), r.galois.known(), "{name}");
        // [L : L^G] = |G|
        let n = r.degree.finite().unwrap();
        assert_eq!(n / ff.degree(), group.order(), "{name}");
    }
}

#[test]
fn magid_conditions_agree_on_catalog() {
    for (name, ext) in finite_catalog() {
        let r = magid::magid_check(&ext, 0).unwrap_or_else(|e| panic!("{name}: {e}"));
        let sep = classify::is_separable(&ext).unwrap();
        assert_eq!(r.separable.known(), Some(sep), "{name}");
        assert_eq!((r.reduced, r.unit_times_idempotent, r.idempotent_generated), (sep, sep, sep), "{name}");
    }
}

#[test]
fn nilradical_of_inseparable_quadratic() {
    let ext = build("GF(2)(t)", &["x^2-t"]);
    let (alg, _, _) = magid::tensor_algebra(&ext, None).unwrap();
    assert_eq!(alg.nilradical().len(), 1);
    let ext = build("GF(3)(t)", &["x^3-t"]);
    let (alg, _, _) = magid::tensor_algebra(&ext, None).unwrap();
    // (x - a)^3: nilradical spanned by (x - a), (x - a)^2
    assert_eq!(alg.nilradical().len(), 2);
}

#[test]
fn composite_noetherian_iff_finite() {
    for (name, ext) in finite_catalog() {
        assert!(CompositeRing::new(&ext).is_noetherian(), "{name}");
    }
    let q = Field::rationals();
    assert!(!CompositeRing::new(&Extension::infinite(&q, towers::InfiniteKind::Algebraic)).is_noetherian());
}

#[test]
fn xl_generators_certify_on_catalog() {
    for (name, ext) in finite_catalog() {
        let t = CompositeRing::new(&ext);
        let gens = t.xl_ideal_generators().unwrap();
        assert_eq!(gens.len(), ext.degree().finite().unwrap(), "{name}");
        let cert = t.certify_generation(&gens, 2).unwrap();
        assert_eq!(cert.witnesses.len(), 2 * gens.len(), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn min_poly_annihilates_and_degree_divides(seed in any::<u64>()) {
        let ext = build("Q", &["x^2-2", "x^2-3"]);
        let l = ext.upper().unwrap();
        let q = Field::rationals();
        let a = l.random(&mut common::rng(seed));
        let m = towers::min_poly(l, &a, &q).unwrap();
        prop_assert!(l.is_zero(&m.embed_into(l).unwrap().eval(&a)));
        prop_assert_eq!(4 % m.deg(), 0);
        prop_assert!(fieldext::unipoly::factor(&m).unwrap().is_irreducible());
    }

    #[test]
    fn automorphisms_are_field_maps(seed in any::<u64>()) {
        let ext = build("Q", &["x^4+x^3+x^2+x+1"]);
        let l = ext.upper().unwrap();
        let group = towers::automorphisms(&ext).unwrap();
        let mut r = common::rng(seed);
        let (a, b) = (l.random(&mut r), l.random(&mut r));
        for g in &group.elements {
            prop_assert_eq!(g.apply(&l.mul(&a, &b)), l.mul(&g.apply(&a), &g.apply(&b)));
            prop_assert_eq!(g.apply(&l.add(&a, &b)), l.add(&g.apply(&a), &g.apply(&b)));
        }
    }

    #[test]
    fn composite_closed_under_products(seed in any::<u64>()) {
        let ext = build("Q", &["x^3-2"]);
        let l = ext.upper().unwrap().clone();
        let t = CompositeRing::new(&ext);
        let q = Field::rationals();
        let mut r = common::rng(seed);
        let mut elem = || {
            let mut p = common::random_poly(&l, 3, &mut r);
            let c0 = l.embed(&q.random(&mut r), &q).unwrap();
            p = p.sub(&Poly::constant(&l, p.coeff(0))).add(&Poly::constant(&l, c0));
            t.element(p).unwrap()
        };
        let (x, y) = (elem(), elem());
        prop_assert!(t.mul(&x, &y).is_ok());
    }
}
