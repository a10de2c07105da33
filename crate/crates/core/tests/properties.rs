use num_bigint::BigInt;
use proptest::prelude::*;
use quiddity::ops::compare_tuples;
use quiddity::{
    canonical_form, dihedral_orbit, elementary, sum, PmOne, QuidditySign, RingId, RingValue, Tuple,
};

fn int_value() -> impl Strategy<Value = RingValue> {
    (-1000i64..1000).prop_map(RingValue::int)
}

fn mod_value(n: u64) -> impl Strategy<Value = RingValue> {
    (-1000i64..1000).prop_map(move |k| RingValue::modular(k, n).unwrap())
}

fn poly_value() -> impl Strategy<Value = RingValue> {
    prop::collection::vec(-20i64..20, 1..5).prop_map(RingValue::poly)
}

fn gauss_value() -> impl Strategy<Value = RingValue> {
    (-50i64..50, -50i64..50).prop_map(|(a, b)| RingValue::gauss_even(a, b))
}

fn exact_value() -> impl Strategy<Value = RingValue> {
    prop_oneof![
        int_value(),
        mod_value(7),
        mod_value(12),
        poly_value(),
        gauss_value()
    ]
}

/// Three values from one randomly chosen exact ring.
fn triple() -> impl Strategy<Value = (RingValue, RingValue, RingValue)> {
    prop_oneof![
        (int_value(), int_value(), int_value()),
        (mod_value(7), mod_value(7), mod_value(7)),
        (mod_value(12), mod_value(12), mod_value(12)),
        (poly_value(), poly_value(), poly_value()),
        (gauss_value(), gauss_value(), gauss_value()),
    ]
}

fn small_int_tuple(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Tuple> {
    prop::collection::vec(-4i64..=4, len).prop_map(|v| Tuple::from_i64s(RingId::Int, &v).unwrap())
}

fn small_poly_tuple(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Tuple> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 1..=3), len).prop_map(|v| {
        Tuple::new(RingId::Poly, v.into_iter().map(RingValue::poly).collect()).unwrap()
    })
}

proptest! {
    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        let ring = a.ring();
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &(-&a), ring.zero());
        prop_assert_eq!(&a * &ring.one(), a.clone());
        prop_assert_eq!(&a + &ring.zero(), a);
    }

    #[test]
    fn parse_inverts_format(x in exact_value()) {
        let text = x.to_string();
        prop_assert_eq!(RingValue::parse(x.ring(), &text).unwrap(), x);
    }

    #[test]
    fn tuple_parse_inverts_format(t in small_poly_tuple(1..=5)) {
        prop_assert_eq!(Tuple::parse(RingId::Poly, &t.to_string()).unwrap(), t);
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly_value(), q in poly_value(), a in -6i64..=6) {
        let a = BigInt::from(a);
        let ev = |x: &RingValue| x.eval_poly_at(&a).unwrap();
        prop_assert_eq!(ev(&(&p + &q)), &ev(&p) + &ev(&q));
        prop_assert_eq!(ev(&(&p * &q)), &ev(&p) * &ev(&q));
    }

    #[test]
    fn nonconstant_polynomials_are_not_units(
        low in prop::collection::vec(-5i64..=5, 0..3),
        lead in prop_oneof![-5i64..=-1, 1i64..=5],
    ) {
        let mut c = vec![0i64];
        c.extend(low);
        c.push(lead);
        prop_assert_eq!(RingValue::poly(c).is_pm_one(), PmOne::Neither);
    }

    #[test]
    fn ordering_is_total_and_antisymmetric((a, b, _c) in triple()) {
        let ab = a.compare(&b).unwrap();
        prop_assert_eq!(ab.reverse(), b.compare(&a).unwrap());
        prop_assert_eq!(ab.is_eq(), a == b);
    }

    #[test]
    fn continuant_identity_over_z(t in small_int_tuple(1..=8)) {
        prop_assert!(t.continuant_identity_holds());
    }

    #[test]
    fn continuant_identity_over_zx(t in small_poly_tuple(1..=5)) {
        prop_assert!(t.continuant_identity_holds());
    }

    #[test]
    fn words_have_determinant_one(t in small_poly_tuple(1..=6)) {
        prop_assert_eq!(elementary(&t.entries()[0]).det(), RingValue::poly([1]));
        prop_assert_eq!(t.word_matrix().det(), RingValue::poly([1]));
    }

    #[test]
    fn canonical_form_is_constant_on_orbits(t in small_int_tuple(1..=7)) {
        let c = canonical_form(&t).unwrap();
        prop_assert_eq!(canonical_form(&c).unwrap(), c.clone());
        for (_, u) in dihedral_orbit(&t) {
            prop_assert_eq!(canonical_form(&u).unwrap(), c.clone());
            prop_assert!(compare_tuples(&c, &u).unwrap().is_le());
        }
    }

    #[test]
    fn quiddity_is_invariant_under_equivalence(prefix in small_int_tuple(3..=5)) {
        let q = sum(&prefix, &Tuple::from_i64s(RingId::Int, &[1, 1, 1]).unwrap()).unwrap();
        let is_q = q.is_quiddity();
        for (_, u) in dihedral_orbit(&q) {
            prop_assert_eq!(u.is_quiddity().is_some(), is_q.is_some());
        }
    }

    #[test]
    fn sum_with_a_quiddity_preserves_the_verdict(
        a in small_int_tuple(2..=6),
        pick in 0usize..6,
    ) {
        let quiddities: [&[i64]; 6] = [
            &[1, 1, 1], &[-1, -1, -1], &[0, 0], &[1, 2, 1, 2], &[0, 3, 0, -3], &[2, 0, -1, 1, 1],
        ];
        let b = Tuple::from_i64s(RingId::Int, quiddities[pick]).unwrap();
        prop_assert!(b.is_quiddity().is_some());
        let s = sum(&a, &b).unwrap();
        prop_assert_eq!(s.is_quiddity().is_some(), a.is_quiddity().is_some());
    }
}

#[test]
fn zero_pole_family_keeps_its_sign_under_specialization() {
    let x = RingValue::poly([3, -1, 2]);
    let zero = RingValue::poly([0]);
    let t = Tuple::new(RingId::Poly, vec![zero.clone(), x.clone(), zero, -&x]).unwrap();
    let sign = t.is_quiddity().unwrap();
    assert_eq!(sign, QuidditySign::Plus);
    for a in -5..=5 {
        let a = BigInt::from(a);
        let z = Tuple::new(
            RingId::Int,
            t.entries()
                .iter()
                .map(|p| p.eval_poly_at(&a).unwrap())
                .collect(),
        )
        .unwrap();
        assert_eq!(z.is_quiddity(), Some(sign));
    }
}
