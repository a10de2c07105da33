mod common;

use std::collections::HashSet;

use common::*;
use quiddity::enumerate::{enumerate_with, find_quiddities};
use quiddity::ops::compare_tuples;
use quiddity::{
    canonical_form, continuant, decompose, is_irreducible, Execution, QuidditySign, RingId,
    RingValue, SearchBounds, Tuple,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tuple(ring: RingId, v: Vec<RingValue>) -> Tuple {
    Tuple::new(ring, v).unwrap()
}

#[test]
fn continuant_matches_cofactor_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let len = rng.gen_range(0..=7);
        let a: Vec<i64> = (0..len).map(|_| rng.gen_range(-6..=6)).collect();
        let vals: Vec<RingValue> = a.iter().map(|&x| RingValue::int(x)).collect();
        assert_eq!(
            continuant(RingId::Int, &vals),
            RingValue::int(continuant_oracle(&a)),
            "{a:?}"
        );
    }
}

#[test]
fn continuant_sign_convention() {
    // the matrix with 1 on both off-diagonals has K_3(1,1,1) = -1
    assert_eq!(continuant_oracle(&[1, 1, 1]), -1);
    let t = Tuple::from_i64s(RingId::Int, &[1, 1, 1]).unwrap();
    assert_eq!(t.continuant(), RingValue::int(-1));
}

#[test]
fn word_matrix_matches_naive_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for ring in [RingId::Int, RingId::Mod(6), RingId::Poly, RingId::GaussEven] {
        for _ in 0..200 {
            let len = rng.gen_range(1..=7);
            let v: Vec<RingValue> = (0..len)
                .map(|_| match ring {
                    RingId::Int => RingValue::int(rng.gen_range(-5..=5)),
                    RingId::Mod(n) => RingValue::modular(rng.gen_range(0..6), n).unwrap(),
                    RingId::Poly => RingValue::poly([rng.gen_range(-3..=3), rng.gen_range(-2..=2)]),
                    _ => RingValue::gauss_even(rng.gen_range(-3..=3), rng.gen_range(-2..=2)),
                })
                .collect();
            let naive = naive_word(ring, &v);
            let t = tuple(ring, v.clone());
            let m = t.word_matrix();
            assert_eq!(
                m.entries(),
                &[
                    naive[0][0].clone(),
                    naive[0][1].clone(),
                    naive[1][0].clone(),
                    naive[1][1].clone()
                ]
            );
            let expected = naive_sign(ring, &v);
            assert_eq!(t.is_quiddity().map(QuidditySign::as_i64), expected, "{t}");
        }
    }
}

fn check_enumeration(bounds: SearchBounds) {
    let values = bounds.values();
    for exec in [Execution::Sequential, Execution::Parallel] {
        let found: HashSet<Vec<RingValue>> = find_quiddities(&bounds, exec)
            .unwrap()
            .into_iter()
            .map(|(t, sign)| {
                assert_eq!(naive_sign(bounds.ring, t.entries()), Some(sign.as_i64()));
                t.into_entries()
            })
            .collect();
        let expected: HashSet<Vec<RingValue>> = (bounds.size_min..=bounds.size_max)
            .flat_map(|n| brute_force_quiddities(bounds.ring, &values, n))
            .collect();
        assert_eq!(found, expected, "{:?}", bounds.ring);
    }
}

#[test]
fn enumeration_matches_generate_and_test() {
    check_enumeration(SearchBounds::new(RingId::Int, 2, 5, 2));
    check_enumeration(SearchBounds::new(RingId::Mod(2), 2, 6, 1));
    check_enumeration(SearchBounds::new(RingId::Mod(3), 2, 5, 1));
    check_enumeration(SearchBounds::new(RingId::Mod(4), 2, 5, 1));
    check_enumeration(SearchBounds::new(RingId::Poly, 2, 4, 1).with_degree(1));
    check_enumeration(SearchBounds::new(RingId::GaussEven, 2, 4, 2));
}

fn check_decompose(
    ring: RingId,
    tuple_values: &[RingValue],
    operand_values: &[RingValue],
    n_max: usize,
) {
    let reducible = brute_force_reducible(ring, operand_values, n_max);
    let mut seen = 0;
    for n in 3..=n_max {
        for q in brute_force_quiddities(ring, tuple_values, n) {
            let t = tuple(ring, q.clone());
            let verdict = decompose(&t).unwrap();
            if let Some(w) = &verdict {
                assert!(w.verifies(&t), "{t}");
            }
            assert_eq!(verdict.is_some(), reducible.contains(&q), "{t}");
            assert_eq!(is_irreducible(&t).unwrap(), verdict.is_none());
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn decompose_matches_pair_enumeration_mod5() {
    let all: Vec<RingValue> = (0..5).map(|k| RingValue::modular(k, 5).unwrap()).collect();
    check_decompose(RingId::Mod(5), &all, &all, 5);
}

#[test]
fn decompose_matches_pair_enumeration_zx() {
    // operands of a size <= 5 decomposition differ from the tuple entries by at
    // most a unit, so widening the constant range by one covers them all
    let tuple_values = SearchBounds::new(RingId::Poly, 3, 5, 1)
        .with_degree(1)
        .values();
    let operand_values: Vec<RingValue> = (-2..=2)
        .flat_map(|c| (-1..=1).map(move |d| RingValue::poly([c, d])))
        .collect();
    check_decompose(RingId::Poly, &tuple_values, &operand_values, 5);
}

#[test]
fn canonical_form_is_the_orbit_minimum() {
    let bounds = SearchBounds::new(RingId::Int, 2, 6, 2);
    let report = enumerate_with(&bounds, Execution::Sequential).unwrap();
    for rec in &report.quiddities {
        let min = dihedral_images(rec.tuple.entries())
            .into_iter()
            .map(|v| tuple(RingId::Int, v))
            .min_by(|a, b| compare_tuples(a, b).unwrap())
            .unwrap();
        assert_eq!(canonical_form(&rec.tuple).unwrap(), min);
        assert_eq!(rec.canonical, min);
    }
}
