use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::ffield::FiniteField;
use crate::matgrp::{classes_of_order, sample_class, sample_uniform};

fn spec(fam: Family, p: u64, a: u32, quotient: bool) -> GroupSpec {
    GroupSpec::new(fam, FiniteField::new(p, a).unwrap(), quotient)
}

#[test]
fn closure_examples() {
    let s = spec(Family::SL2, 5, 1, false);
    assert_eq!(subgroup_closure(&s, &[s.identity()], 10).unwrap(), 1);
    assert_eq!(
        subgroup_closure(&s, &s.standard_generators(), 1000).unwrap(),
        120
    );
    assert!(matches!(
        subgroup_closure(&s, &s.standard_generators(), 100),
        Err(Error::Overflow { .. })
    ));
    // an abelian pair: the closure is cyclic of the order of the product
    let s7 = spec(Family::SL2, 7, 1, false);
    let sp = s7.space();
    let minus = sp.from_ints(&[-1, 0, 0, -1]).unwrap();
    let d = sp.from_ints(&[2, 0, 0, 4]).unwrap();
    let n = subgroup_closure(&s7, &[minus.clone(), d.clone()], 1000).unwrap();
    assert_eq!(n, s7.element_order(&sp.mul(&minus, &d), 100).unwrap());
    assert_eq!(n, 6);
}

#[test]
fn identities_are_proper_everywhere() {
    for s in [
        spec(Family::SL2, 2, 1, false),
        spec(Family::SL2, 11, 1, true),
        spec(Family::SL3, 3, 1, false),
        spec(Family::Sp4, 3, 1, true),
        spec(Family::Sp4, 7, 1, true),
    ] {
        let v = generation_verdict(&s, &[s.identity(), s.identity()], &Budget::default()).unwrap();
        assert_eq!(v.outcome, Outcome::Proper, "{s}");
    }
}

#[test]
fn rejects_non_members() {
    let s = spec(Family::Sp4, 3, 1, false);
    let m = s
        .space()
        .from_ints(&[1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1])
        .unwrap();
    let r = generation_verdict(&s, &[m, s.identity()], &Budget::default());
    assert!(matches!(r, Err(Error::NotInGroup(_))));
}

#[test]
fn psp4_3_pairs_of_orders_2_and_3_never_generate() {
    let s = spec(Family::Sp4, 3, 1, true);
    let inv = classes_of_order(&s, 2, DEFAULT_CAP).unwrap();
    let thr = classes_of_order(&s, 3, DEFAULT_CAP).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for c in &inv {
        for d in &thr {
            for _ in 0..20 {
                let x = sample_class(c, &mut rng);
                let y = sample_class(d, &mut rng);
                let v = generation_verdict(&s, &[x, y], &Budget::default()).unwrap();
                assert_eq!(v.outcome, Outcome::Proper);
                assert_eq!(v.method, Method::Closure);
            }
        }
    }
}

#[test]
fn closure_verdicts_match_full_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for s in [
        spec(Family::SL3, 2, 1, false),
        spec(Family::Sp4, 2, 1, false),
        spec(Family::SL2, 3, 1, true),
    ] {
        let order = s.order().unwrap();
        for _ in 0..200 {
            let t = [sample_uniform(&s, &mut rng), sample_uniform(&s, &mut rng)];
            let v = generation_verdict(&s, &t, &Budget::default()).unwrap();
            let n = subgroup_closure(&s, &t, order).unwrap();
            assert_eq!(v.is_generating(), n == order, "{s}");
            if !v.is_generating() {
                assert_eq!(v.witness, Some(Witness::ClosureSize(n)));
            }
        }
    }
}

#[test]
fn full_trace_field_for_generating_pairs() {
    // a generating pair of SL2(p^a) has traces generating the whole field,
    // else the group would be conjugate into GL2 of a subfield
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (p, a, pairs) in [
        (2, 2, 20),
        (2, 3, 20),
        (3, 2, 20),
        (2, 4, 10),
        (5, 2, 10),
        (3, 3, 10),
        (7, 2, 4),
        (11, 2, 1),
    ] {
        let s = spec(Family::SL2, p, a, false);
        let order = s.order().unwrap();
        let mut found = 0;
        while found < pairs {
            let t = [sample_uniform(&s, &mut rng), sample_uniform(&s, &mut rng)];
            if subgroup_closure(&s, &t, order).unwrap() == order {
                assert_eq!(trace_field(s.space(), &t).unwrap(), a, "{s}");
                found += 1;
            }
        }
    }
}

#[test]
fn trace_field_is_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for s in [
        spec(Family::SL2, 3, 4, false),
        spec(Family::SL3, 2, 4, false),
        spec(Family::Sp4, 5, 2, false),
    ] {
        let sp = s.space();
        for _ in 0..30 {
            let t = [sample_uniform(&s, &mut rng), sample_uniform(&s, &mut rng)];
            let g = sample_uniform(&s, &mut rng);
            let u: Vec<SquareMatrix> = t.iter().map(|m| sp.conjugate(m, &g)).collect();
            assert_eq!(
                trace_field_unchecked(sp, &t).unwrap(),
                trace_field_unchecked(sp, &u).unwrap()
            );
        }
    }
}

#[test]
fn exterior_square_spans_26_for_generating_pairs() {
    // the certificate must never fire on a generating pair
    let s = spec(Family::Sp4, 3, 1, false);
    let sp = s.space();
    let order = s.order().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut found = 0;
    while found < 10 {
        let t = [sample_uniform(&s, &mut rng), sample_uniform(&s, &mut rng)];
        if subgroup_closure(&s, &t, order).unwrap() == order {
            let imgs: Vec<SquareMatrix> = t
                .iter()
                .map(|m| exterior_square(sp, m).unwrap().1)
                .collect();
            let (big, _) = exterior_square(sp, &sp.identity()).unwrap();
            assert_eq!(algebra_span(&big, &imgs).unwrap().dim, 26);
            found += 1;
        }
    }
}

#[test]
fn certificates_on_large_sp4() {
    // q = 7 is past the default closure cap
    let s = spec(Family::Sp4, 7, 1, true);
    let sp = s.space();
    let budget = Budget::default();
    assert!(s.order().unwrap() > budget.closure_cap);
    // both generators inside the Levi SL2 x SL2 stabilising <e0, e3>
    let x = sp
        .from_ints(&[1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1])
        .unwrap();
    let y = sp
        .from_ints(&[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1])
        .unwrap();
    assert!(s.contains(&x).unwrap() && s.contains(&y).unwrap());
    let v = generation_verdict(&s, &[x, y], &budget).unwrap();
    assert_eq!(v.outcome, Outcome::Proper);
    // random pairs are never certified as generating past the cap
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let t = [sample_uniform(&s, &mut rng), sample_uniform(&s, &mut rng)];
        assert_ne!(
            generation_verdict(&s, &t, &budget).unwrap().outcome,
            Outcome::Generates
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stricter_budget_only_moves_mass_to_inconclusive(seed in any::<u64>(), fam in 0usize..3) {
        let s = [spec(Family::SL3, 3, 1, false), spec(Family::Sp4, 3, 1, true), spec(Family::SL2, 3, 1, false)][fam].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = [sample_uniform(&s, &mut rng), sample_uniform(&s, &mut rng)];
        let full = generation_verdict(&s, &t, &Budget::default()).unwrap();
        let strict = generation_verdict(&s, &t, &Budget { closure_cap: 0 }).unwrap();
        prop_assert_ne!(full.outcome, Outcome::Inconclusive);
        if strict.outcome != Outcome::Inconclusive {
            prop_assert_eq!(strict.outcome, full.outcome);
        }
    }

    #[test]
    fn proper_verdicts_carry_witnesses(seed in any::<u64>(), q in prop::sample::select(vec![(2u64, 2u32), (3, 2), (11, 1), (13, 1), (2, 5)])) {
        let s = spec(Family::SL2, q.0, q.1, false);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = [sample_uniform(&s, &mut rng), sample_uniform(&s, &mut rng)];
        let v = generation_verdict(&s, &t, &Budget::default()).unwrap();
        prop_assert_eq!(v.outcome == Outcome::Proper, v.witness.is_some());
        prop_assert_eq!(GenVerdict::parse_record(&v.to_record()).unwrap(), v);
    }
}
