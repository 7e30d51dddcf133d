use csub::amalgam::{
    canonical_witness, check_amalgamation_with, check_group_amalgamation, check_monoid_amalgamation, evaluate, grothendieck,
    grothendieck_from_table, permutation_action_on_pn, pullback_action_on_pn, random_monotone_action, AmalgamCaps,
    AmalgamError, AmalgamOptions, AmalgamWitness, Convention, Mode, MonoidAction,
};
use csub::fincat::{validate_category, FinMonoid};
use csub::poset::FinPoset;
use csub::report::Status;
use csub::selftest::round_trip;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_monotone_actions_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_monotone_action(&mut rng, 5, 6);
        prop_assert!(round_trip(&a, Mode::Monoid).is_ok(), "seed {seed}: {:?}", round_trip(&a, Mode::Monoid));
    }

    #[test]
    fn searched_witness_agrees_on_random_actions(seed in 0u64..200) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_monotone_action(&mut rng, 4, 4);
        let g = grothendieck(&a).unwrap();
        let r = check_monoid_amalgamation(&g.category, None).unwrap();
        prop_assert!(r.pass, "seed {seed}: {:?}", r.first_failure());
    }
}

#[test]
fn category_json_round_trip_preserves_verdict() {
    let a = permutation_action_on_pn(3).unwrap();
    let g = grothendieck(&a).unwrap();
    let j = g.category.to_json();
    let back = validate_category(&j).unwrap();
    assert_eq!(back.to_json(), j);
    let w = canonical_witness(&g, &a.monoid, &a.poset).unwrap();
    let wj = w.to_json(&g.category);
    let w2 = AmalgamWitness::from_json(&back, &wj).unwrap();
    assert!(check_group_amalgamation(&back, Some(&w2)).unwrap().pass);
}

#[test]
fn group_mode_rejects_the_transformation_monoid() {
    let a = pullback_action_on_pn(3).unwrap();
    let g = grothendieck(&a).unwrap();
    let w = canonical_witness(&g, &a.monoid, &a.poset).unwrap();
    let r = evaluate(&g.category, &w, Mode::Group).unwrap();
    assert!(!r.pass);
    let f = r.first_failure().unwrap();
    assert!(["A1", "A3"].contains(&f.axiom.as_str()), "{f:?}");
    assert!(r.axioms.iter().skip_while(|s| s.status != Status::Fail).skip(1).all(|s| s.status == Status::NotEvaluated));
    assert!(!r.weak_initial_unique);
    assert!(evaluate(&g.category, &w, Mode::Monoid).unwrap().pass);
}

#[test]
fn a_monotone_table_that_is_not_an_action_fails_a7() {
    let monoid = FinMonoid::new(
        vec!["1".into(), "a".into(), "z".into()],
        &[vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]],
        0,
    )
    .unwrap();
    let poset = FinPoset::chain(3);
    let table = [[0, 1, 2], [0, 1, 2], [0, 2, 2]];
    let g = grothendieck_from_table(&monoid, &poset, |m, p| table[m][p], Convention::MulForward).unwrap();
    let w = canonical_witness(&g, &monoid, &poset).unwrap();
    let r = evaluate(&g.category, &w, Mode::Monoid).unwrap();
    assert_eq!(r.first_failure().map(|s| s.axiom.as_str()), Some("A7′"));
    assert!(r.passes_except(&["A7′"]));
}

#[test]
fn demanded_target_must_match() {
    let a = permutation_action_on_pn(2).unwrap();
    let g = grothendieck(&a).unwrap();
    let wrong = AmalgamOptions { target: Some(FinMonoid::symmetric_group(3)), caps: AmalgamCaps::default() };
    let r = check_amalgamation_with(&g.category, None, Mode::Group, &wrong).unwrap();
    assert!(!r.pass);
    let right = AmalgamOptions { target: Some(FinMonoid::symmetric_group(2)), caps: AmalgamCaps::default() };
    assert!(check_amalgamation_with(&g.category, None, Mode::Group, &right).unwrap().pass);
}

#[test]
fn tiny_search_cap_is_reported() {
    let a = pullback_action_on_pn(3).unwrap();
    let g = grothendieck(&a).unwrap();
    let opts = AmalgamOptions { target: None, caps: AmalgamCaps { retraction_nodes: 3, candidates: 1 } };
    match check_amalgamation_with(&g.category, None, Mode::Monoid, &opts) {
        Err(AmalgamError::SearchCapExceeded { .. }) => {}
        Ok(r) => assert!(r.candidates_tried <= 1),
        Err(e) => panic!("unexpected error {e}"),
    }
}

#[test]
fn trivial_action_is_the_poset_times_the_group() {
    let p = FinPoset::chain(3);
    let a = MonoidAction::from_fn(FinMonoid::symmetric_group(3), p.clone(), |_, x| x).unwrap();
    let g = grothendieck(&a).unwrap();
    for x in 0..3 {
        for y in 0..3 {
            assert_eq!(g.category.hom(x, y).len(), if p.leq(x, y) { 6 } else { 0 });
        }
    }
    assert!(round_trip(&a, Mode::Group).is_ok());
}
