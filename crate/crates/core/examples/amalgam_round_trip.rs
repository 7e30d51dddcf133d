//! Builds the category of elements of S(3) acting on P(3), checks the
//! amalgamation axioms, and recovers the action.

use csub::amalgam::{build_equivalence, canonical_witness, evaluate, grothendieck, permutation_action_on_pn, recover_action, Mode};

fn main() {
    let a = permutation_action_on_pn(3).unwrap();
    let g = grothendieck(&a).unwrap();
    let c = &g.category;
    println!("{} objects, {} morphisms", c.num_objects(), c.num_morphisms());

    let w = canonical_witness(&g, &a.monoid, &a.poset).expect("canonical witness");
    let r = evaluate(c, &w, Mode::Group).unwrap();
    for s in &r.axioms {
        println!("  {}: {:?}", s.axiom, s.status);
    }

    let back = recover_action(c, &w, Mode::Group).unwrap();
    println!("recovered table equals the input: {}", back.table() == a.table());
    let eq = build_equivalence(c, &w, Mode::Group).unwrap();
    println!("comparison functor is an equivalence: {}", eq.properties.is_equivalence);
}
