//! The transformation monoid T(3) acting on P(3) by pullback: the group axioms
//! reject it, the monoid axioms accept it.

use csub::amalgam::{canonical_witness, evaluate, grothendieck, pullback_action_on_pn, Mode};

fn main() {
    let a = pullback_action_on_pn(3).unwrap();
    let g = grothendieck(&a).unwrap();
    let w = canonical_witness(&g, &a.monoid, &a.poset).unwrap();
    for mode in [Mode::Group, Mode::Monoid] {
        let r = evaluate(&g.category, &w, mode).unwrap();
        match r.first_failure() {
            None => println!("{mode:?}: pass"),
            Some(f) => println!("{mode:?}: fails {} ({})", f.axiom, f.detail),
        }
    }
}
