//! Checks whether the category from S(3) on P(3) has the shape of the
//! subalgebra category of a matrix algebra with the given block sizes.

use csub::amalgam::{check_cstar_characterization, grothendieck, permutation_action_on_pn, AmalgamOptions};

fn main() {
    let g = grothendieck(&permutation_action_on_pn(3).unwrap()).unwrap();
    let opts = AmalgamOptions::default();
    for (dims, dim_a) in [(vec![1, 2], 5), (vec![3], 9), (vec![3], 8)] {
        let v = check_cstar_characterization(&g.category, &dims, dim_a, &opts).unwrap();
        println!("dims {dims:?}, dim A = {dim_a}: {}", if v.pass { "pass" } else { "fail" });
        for c in v.clauses.iter().filter(|c| !c.detail.is_empty()) {
            println!("  {}: {}", c.axiom, c.detail);
        }
    }
}
