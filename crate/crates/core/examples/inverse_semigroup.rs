//! The inverse semigroup of partial isomorphisms between subalgebras of ℂⁿ and
//! the structures derived from it.

use csub::invsemi::{aut_elements_equivalence, build_t, derived_structures, law_report};

fn main() {
    for n in 1..=3 {
        let t = build_t(n).unwrap();
        let laws = law_report(&t);
        let d = derived_structures(&t).unwrap();
        println!(
            "n = {n}: |T| = {} (zero adjoined), laws hold {}, E {} elements, G {} morphisms, L {} morphisms",
            t.len(),
            laws.pass,
            d.e_size,
            d.g_morphisms,
            d.l_morphisms
        );
    }
    let a = aut_elements_equivalence(2).unwrap();
    println!("elements of the automorphism presheaf ≃ inclusion poset: {}", a.f_properties.is_equivalence && a.gf_identity);
}
