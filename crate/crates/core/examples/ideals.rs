//! Direct images of subalgebras, the ideal-condition subcategory, and the
//! bundle of projections.

use csub::cstar::{bundle_projections, direct_image, ideal_condition_morphisms, PartialMap, Subalg};
use csub::partition::Partition;

fn main() {
    let c = Subalg(Partition::new(3, vec![vec![1, 2], vec![3]]).unwrap());
    let phi = PartialMap::total(3, &[1, 1, 3, 2]).unwrap();
    println!("image of {} under {:?}: {}", c.label(), [1, 1, 3, 2], direct_image(&phi, &c).unwrap().label());

    let r = ideal_condition_morphisms(3).unwrap();
    println!("ideal condition keeps {} of {} morphisms", r.kept.len(), r.model.homs.len());
    println!("kept morphisms closed under composition: {}", r.category.is_some());

    let b = bundle_projections(3).unwrap();
    println!("{} projections, Boolean: {}", b.projections.len(), b.boolean_iso.is_some());
}
