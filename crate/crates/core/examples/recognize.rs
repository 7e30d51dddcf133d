//! Runs both recognition procedures over a few lattices and reports the first
//! axiom that fails.

use csub::partition::build_partition_lattice;
use csub::poset::{FinLattice, FinPoset};
use csub::recog::{check_firby, check_yoon};

fn main() {
    let n5 = FinPoset::from_generators(
        ["0", "a", "b", "c", "1"].map(String::from).to_vec(),
        &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)],
    )
    .unwrap();
    let cases = [
        ("P(4)", build_partition_lattice(4).unwrap().lattice),
        ("2³", FinLattice::new(FinPoset::boolean(3)).unwrap()),
        ("N₅", FinLattice::new(n5).unwrap()),
        ("4-chain", FinLattice::new(FinPoset::chain(4)).unwrap()),
    ];
    for (name, l) in &cases {
        let y = check_yoon(l).unwrap();
        let f = check_firby(l).unwrap();
        let show = |pass: bool, first: Option<&csub::report::AxiomStatus>| match (pass, first) {
            (true, _) => "pass".to_string(),
            (false, Some(a)) => format!("fails {}", a.axiom),
            (false, None) => "fail".to_string(),
        };
        println!(
            "{name:8} lattice axioms: {:12} closure axioms: {}",
            show(y.pass, y.first_failure()),
            show(f.pass, f.first_failure())
        );
    }
}
