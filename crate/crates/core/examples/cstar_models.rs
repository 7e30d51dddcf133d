//! Finite models of the subalgebra categories of ℂⁿ and the comparison with
//! the partition side.

use csub::cstar::{build_cinj, build_csub, comparison_report, weak_terminal_report, CstarFlags};

fn main() {
    let n = 3;
    let csub = build_csub(n, true).unwrap();
    println!("unital subalgebras of ℂ^{n}: {}", csub.objects.len());
    for (name, flags) in [("unital", CstarFlags::UNITAL), ("general", CstarFlags::GENERAL)] {
        let m = build_cinj(n, flags).unwrap();
        println!("{name}: {} objects, {} injective homomorphisms", m.objects.len(), m.homs.len());
    }

    let r = comparison_report(n).unwrap();
    println!("comparison convention {}", r.convention);
    if let Some(p) = &r.properties {
        println!("faithful {}, full {}, essentially surjective {}", p.faithful, p.full, p.essentially_surjective);
    }

    let m = build_cinj(n, CstarFlags::GENERAL).unwrap();
    let t = weak_terminal_report(&m.category).unwrap();
    for &x in &t.objects {
        println!("weakly terminal: {}", m.objects[x].label());
    }
}
