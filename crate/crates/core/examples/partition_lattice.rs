//! Builds P(n) for small n and prints its size, Möbius value at the top and
//! characteristic polynomial.

use csub::partition::build_partition_lattice;

fn main() {
    for n in 1..=5 {
        let l = build_partition_lattice(n).expect("n within cap").lattice;
        let mu = l.mobius();
        let chi = l.characteristic_polynomial().expect("P(n) is graded");
        println!("P({n}): {} elements, μ(0̂, 1̂) = {}, χ = {chi}", l.len(), mu.values[l.top()]);
    }
}
