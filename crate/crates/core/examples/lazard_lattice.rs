//! The Lazard ring in low degrees as integer lattices in Q[m1, m2, ...].

use fglcalc::exactalg::{partition_count, rat, GradedPoly, Ring};
use fglcalc::fgl::lazard_basis;

fn main() {
    let lattice = lazard_basis(6).unwrap();
    for k in 1..=6 {
        let basis = lattice.basis_polys(k).unwrap();
        println!("degree {}: rank {} (partitions of {k}: {})", 2 * k, basis.len(), partition_count(k));
        for b in basis {
            println!("    {b}");
        }
    }

    let gens = lattice.generators().clone();
    let m1 = GradedPoly::generator(&gens, 0);
    println!("\nm1 in the lattice: {}", lattice.contains(1, &m1).unwrap());
    let two_m1 = m1.scale(&rat(2, 1));
    println!("2*m1 coordinates: {:?}", lattice.membership(1, &two_m1).unwrap());
}
