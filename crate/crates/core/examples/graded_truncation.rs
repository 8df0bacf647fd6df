//! Degree-by-degree search for homomorphisms from the universal law into x + y + xy
//! with g_1 = λ·(2m1), tracking which λ survive.

use fglcalc::exactalg::GradedPoly;
use fglcalc::fgl::{lazard_basis, multiplicative, universal_fgl};
use fglcalc::homsolver::{isolation_degree, Mode, Seed, DEFAULT_WINDOW};

fn main() {
    let max = 10;
    let lattice = lazard_basis(max).unwrap();
    let univ = universal_fgl(max).unwrap();
    let mult = multiplicative::<GradedPoly>(max);
    let report = isolation_degree(&univ, &mult, max, Mode::Graded(&lattice), &Seed::lazard(&lattice), DEFAULT_WINDOW)
        .unwrap();
    for (d, inside) in &report.survivors_by_degree {
        println!("degree {d}: {} survivors with |λ| <= {}", inside.len(), report.window);
    }
    match report.n_star {
        Some(n) => println!("only λ = 0 remains from degree {n}; sweep: {:?}", report.search_survivors),
        None => println!("no isolation up to degree {max}"),
    }
    println!("\n{}", report.solution);
}
