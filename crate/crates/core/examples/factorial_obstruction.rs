//! Why nonzero λ dies: e^{λx} - 1 needs λ^n / n! integral for every n.

use fglcalc::exactalg::GradedPoly;
use fglcalc::fgl::{lazard_basis, multiplicative, universal_fgl};
use fglcalc::homsolver::{factorial_divisibility, isolation_degree, prime_witness, Mode, Seed, DEFAULT_WINDOW};

fn main() {
    for lambda in [1, 2, 6, 12, 30, 64] {
        let n = factorial_divisibility(lambda, 40).unwrap();
        let p = prime_witness(lambda).unwrap();
        println!("λ = {lambda}: n! ∤ λ^n first at n = {n}; prime witness p = {p}");
    }

    // the same obstruction in the bounded ungraded setting, g_1 = λ
    let max = 9;
    let lattice = lazard_basis(max).unwrap();
    let univ = universal_fgl(max).unwrap();
    let mult = multiplicative::<GradedPoly>(max);
    let mode = Mode::BoundedUngraded { lattice: &lattice, max_weight: max };
    let report = isolation_degree(&univ, &mult, max, mode, &Seed::scalar(), DEFAULT_WINDOW).unwrap();
    println!("\nbounded ungraded: isolation degree {:?}, sweep {:?}", report.n_star, report.search_survivors);
}
