//! The coaction identity in low degree as Laurent polynomials in u, v.

use fglcalc::homsolver::{coaction_check, coaction_solve, CoactionInstance};

fn main() {
    let inst = CoactionInstance::new();
    println!("LHS(λ) = {}", inst.lhs);
    println!("RHS(λ) = {}", inst.rhs);
    for lambda in -2..=2 {
        let c = coaction_check(lambda);
        println!("λ = {lambda}: equal {}, difference {}", c.equal, c.difference);
    }
    println!("surviving λ: {}", coaction_solve().unwrap());
}
