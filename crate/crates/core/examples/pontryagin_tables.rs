//! Structure constants of the dual product for several laws.

use fglcalc::exactalg::{GradedPoly, Rat};
use fglcalc::fgl::{additive, multiplicative, universal_fgl};
use fglcalc::pontryagin::{composition_sum, structure_constants};

fn main() {
    let table = structure_constants(&additive::<Rat>(6), 6).unwrap();
    println!("additive law, β_i β_j = binom(i+j, i) β_(i+j):");
    for i in 1..=3 {
        for j in i..=3 {
            println!("  c_{i}{j}^{} = {}", i + j, table.get(i, j, i + j));
        }
    }

    let mult = structure_constants(&multiplicative::<Rat>(5), 5).unwrap();
    println!("\nmultiplicative law as CSV:\n{}", mult.to_csv());

    let univ = universal_fgl(5).unwrap();
    let table = structure_constants(&univ, 5).unwrap();
    println!("universal law:");
    for (i, j, k) in [(1, 1, 1), (1, 2, 1), (1, 2, 2), (2, 2, 3)] {
        let c: GradedPoly = table.get(i, j, k);
        assert_eq!(c, composition_sum(&univ, i, j, k));
        println!("  c_{i}{j}^{k} = {c}");
    }
    println!(
        "commutative: {}, associative: {}",
        table.symmetry_violation().is_none(),
        table.associativity_violation().is_none()
    );
}
