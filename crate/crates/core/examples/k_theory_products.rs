//! Closed-form products for the law x + y + t*xy, checked against the table.

use fglcalc::fgl::k_theory;
use fglcalc::pontryagin::{format_beta, k_theory_closed_form, structure_constants, PontryaginTable};

fn main() {
    let table = structure_constants(&k_theory(8), 8).unwrap();
    for (i, j) in [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3)] {
        let closed = k_theory_closed_form(i, j);
        let product = table
            .product(&PontryaginTable::basis_vector(i), &PontryaginTable::basis_vector(j))
            .unwrap();
        let agrees = product == closed.to_beta();
        println!("tY{i} • tY{j} = {closed}    [{}]", if agrees { "matches table" } else { "MISMATCH" });
        println!("    in the β basis: {}", format_beta(&product));
    }
}
