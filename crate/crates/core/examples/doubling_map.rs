//! Endomorphisms of a law dualize to ring maps on the homology basis.

use fglcalc::exactalg::{rat, Rat};
use fglcalc::fgl::{additive, multiplicative};
use fglcalc::pontryagin::{dual_endomorphism, structure_constants};
use fglcalc::series::{TruncatedSeries, Var};

fn main() {
    let m = 6;
    let doubling = TruncatedSeries::univariate(Var::X, vec![rat(0, 1), rat(2, 1)], m);
    let dual = dual_endomorphism(&doubling, m).unwrap();
    let additive_table = structure_constants(&additive::<Rat>(m), m).unwrap();
    println!("x -> 2x on the additive law:");
    for row in dual.rows() {
        let row: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        println!("  [{}]", row.join(", "));
    }
    println!("ring map: {}", dual.product_violation(&additive_table).is_none());

    // [2](x) = 2x + x² is the doubling endomorphism of x + y + xy
    let square = TruncatedSeries::univariate(Var::X, vec![rat(0, 1), rat(2, 1), rat(1, 1)], m);
    let dual = dual_endomorphism(&square, m).unwrap();
    let mult_table = structure_constants(&multiplicative::<Rat>(m), m).unwrap();
    println!("\nx -> 2x + x² on x + y + xy: lower triangular {}, ring map {}",
        dual.is_lower_triangular(),
        dual.product_violation(&mult_table).is_none());
    println!("same map on the additive law is a ring map: {}", dual.product_violation(&additive_table).is_none());
}
