//! The universal formal group law, its axioms and its specializations.

use fglcalc::fgl::{additive, k_theory, log_coefficients, multiplicative, universal_fgl};
use fglcalc::exactalg::GradedPoly;

fn main() {
    let univ = universal_fgl(6).unwrap();
    println!("F(x, y) through degree 4:\n  {}", univ.truncate(4).series());
    for ((i, j), a) in univ.alpha_table() {
        if i <= j && i + j <= 4 {
            println!("  α_{i}{j} = {a}");
        }
    }

    let report = univ.check_axioms().unwrap();
    for check in &report.checks {
        println!("{}: {}", check.axiom, if check.passed { "ok" } else { "fails" });
    }

    for target in [additive::<GradedPoly>(6), multiplicative(6), k_theory(6)] {
        let values = log_coefficients(&target).unwrap();
        let image = univ.specialize("image", &values);
        let shown: Vec<String> = values.iter().take(3).map(|v| v.to_string()).collect();
        println!(
            "{}: m1, m2, m3 = {}; specialization matches: {}",
            target.name(),
            shown.join(", "),
            image.series() == target.series()
        );
    }
}
