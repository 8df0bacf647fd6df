//! Powers of β1 over the Lazard ring; the leading coefficient of β1^n is n!.

use fglcalc::fgl::universal_fgl;
use fglcalc::pontryagin::{beta1_power, format_beta, structure_constants};

fn main() {
    let n = 5;
    let table = structure_constants(&universal_fgl(n).unwrap(), n).unwrap();
    for k in 1..=n {
        let p = beta1_power(&table, k).unwrap();
        println!("β1^{k} = {}", format_beta(&p));
        println!("    leading coefficient {}", p[k as usize]);
    }
}
