//! Truncated power series: products, composition and reversion.

use fglcalc::exactalg::{rat, Rat};
use fglcalc::series::{TruncatedSeries, Var};

fn main() {
    let n = 8;
    // log(1 + x)
    let coeffs: Vec<Rat> = (0..=n as i64)
        .map(|k| if k == 0 { rat(0, 1) } else { rat(if k % 2 == 1 { 1 } else { -1 }, k) })
        .collect();
    let log = TruncatedSeries::univariate(Var::X, coeffs, n);
    let exp_minus_one = log.reversion().unwrap();
    println!("log(1+x) = {log}");
    println!("reversion = {exp_minus_one}");
    let back = log.substitute(&[(Var::X, &exp_minus_one)]).unwrap();
    println!("composition = {back}");

    let one_plus_x = TruncatedSeries::<Rat>::one(n).add(&TruncatedSeries::var(Var::X, n));
    println!("1/(1+x) = {}", one_plus_x.inverse().unwrap());
    println!("(1+x)^5 = {}", one_plus_x.pow(5));
}
