//! Rationals, graded polynomials and integer lattices.

use fglcalc::exactalg::{hnf, lattice_coords, lazard_generators, rat, GradedPoly, Int, IntMatrix, Ring};

fn main() {
    let gens = lazard_generators(3);
    let m1 = GradedPoly::generator(&gens, 0);
    let m2 = GradedPoly::generator(&gens, 1);
    let p = m1.mul(&m1).scale(&rat(4, 1)).sub(&m2.scale(&rat(3, 1)));
    println!("p = {p}");
    println!("weights of p: {:?}", p.weights());
    println!("p(m1 = 1/2, m2 = 1/3) = {}", p.evaluate(&[rat(1, 2), rat(1, 3), rat(0, 1)]));

    let m = IntMatrix::from_rows(&[vec![4, 6, 2], vec![2, 9, 3], vec![6, 0, 12]]);
    let (h, u) = hnf(&m);
    println!("\nHermite normal form:\n{h}");
    println!("transform U with U*M = H:\n{u}");
    let v: Vec<Int> = h.left_apply(&[Int::from(1), Int::from(-2), Int::from(3)]).unwrap();
    println!("coordinates of {v:?}: {:?}", lattice_coords(&h.nonzero_rows(), &v).unwrap());
}
