use proptest::prelude::*;

use fglcalc::exactalg::{
    hnf, hnf_basis, lattice_coords, lazard_generators, rat, GradedPoly, Int, IntMatrix, Monomial,
    Rat, Ring,
};
use fglcalc::fgl::{
    additive, k_theory, lazard_basis, multiplicative, universal_fgl,
};
use fglcalc::homsolver::{param_search, solve, Mode, Seed};
use fglcalc::series::{TruncatedSeries, Var};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn small_poly() -> impl Strategy<Value = GradedPoly> {
    let gens = lazard_generators(3);
    prop::collection::vec((prop::collection::vec(0u32..3, 3), small_rat()), 0..5).prop_map(
        move |terms| {
            GradedPoly::from_terms(
                Some(gens.clone()),
                terms.into_iter().map(|(e, c)| (Monomial::new(e), c)),
            )
        },
    )
}

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-30i64..=30, c), r))
}

fn unit_series() -> impl Strategy<Value = TruncatedSeries<Rat>> {
    prop::collection::vec(small_rat(), 6).prop_map(|tail| {
        let mut coeffs = vec![rat(0, 1), rat(1, 1)];
        coeffs.extend(tail);
        TruncatedSeries::univariate(Var::X, coeffs, 7)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn graded_poly_ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&GradedPoly::one()), a.clone());
    }

    #[test]
    fn evaluation_is_a_ring_map(a in small_poly(), b in small_poly(), v in prop::collection::vec(small_rat(), 3)) {
        prop_assert_eq!(a.mul(&b).evaluate(&v), a.evaluate(&v).mul(&b.evaluate(&v)));
        prop_assert_eq!(a.add(&b).evaluate(&v), a.evaluate(&v).add(&b.evaluate(&v)));
    }

    #[test]
    fn hnf_certificate(rows in int_matrix()) {
        let m = IntMatrix::from_rows(&rows);
        let (h, u) = hnf(&m);
        prop_assert!(h.is_hnf());
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        let det = u.determinant().unwrap();
        prop_assert!(det == Int::from(1) || det == Int::from(-1));
        // same row lattice both ways
        let basis = hnf_basis(&m);
        for r in m.rows_iter() {
            prop_assert!(lattice_coords(&basis, r).is_ok());
        }
    }

    #[test]
    fn coordinates_recover_combinations(rows in int_matrix(), x in prop::collection::vec(-9i64..=9, 5)) {
        let basis = hnf_basis(&IntMatrix::from_rows(&rows));
        let x: Vec<Int> = x.into_iter().take(basis.nrows()).map(Int::from).collect();
        if x.len() == basis.nrows() {
            let v = basis.left_apply(&x).unwrap();
            prop_assert_eq!(lattice_coords(&basis, &v).unwrap(), x);
        }
    }

    #[test]
    fn reversion_inverts_composition(s in unit_series()) {
        let r = s.reversion().unwrap();
        let x = TruncatedSeries::<Rat>::var(Var::X, 7);
        prop_assert_eq!(s.substitute(&[(Var::X, &r)]).unwrap(), x.clone());
        prop_assert_eq!(r.substitute(&[(Var::X, &s)]).unwrap(), x);
    }

    #[test]
    fn substitution_respects_products(a in unit_series(), b in unit_series(), c in unit_series()) {
        let ab = a.mul(&b);
        let lhs = ab.substitute(&[(Var::X, &c)]).unwrap();
        let rhs = a.substitute(&[(Var::X, &c)]).unwrap().mul(&b.substitute(&[(Var::X, &c)]).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn universal_law_truncation_coherence() {
    let big = universal_fgl(9).unwrap();
    for k in 1..9 {
        assert_eq!(big.truncate(k).series(), universal_fgl(k).unwrap().series(), "cutoff {k}");
    }
}

#[test]
fn catalog_axioms_through_degree_twelve() {
    for n in 2..=12 {
        assert!(additive::<Rat>(n).check_axioms().unwrap().all_passed());
        assert!(multiplicative::<Rat>(n).check_axioms().unwrap().all_passed());
        assert!(k_theory(n).check_axioms().unwrap().all_passed());
    }
    for n in [2, 6, 10, 12] {
        assert!(universal_fgl(n).unwrap().check_axioms().unwrap().all_passed(), "universal {n}");
    }
}

#[test]
fn homomorphism_degree_coherence() {
    let lattice = lazard_basis(6).unwrap();
    let univ = universal_fgl(6).unwrap();
    let mult = multiplicative::<GradedPoly>(6);
    let seed = Seed::lazard(&lattice);
    let full = solve(&univ, &mult, 6, Mode::Graded(&lattice), &seed).unwrap();
    assert!(full.residual_zero);
    for n in 2..6 {
        let part = solve(&univ, &mult, n, Mode::Graded(&lattice), &seed).unwrap();
        assert_eq!(part.coefficients[..], full.coefficients[..n as usize]);
        assert_eq!(part.surviving, full.surviving_by_degree[n as usize - 1]);
        assert!(part.residual_zero);
    }
}

#[test]
fn sweep_agrees_with_symbolic_set() {
    let lattice = lazard_basis(6).unwrap();
    let univ = universal_fgl(6).unwrap();
    let mult = multiplicative::<GradedPoly>(6);
    let lambdas: Vec<i64> = (-40..=40).collect();
    for (mode, seed) in [
        (Mode::Graded(&lattice), Seed::lazard(&lattice)),
        (Mode::BoundedUngraded { lattice: &lattice, max_weight: 6 }, Seed::scalar()),
    ] {
        let sol = solve(&univ, &mult, 6, mode, &seed).unwrap();
        let sym: Vec<i64> = lambdas.iter().copied().filter(|l| sol.surviving.contains(&(*l).into())).collect();
        let swept = param_search(&univ, &mult, 6, mode, &seed, &lambdas).unwrap();
        assert_eq!(sym, swept, "{}", mode.name());
    }
}

#[test]
fn ungraded_weight_zero_part_is_exponential() {
    // with g_1 = λ the m-free part of g is e^{λx} - 1
    let lattice = lazard_basis(5).unwrap();
    let univ = universal_fgl(5).unwrap();
    let mult = multiplicative::<GradedPoly>(5);
    let mode = Mode::BoundedUngraded { lattice: &lattice, max_weight: 5 };
    let sol = solve(&univ, &mult, 5, mode, &Seed::scalar()).unwrap();
    for n in 1..=5u32 {
        let g = sol.coefficient(n);
        let weight_zero: Vec<Rat> = g.coeffs().iter().map(|c| c.constant_term()).collect();
        let mut expect = vec![rat(0, 1); n as usize + 1];
        expect[n as usize] = Rat::new(1.into(), fglcalc::exactalg::factorial(n));
        assert_eq!(weight_zero, expect, "g_{n}");
    }
}
