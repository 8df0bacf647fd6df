//! The two sides of `(id ⊗ g)(ψ(t²Y₂)) = ψ(g(t²Y₂))` for a ring map
//! `g: K_*(CP^∞) → K_*(MU)` with `g(tY₁) = λt`, as Laurent polynomials in `u, v`.

use crate::exactalg::{
    bott_generator, rat, GradedPoly, IntegerSet, LaurentUV, ParamPoly, Rat, Ring,
};
use crate::pontryagin::k_theory_closed_form;

use super::SolveError;

#[derive(Clone, Debug, PartialEq)]
pub struct CoactionInstance {
    pub lhs: ParamPoly<LaurentUV>,
    pub rhs: ParamPoly<LaurentUV>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoactionCheck {
    pub lambda: i64,
    pub lhs: LaurentUV,
    pub rhs: LaurentUV,
    pub equal: bool,
    /// `lhs - rhs`.
    pub difference: LaurentUV,
}

impl CoactionInstance {
    pub fn new() -> Self {
        let t = GradedPoly::generator(&bott_generator(), 0);
        // g(tY₁) = λt
        let g1 = ParamPoly::line(GradedPoly::zero(), t.clone());
        // tY₁ • tY₁ = t²(c₁Y₁ + c₂Y₂) and g is multiplicative, so
        // c₂ g(t²Y₂) = g(tY₁)² - c₁ t g(tY₁)
        let prod = k_theory_closed_form(1, 1);
        let c1 = Rat::from_integer(prod.coeffs[&1].clone());
        let c2 = Rat::from_integer(prod.coeffs[&2].clone());
        let g2 = g1
            .mul(&g1)
            .sub(&g1.mul(&ParamPoly::constant(t.scale(&c1))))
            .scale(&(Rat::from_integer(1.into()) / c2));

        let right = |p: &ParamPoly<GradedPoly>| p.map(|c| c.evaluate(&[LaurentUV::v()]));
        let left = |p: &ParamPoly<GradedPoly>| p.map(|c| c.evaluate(&[LaurentUV::u()]));

        // coaction coefficients (P^j)_{2i} for i + j = 2: (P²)₀ = 1, (P¹)₂ = p₁ = (v - u)/2, (P⁰)₄ = 0
        let p1 = LaurentUV::v().sub(&LaurentUV::u()).scale(&rat(1, 2));
        let lhs = right(&g2).add(&right(&g1).mul(&ParamPoly::constant(p1)));
        let rhs = left(&g2);
        CoactionInstance { lhs, rhs }
    }

    pub fn difference(&self) -> ParamPoly<LaurentUV> {
        self.lhs.sub(&self.rhs)
    }
}

impl Default for CoactionInstance {
    fn default() -> Self {
        Self::new()
    }
}

pub fn coaction_check(lambda: i64) -> CoactionCheck {
    let inst = CoactionInstance::new();
    let l = Rat::from_integer(lambda.into());
    let lhs = inst.lhs.eval(&l);
    let rhs = inst.rhs.eval(&l);
    let difference = lhs.sub(&rhs);
    CoactionCheck {
        lambda,
        equal: difference.is_zero(),
        lhs,
        rhs,
        difference,
    }
}

/// All integers `λ` for which both sides agree, by comparing each `u^a v^b` coefficient.
pub fn coaction_solve() -> Result<IntegerSet, SolveError> {
    let diff = CoactionInstance::new().difference();
    let mut monomials: Vec<(i64, i64)> = diff
        .coeffs()
        .iter()
        .flat_map(|c| c.terms().map(|(k, _)| *k).collect::<Vec<_>>())
        .collect();
    monomials.sort();
    monomials.dedup();
    let mut set = IntegerSet::All;
    for (a, b) in monomials {
        let poly: Vec<Rat> = diff.coeffs().iter().map(|c| c.coeff(a, b)).collect();
        set = set.intersect(&IntegerSet::zeros_of(&poly)?);
    }
    Ok(set)
}
