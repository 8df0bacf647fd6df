use std::fmt;

use serde::Serialize;

use crate::exactalg::Ring;
use crate::series::{render_monomial, Exps, TruncatedSeries, Var};

use super::{FglError, FormalGroupLaw};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axiom {
    Unitality,
    Commutativity,
    Associativity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Unitality => "unitality",
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
        })
    }
}

/// The lowest nonvanishing term of `lhs - rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Offending {
    pub monomial: String,
    pub exponents: Vec<u32>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    pub offending: Option<Offending>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub law: String,
    pub cutoff: u32,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks
            .iter()
            .find(|c| c.axiom == axiom)
            .expect("every axiom is checked")
    }
}

fn first_difference<R: Ring>(lhs: &TruncatedSeries<R>, rhs: &TruncatedSeries<R>) -> Option<Offending> {
    let diff = lhs.sub(rhs);
    diff.sorted_terms().first().map(|(e, c)| offending(e, *c))
}

fn offending<R: Ring>(e: &Exps, c: &R) -> Offending {
    let monomial = render_monomial(e);
    Offending {
        monomial: if monomial.is_empty() { "1".into() } else { monomial },
        exponents: e.to_vec(),
        residual: c.to_string(),
    }
}

fn verdict<R: Ring>(axiom: Axiom, lhs: &TruncatedSeries<R>, rhs: &TruncatedSeries<R>) -> AxiomCheck {
    let offending = first_difference(lhs, rhs);
    AxiomCheck {
        axiom,
        passed: offending.is_none(),
        offending,
    }
}

impl<R: Ring> FormalGroupLaw<R> {
    /// `F(x,0) = x`, `F(0,y) = y`, `F(x,y) = F(y,x)` and
    /// `F(x,F(y,z)) = F(F(x,y),z)` modulo the cutoff.
    pub fn check_axioms(&self) -> Result<AxiomReport, FglError> {
        let n = self.cutoff();
        if n < 2 {
            return Err(FglError::CutoffTooSmall { needed: 2, have: n });
        }
        let f = self.series();
        let zero = TruncatedSeries::zero(n);
        let x = TruncatedSeries::var(Var::X, n);
        let y = TruncatedSeries::var(Var::Y, n);
        let z = TruncatedSeries::var(Var::Z, n);

        let left = f.substitute(&[(Var::Y, &zero)])?;
        let right = f.substitute(&[(Var::X, &zero)])?;
        let mut unit = verdict(Axiom::Unitality, &left, &x);
        if unit.passed {
            unit = verdict(Axiom::Unitality, &right, &y);
        }

        let swapped = f.substitute(&[(Var::X, &y), (Var::Y, &x)])?;
        let comm = verdict(Axiom::Commutativity, f, &swapped);

        let f_yz = f.substitute(&[(Var::X, &y), (Var::Y, &z)])?;
        let outer_right = f.substitute(&[(Var::Y, &f_yz)])?;
        let outer_left = f.substitute(&[(Var::X, f), (Var::Y, &z)])?;
        let assoc = verdict(Axiom::Associativity, &outer_right, &outer_left);

        Ok(AxiomReport {
            law: self.name().to_string(),
            cutoff: n,
            checks: vec![unit, comm, assoc],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rat;
    use crate::fgl::{k_theory, multiplicative, universal_fgl};

    #[test]
    fn catalog_laws_pass() {
        assert!(multiplicative::<Rat>(8).check_axioms().unwrap().all_passed());
        assert!(k_theory(8).check_axioms().unwrap().all_passed());
        assert!(universal_fgl(6).unwrap().check_axioms().unwrap().all_passed());
    }

    #[test]
    fn broken_unit_is_located() {
        let s = TruncatedSeries::<Rat>::from_terms(
            5,
            [([1, 0, 0], Rat::one()), ([0, 1, 0], Rat::one()), ([2, 0, 0], Rat::one())],
        );
        let report = FormalGroupLaw::new("bad", "Z", s).check_axioms().unwrap();
        let unit = report.check(Axiom::Unitality);
        assert!(!unit.passed);
        assert_eq!(unit.offending.as_ref().unwrap().monomial, "x^2");
        assert!(!report.check(Axiom::Commutativity).passed);
    }

    #[test]
    fn tiny_cutoff_rejected() {
        let err = multiplicative::<Rat>(1).check_axioms().unwrap_err();
        assert_eq!(err, FglError::CutoffTooSmall { needed: 2, have: 1 });
    }
}
