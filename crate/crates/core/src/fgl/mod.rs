//! Formal group laws: axiom checks, a small catalog, the universal law built
//! from a logarithm, and the Lazard ring as per-degree integer lattices.

mod axioms;
mod cache;
mod catalog;
mod lazard;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactalg::{AlgebraError, GradedPoly, Rat, Ring};
use crate::series::{SeriesError, TruncatedSeries, Var};

pub use axioms::{Axiom, AxiomCheck, AxiomReport, Offending};
pub use cache::{load_cache, load_or_build, save_cache, CacheFile, CONVENTION};
pub use catalog::{additive, by_name, k_theory, multiplicative, universal_fgl, LAW_NAMES};
pub use lazard::{alpha_monomials, lazard_basis, weight_monomials, LazardDegree, LazardLattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FglError {
    #[error("unknown formal group law {0:?}")]
    UnknownLaw(String),
    #[error("cutoff {have} is too small, need at least {needed}")]
    CutoffTooSmall { needed: u32, have: u32 },
    #[error("degree bound must be at least 1")]
    InvalidDegree,
    #[error("polynomial is not homogeneous of weight {expected}")]
    Inhomogeneous { expected: u32 },
    #[error("degree {k} exceeds the lattice cutoff {cutoff}")]
    DegreeOutOfRange { k: u32, cutoff: u32 },
    #[error("polynomial is not in the lattice")]
    NotInLattice,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("cache: {0}")]
    Cache(String),
}

/// A two-variable series `F(x, y) = Σ α_ij x^i y^j` known through total degree `cutoff`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalGroupLaw<R> {
    name: String,
    ring: String,
    series: TruncatedSeries<R>,
}

impl<R: Ring> FormalGroupLaw<R> {
    /// Wraps a series without checking the axioms; see [`FormalGroupLaw::check_axioms`].
    pub fn new(name: impl Into<String>, ring: impl Into<String>, series: TruncatedSeries<R>) -> Self {
        FormalGroupLaw {
            name: name.into(),
            ring: ring.into(),
            series,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Human-readable description of the coefficient ring.
    pub fn ring(&self) -> &str {
        &self.ring
    }

    pub fn cutoff(&self) -> u32 {
        self.series.cutoff()
    }

    pub fn series(&self) -> &TruncatedSeries<R> {
        &self.series
    }

    /// `α_ij`, the coefficient of `x^i y^j`.
    pub fn alpha(&self, i: u32, j: u32) -> R {
        self.series.coeff_xy(i, j)
    }

    /// All nonzero `α_ij`.
    pub fn alpha_table(&self) -> BTreeMap<(u32, u32), R> {
        self.series
            .terms()
            .map(|(e, c)| ((e[0], e[1]), c.clone()))
            .collect()
    }

    pub fn truncate(&self, n: u32) -> Self {
        FormalGroupLaw {
            name: self.name.clone(),
            ring: self.ring.clone(),
            series: self.series.truncate(n),
        }
    }

    pub fn map_coeffs<S: Ring>(&self, ring: impl Into<String>, f: impl Fn(&R) -> S) -> FormalGroupLaw<S> {
        FormalGroupLaw {
            name: self.name.clone(),
            ring: ring.into(),
            series: self.series.map_coeffs(f),
        }
    }

    /// `F(a, b)` for one-variable series `a, b` without constant terms.
    pub fn apply(
        &self,
        a: &TruncatedSeries<R>,
        b: &TruncatedSeries<R>,
    ) -> Result<TruncatedSeries<R>, SeriesError> {
        self.series.substitute(&[(Var::X, a), (Var::Y, b)])
    }

    /// The logarithm `l(x)` with `l(F(x,y)) = l(x) + l(y)`, via `l' = 1 / ∂F/∂y(x, 0)`.
    ///
    /// Requires rational coefficients to be available (a Q-algebra); the
    /// result has cutoff equal to the law's cutoff.
    pub fn logarithm(&self) -> Result<TruncatedSeries<R>, SeriesError> {
        let n = self.cutoff();
        let zero = TruncatedSeries::zero(n);
        let invariant = self
            .series
            .derivative(Var::Y)
            .substitute(&[(Var::Y, &zero)])?;
        let invariant = TruncatedSeries::from_terms(n, invariant.terms().map(|(e, c)| (*e, c.clone())));
        let dlog = invariant.inverse()?.univariate_coeffs(Var::X)?;
        let mut coeffs = vec![R::zero(); n as usize + 1];
        for (k, c) in dlog.iter().enumerate().take(n as usize) {
            coeffs[k + 1] = c.scale(&Rat::new(1.into(), (k as i64 + 1).into()));
        }
        Ok(TruncatedSeries::univariate(Var::X, coeffs, n))
    }
}

impl FormalGroupLaw<GradedPoly> {
    /// Push the law along the ring map sending generator `i` to `values[i]`.
    pub fn specialize<S: Ring>(&self, ring: impl Into<String>, values: &[S]) -> FormalGroupLaw<S> {
        self.map_coeffs(ring, |c| c.evaluate(values))
    }
}

/// Values `m_1, m_2, ...` such that the universal law specializes to `law`:
/// the coefficients of the logarithm of `law`.
pub fn log_coefficients<R: Ring>(law: &FormalGroupLaw<R>) -> Result<Vec<R>, SeriesError> {
    let log = law.logarithm()?.univariate_coeffs(Var::X)?;
    Ok(log.into_iter().skip(2).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{bott_generator, rat};

    #[test]
    fn logarithm_of_multiplicative_law() {
        let f = multiplicative::<Rat>(5);
        let l = f.logarithm().unwrap();
        // log(1 + x) = x - x²/2 + x³/3 - ...
        let expect: Vec<Rat> = vec![rat(0, 1), rat(1, 1), rat(-1, 2), rat(1, 3), rat(-1, 4), rat(1, 5)];
        assert_eq!(l.univariate_coeffs(Var::X).unwrap(), expect);
    }

    #[test]
    fn universal_law_specializes_to_catalog_laws() {
        let univ = universal_fgl(7).unwrap();
        let t = GradedPoly::generator(&bott_generator(), 0);
        for target in [additive::<GradedPoly>(7), multiplicative(7), k_theory(7)] {
            let values = log_coefficients(&target).unwrap();
            let image = univ.specialize("image", &values);
            assert_eq!(image.series(), target.series(), "{}", target.name());
        }
        // m_i ↦ (-t)^i / (i+1) for the Bott-parameter law
        let values = log_coefficients(&k_theory(4)).unwrap();
        assert_eq!(values[0], t.scale(&rat(-1, 2)));
        assert_eq!(values[1], t.mul(&t).scale(&rat(1, 3)));
    }
}
