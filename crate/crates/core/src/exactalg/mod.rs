//! Exact arithmetic: big rationals, graded polynomials over Q, Laurent
//! polynomials in `u, v`, parameter polynomials, and integer lattices.

mod intset;
mod laurent;
mod matrix;
mod param;
mod poly;
mod ring;

use thiserror::Error;

pub use intset::{IntegerSet, PrimePowerClasses};
pub use laurent::LaurentUV;
pub use matrix::{hnf, hnf_basis, lattice_coords, IntMatrix};
pub use param::ParamPoly;
pub use poly::{
    bott_generator, lazard_generators, Generator, Generators, GradedPoly, JsonTerm, Monomial,
};
pub use ring::{
    binomial, binomial_signed, common_denominator, factor_small, factorial, int_rat, is_integer,
    is_prime, next_prime, partition_count, rat, rat_to_string, valuation, Int, Rat, Ring,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("generator sets differ: {left:?} vs {right:?}")]
    GeneratorMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector is not in the lattice")]
    NotInLattice,
    #[error("cannot parse {0}")]
    Parse(String),
    #[error("integer {0} exceeds the trial-division factoring limit")]
    FactorLimit(String),
}
