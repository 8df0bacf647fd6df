//! Exact formal group law calculus.
//!
//! The crate builds formal group laws as truncated power series with exact
//! coefficients, realizes the Lazard ring as per-degree integer lattices
//! inside `Q[m_1, m_2, ...]`, computes the homology product structure
//! constants dual to a formal group law, and runs degree-by-degree solvers
//! and obstruction checks for homomorphisms into the multiplicative law.

pub mod cli;
pub mod exactalg;
pub mod fgl;
pub mod homsolver;
pub mod pontryagin;
pub mod series;
