use rayon::prelude::*;

use crate::exactalg::{GradedPoly, Int};
use crate::fgl::FormalGroupLaw;

use super::{HomSolution, HomSolver, Mode, Seed, SolveError};

/// Default bracket `|λ| ≤ 64` for parameter sweeps.
pub const DEFAULT_WINDOW: u64 = 64;

/// The values `λ` for which `g_1 = seed(λ)` extends to degree `max_degree`,
/// each checked by an independent fixed-value run.
pub fn param_search(
    source: &FormalGroupLaw<GradedPoly>,
    target: &FormalGroupLaw<GradedPoly>,
    max_degree: u32,
    mode: Mode<'_>,
    seed: &Seed,
    lambdas: &[i64],
) -> Result<Vec<i64>, SolveError> {
    let verdicts: Vec<Result<Option<i64>, SolveError>> = lambdas
        .par_iter()
        .map(|&lambda| {
            let mut solver = HomSolver::new(source, target, max_degree, mode, &seed.fixed(lambda))?;
            while !solver.surviving().is_empty() && solver.step()? {}
            Ok((!solver.surviving().is_empty()).then_some(lambda))
        })
        .collect();
    let mut out = Vec::new();
    for v in verdicts {
        if let Some(l) = v? {
            out.push(l);
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsolationReport {
    pub window: u64,
    /// First degree at which only `λ = 0` survives within the window.
    pub n_star: Option<u32>,
    /// Survivors within the window after each degree `2..`.
    pub survivors_by_degree: Vec<(u32, Vec<Int>)>,
    /// Fixed-value sweep over the window at `n_star` (or the last degree tried).
    pub search_survivors: Vec<i64>,
    pub solution: HomSolution,
}

/// Raises the degree until the symbolic surviving set meets `[-window, window]` in `{0}`,
/// then confirms with [`param_search`] at that degree.
pub fn isolation_degree(
    source: &FormalGroupLaw<GradedPoly>,
    target: &FormalGroupLaw<GradedPoly>,
    max_degree: u32,
    mode: Mode<'_>,
    seed: &Seed,
    window: u64,
) -> Result<IsolationReport, SolveError> {
    let mut solver = HomSolver::new(source, target, max_degree, mode, seed)?;
    let mut by_degree = Vec::new();
    let mut n_star = None;
    while solver.step()? {
        let inside = solver.surviving().within(window);
        by_degree.push((solver.degree(), inside.clone()));
        if inside == [Int::from(0)] {
            n_star = Some(solver.degree());
            break;
        }
    }
    let w = window as i64;
    let lambdas: Vec<i64> = (-w..=w).collect();
    let search_survivors = param_search(source, target, solver.degree(), mode, seed, &lambdas)?;
    Ok(IsolationReport {
        window,
        n_star,
        survivors_by_degree: by_degree,
        search_survivors,
        solution: solver.finish()?,
    })
}
