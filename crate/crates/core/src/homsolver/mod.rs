//! Degree-by-degree solver for homomorphisms `g` with `g(F(x,y)) = G(g(x), g(y))`,
//! run symbolically in one integer parameter `λ` of the linear coefficient,
//! plus the divisibility and coaction obstructions for maps out of `CP^∞`.

mod coaction;
mod factorial;
mod search;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;
use thiserror::Error;

use crate::exactalg::{
    binomial, int_rat, rat_to_string, AlgebraError, GradedPoly, IntegerSet, Monomial, ParamPoly,
    Rat, Ring,
};
use crate::fgl::{FglError, FormalGroupLaw, LazardLattice};
use crate::pontryagin::{structure_constants, PontryaginError, PontryaginTable};
use crate::series::{SeriesError, TruncatedSeries, Var};

pub use coaction::{coaction_check, coaction_solve, CoactionCheck, CoactionInstance};
pub use factorial::{factorial_divisibility, prime_witness, witness_holds};
pub use search::{isolation_degree, param_search, IsolationReport, DEFAULT_WINDOW};

/// Coefficients of the solver: polynomials in `λ` over `Q[m_1, m_2, ...]`.
pub type Coeff = ParamPoly<GradedPoly>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("law cutoff {have} is too small for degree {needed}")]
    CutoffTooSmall { needed: u32, have: u32 },
    #[error("lattice only reaches degree {have}, need {needed}")]
    LatticeTooSmall { needed: u32, have: u32 },
    #[error("inconsistent at degree {degree}: coefficient of x^{i} y^{j} leaves residual {residual}")]
    Inconsistent {
        degree: u32,
        i: u32,
        j: u32,
        residual: String,
    },
    #[error(transparent)]
    Lattice(#[from] FglError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Table(#[from] PontryaginError),
}

/// Where the coefficients `g_n` are required to live.
#[derive(Clone, Copy, Debug)]
pub enum Mode<'a> {
    /// Any rational values.
    Rational,
    /// `g_n ∈ L_{2n}`.
    Graded(&'a LazardLattice),
    /// Every weight-`2w` component of `g_n` lies in `L_{2w}` for `w ≤ max_weight`
    /// (weight 0 meaning an integer); heavier components are not checked.
    BoundedUngraded {
        lattice: &'a LazardLattice,
        max_weight: u32,
    },
}

impl Mode<'_> {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Rational => "rational",
            Mode::Graded(_) => "graded",
            Mode::BoundedUngraded { .. } => "bounded-ungraded",
        }
    }
}

/// The linear coefficient `g_1 = base + λ·direction`.
#[derive(Clone, Debug, PartialEq)]
pub struct Seed {
    pub base: GradedPoly,
    pub direction: GradedPoly,
}

impl Seed {
    pub fn line(direction: GradedPoly) -> Self {
        Seed {
            base: GradedPoly::zero(),
            direction,
        }
    }

    /// `g_1 = λ`.
    pub fn scalar() -> Self {
        Seed::line(GradedPoly::one())
    }

    /// `g_1 = λ·b` with `b` the generator of `L_2`.
    pub fn lazard(lattice: &LazardLattice) -> Self {
        Seed::line(lattice.degree_two_generator())
    }

    /// `λ` fixed to a value: `g_1 = value·direction`.
    pub fn fixed(&self, value: i64) -> Self {
        Seed {
            base: self.base.add(&self.direction.scale(&Rat::from_integer(value.into()))),
            direction: GradedPoly::zero(),
        }
    }

    fn coeff(&self) -> Coeff {
        ParamPoly::line(self.base.clone(), self.direction.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    /// A coefficient equation at `x^i y^j` beyond the one that defines `g_n`.
    Consistency { i: u32, j: u32, monomial: String },
    /// Integrality of one lattice coordinate of the weight-`weight` part of `g_n`.
    Integrality { weight: u32, coordinate: usize },
}

/// A condition on `λ`: `polynomial(λ)` must vanish (consistency) or be an integer (integrality).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub degree: u32,
    pub kind: ConstraintKind,
    /// `polynomial[p]` is the coefficient of `λ^p`.
    pub polynomial: Vec<Rat>,
    pub set: IntegerSet,
}

impl Constraint {
    pub fn to_json(&self) -> serde_json::Value {
        let poly: Vec<String> = self.polynomial.iter().map(rat_to_string).collect();
        let (kind, detail) = match &self.kind {
            ConstraintKind::Consistency { i, j, monomial } => (
                "consistency",
                json!({ "i": i, "j": j, "monomial": monomial }),
            ),
            ConstraintKind::Integrality { weight, coordinate } => (
                "integrality",
                json!({ "weight": weight, "coordinate": coordinate }),
            ),
        };
        json!({
            "degree": self.degree,
            "kind": kind,
            "detail": detail,
            "polynomial": poly,
            "set": self.set.to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomSolution {
    pub mode: String,
    pub degree: u32,
    /// `coefficients[n - 1] = g_n`.
    pub coefficients: Vec<Coeff>,
    /// Constraints that cut the parameter set; those holding for every `λ` are counted only.
    pub constraints: Vec<Constraint>,
    pub trivial_constraints: usize,
    /// Admissible `λ` after each degree: `surviving_by_degree[n - 1]`.
    pub surviving_by_degree: Vec<IntegerSet>,
    pub surviving: IntegerSet,
    /// `g(F(x,y)) - G(g(x),g(y))` vanished identically up to the cutoff.
    pub residual_zero: bool,
}

impl HomSolution {
    pub fn coefficient(&self, n: u32) -> &Coeff {
        &self.coefficients[n as usize - 1]
    }

    /// `g` at a concrete parameter value.
    pub fn series_at(&self, lambda: i64) -> TruncatedSeries<GradedPoly> {
        let mut coeffs = vec![GradedPoly::zero()];
        coeffs.extend(
            self.coefficients
                .iter()
                .map(|c| c.eval(&Rat::from_integer(lambda.into()))),
        );
        TruncatedSeries::univariate(Var::X, coeffs, self.degree)
    }

    pub fn to_json(&self, window: u64) -> serde_json::Value {
        let coefficients: Vec<_> = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| json!({ "degree": k + 1, "value": c.to_string() }))
            .collect();
        let by_degree: Vec<_> = self
            .surviving_by_degree
            .iter()
            .enumerate()
            .map(|(k, s)| json!({ "degree": k + 1, "set": s.to_string() }))
            .collect();
        let surviving: Vec<String> = self.surviving.within(window).iter().map(|n| n.to_string()).collect();
        json!({
            "mode": self.mode,
            "N": self.degree,
            "coefficients": coefficients,
            "constraints": self.constraints.iter().map(Constraint::to_json).collect::<Vec<_>>(),
            "trivial_constraints": self.trivial_constraints,
            "surviving": surviving,
            "surviving_window": window,
            "surviving_set": self.surviving.to_string(),
            "surviving_by_degree": by_degree,
            "residual_zero": self.residual_zero,
        })
    }
}

impl fmt::Display for HomSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coefficients.iter().enumerate() {
            writeln!(f, "g_{} = {}", k + 1, c)?;
        }
        write!(f, "surviving λ: {}", self.surviving)
    }
}

fn lift(c: &GradedPoly) -> Coeff {
    ParamPoly::constant(c.clone())
}

/// Coefficient-wise view of a `Coeff`: for each monomial in the `m`'s, its polynomial in `λ`.
fn lambda_polys(c: &Coeff) -> BTreeMap<Monomial, Vec<Rat>> {
    let len = c.coeffs().len();
    let mut out: BTreeMap<Monomial, Vec<Rat>> = BTreeMap::new();
    for (p, poly) in c.coeffs().iter().enumerate() {
        for (m, q) in poly.terms() {
            out.entry(m.clone())
                .or_insert_with(|| vec![<Rat as Ring>::zero(); len])[p] = q.clone();
        }
    }
    out
}

/// Stepwise solver; [`solve`] runs it to a fixed degree.
pub struct HomSolver<'a> {
    source: &'a FormalGroupLaw<GradedPoly>,
    target: &'a FormalGroupLaw<GradedPoly>,
    table: PontryaginTable<GradedPoly>,
    mode: Mode<'a>,
    max_degree: u32,
    coefficients: Vec<Coeff>,
    constraints: Vec<Constraint>,
    trivial: usize,
    by_degree: Vec<IntegerSet>,
    surviving: IntegerSet,
}

impl<'a> HomSolver<'a> {
    pub fn new(
        source: &'a FormalGroupLaw<GradedPoly>,
        target: &'a FormalGroupLaw<GradedPoly>,
        max_degree: u32,
        mode: Mode<'a>,
        seed: &Seed,
    ) -> Result<Self, SolveError> {
        let needed = max_degree;
        for law in [source, target] {
            if law.cutoff() < needed {
                return Err(SolveError::CutoffTooSmall {
                    needed,
                    have: law.cutoff(),
                });
            }
        }
        let lattice_reach = match mode {
            Mode::Rational => None,
            Mode::Graded(l) => Some((l, max_degree)),
            Mode::BoundedUngraded { lattice, max_weight } => Some((lattice, max_weight)),
        };
        if let Some((l, reach)) = lattice_reach {
            if l.max_degree() < reach {
                return Err(SolveError::LatticeTooSmall {
                    needed: reach,
                    have: l.max_degree(),
                });
            }
        }
        let table = structure_constants(source, max_degree)?;
        let mut solver = HomSolver {
            source,
            target,
            table,
            mode,
            max_degree,
            coefficients: Vec::new(),
            constraints: Vec::new(),
            trivial: 0,
            by_degree: Vec::new(),
            surviving: IntegerSet::All,
        };
        if max_degree >= 1 {
            solver.accept(1, seed.coeff())?;
        }
        Ok(solver)
    }

    /// Highest degree solved so far.
    pub fn degree(&self) -> u32 {
        self.coefficients.len() as u32
    }

    pub fn surviving(&self) -> &IntegerSet {
        &self.surviving
    }

    fn g_series(&self, cutoff: u32, var: Var) -> TruncatedSeries<Coeff> {
        let mut coeffs = vec![Coeff::zero()];
        coeffs.extend(self.coefficients.iter().cloned());
        TruncatedSeries::univariate(var, coeffs, cutoff)
    }

    /// Solves for `g_{n}` with `n = degree() + 1`; `false` once the maximum degree is reached.
    pub fn step(&mut self) -> Result<bool, SolveError> {
        let n = self.degree() + 1;
        if n > self.max_degree || n < 2 {
            return Ok(false);
        }
        let cutoff = n;
        let target = self.target.series().truncate(cutoff).map_coeffs(lift);
        let gx = self.g_series(cutoff, Var::X);
        let gy = self.g_series(cutoff, Var::Y);
        let rhs = target.substitute(&[(Var::X, &gx), (Var::Y, &gy)])?;

        let known = |i: u32, j: u32| {
            let mut acc = Coeff::zero();
            for (k, gk) in self.coefficients.iter().enumerate() {
                let c = self.table.get(i, j, k as u32 + 1);
                if !c.is_zero() {
                    acc = acc.add(&gk.mul(&lift(&c)));
                }
            }
            acc
        };
        // the x^1 y^(n-1) equation has coefficient n on g_n
        let defining = rhs.coeff_xy(1, n - 1).sub(&known(1, n - 1));
        let gn = defining.scale(&Rat::new(1.into(), n.into()));

        for i in 2..n {
            let j = n - i;
            let lhs = known(i, j).add(&gn.scale(&int_rat(binomial(n, i))));
            let residual = lhs.sub(&rhs.coeff_xy(i, j));
            if residual.is_zero() {
                self.trivial += 1;
                continue;
            }
            let gens = residual.coeffs().iter().find_map(|c| c.generators().cloned());
            for (m, poly) in lambda_polys(&residual) {
                let set = IntegerSet::zeros_of(&poly)?;
                if set.is_empty() {
                    return Err(SolveError::Inconsistent {
                        degree: n,
                        i,
                        j,
                        residual: residual.to_string(),
                    });
                }
                self.surviving = self.surviving.intersect(&set);
                self.constraints.push(Constraint {
                    degree: n,
                    kind: ConstraintKind::Consistency {
                        i,
                        j,
                        monomial: GradedPoly::from_terms(gens.clone(), [(m, <Rat as Ring>::one())])
                            .to_string(),
                    },
                    polynomial: poly,
                    set,
                });
            }
        }
        self.accept(n, gn)?;
        Ok(true)
    }

    /// Records `g_n` after imposing the mode's integrality conditions.
    fn accept(&mut self, n: u32, gn: Coeff) -> Result<(), SolveError> {
        let checks: Vec<(u32, &LazardLattice)> = match self.mode {
            Mode::Rational => Vec::new(),
            Mode::Graded(l) => {
                for c in gn.coeffs() {
                    if !c.is_zero() && c.homogeneous_weight() != Some(2 * n) {
                        return Err(FglError::Inhomogeneous { expected: 2 * n }.into());
                    }
                }
                vec![(n, l)]
            }
            Mode::BoundedUngraded { lattice, max_weight } => {
                (0..=max_weight).map(|w| (w, lattice)).collect()
            }
        };
        let len = gn.coeffs().len();
        for (w, lattice) in checks {
            let parts: Vec<GradedPoly> = gn.coeffs().iter().map(|c| c.component(2 * w)).collect();
            if parts.iter().all(GradedPoly::is_zero) {
                continue;
            }
            let coords: Vec<Vec<Rat>> = if w == 0 {
                parts.iter().map(|c| vec![c.constant_term()]).collect()
            } else {
                parts
                    .iter()
                    .map(|c| lattice.rational_coords(w, c))
                    .collect::<Result<_, _>>()?
            };
            let rank = coords.first().map_or(0, Vec::len);
            for r in 0..rank {
                let poly: Vec<Rat> = (0..len).map(|p| coords[p][r].clone()).collect();
                let set = IntegerSet::integer_values_of(&poly)?;
                if set == IntegerSet::All {
                    self.trivial += 1;
                    continue;
                }
                self.surviving = self.surviving.intersect(&set);
                self.constraints.push(Constraint {
                    degree: n,
                    kind: ConstraintKind::Integrality {
                        weight: 2 * w,
                        coordinate: r,
                    },
                    polynomial: poly,
                    set,
                });
            }
        }
        self.coefficients.push(gn);
        self.by_degree.push(self.surviving.clone());
        Ok(())
    }

    /// `g(F(x,y)) - G(g(x), g(y))` up to the current degree.
    pub fn residual(&self) -> Result<TruncatedSeries<Coeff>, SolveError> {
        let cutoff = self.degree();
        let f = self.source.series().truncate(cutoff).map_coeffs(lift);
        let g = self.target.series().truncate(cutoff).map_coeffs(lift);
        let gx = self.g_series(cutoff, Var::X);
        let gy = self.g_series(cutoff, Var::Y);
        let lhs = gx.substitute(&[(Var::X, &f)])?;
        let rhs = g.substitute(&[(Var::X, &gx), (Var::Y, &gy)])?;
        Ok(lhs.sub(&rhs))
    }

    pub fn finish(&self) -> Result<HomSolution, SolveError> {
        Ok(HomSolution {
            mode: self.mode.name().to_string(),
            degree: self.degree(),
            coefficients: self.coefficients.clone(),
            constraints: self.constraints.clone(),
            trivial_constraints: self.trivial,
            surviving_by_degree: self.by_degree.clone(),
            surviving: self.surviving.clone(),
            residual_zero: self.residual()?.is_zero(),
        })
    }
}

/// Determines `g_2, ..., g_N` from `g_1 = seed`.
pub fn solve(
    source: &FormalGroupLaw<GradedPoly>,
    target: &FormalGroupLaw<GradedPoly>,
    max_degree: u32,
    mode: Mode<'_>,
    seed: &Seed,
) -> Result<HomSolution, SolveError> {
    let mut solver = HomSolver::new(source, target, max_degree, mode, seed)?;
    while solver.step()? {}
    solver.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{lazard_generators, rat};
    use crate::fgl::{additive, lazard_basis, multiplicative, universal_fgl};

    #[test]
    fn additive_to_additive_is_linear() {
        let f = additive::<GradedPoly>(6);
        let sol = solve(&f, &f, 5, Mode::Rational, &Seed::scalar()).unwrap();
        assert_eq!(sol.surviving, IntegerSet::All);
        assert!(sol.residual_zero);
        assert_eq!(sol.coefficient(1), &ParamPoly::line(GradedPoly::zero(), GradedPoly::one()));
        for n in 2..=5 {
            assert!(sol.coefficient(n).is_zero(), "g_{n}");
        }
    }

    #[test]
    fn universal_to_multiplicative_degree_two() {
        let lattice = lazard_basis(4).unwrap();
        let univ = universal_fgl(5).unwrap();
        let mult = multiplicative::<GradedPoly>(5);
        let seed = Seed::lazard(&lattice);
        let sol = solve(&univ, &mult, 2, Mode::Graded(&lattice), &seed).unwrap();
        // g_1 α_11 + 2 g_2 = g_1² with g_1 = 2λ m1, α_11 = -2 m1
        let m1 = GradedPoly::generator(&lazard_generators(4), 0);
        let m1sq = m1.mul(&m1);
        let expect = ParamPoly::new(vec![GradedPoly::zero(), m1sq.scale(&rat(2, 1)), m1sq.scale(&rat(2, 1))]);
        assert_eq!(sol.coefficient(2), &expect);
        assert!(sol.residual_zero);
    }

    #[test]
    fn stepwise_matches_direct() {
        let lattice = lazard_basis(5).unwrap();
        let univ = universal_fgl(6).unwrap();
        let mult = multiplicative::<GradedPoly>(6);
        let seed = Seed::lazard(&lattice);
        let long = solve(&univ, &mult, 5, Mode::Graded(&lattice), &seed).unwrap();
        let short = solve(&univ, &mult, 3, Mode::Graded(&lattice), &seed).unwrap();
        assert_eq!(short.coefficients[..], long.coefficients[..3]);
        assert_eq!(short.surviving, long.surviving_by_degree[2]);
        assert!(long.residual_zero);
    }

    #[test]
    fn zero_always_survives() {
        let lattice = lazard_basis(5).unwrap();
        let univ = universal_fgl(6).unwrap();
        let mult = multiplicative::<GradedPoly>(6);
        let sol = solve(&univ, &mult, 5, Mode::Graded(&lattice), &Seed::lazard(&lattice)).unwrap();
        assert!(sol.surviving.contains(&0.into()));
    }

    #[test]
    fn seed_must_match_grading() {
        let lattice = lazard_basis(3).unwrap();
        let univ = universal_fgl(4).unwrap();
        let mult = multiplicative::<GradedPoly>(4);
        let err = solve(&univ, &mult, 3, Mode::Graded(&lattice), &Seed::scalar()).unwrap_err();
        assert_eq!(err, SolveError::Lattice(FglError::Inhomogeneous { expected: 2 }));
    }
}
