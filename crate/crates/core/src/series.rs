//! Truncated power series in up to three variables `x, y, z` over an exact ring.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{Rat, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
        }
    }
}

/// Exponents of `x, y, z`.
pub type Exps = [u32; 3];

fn total(e: &Exps) -> u32 {
    e[0] + e[1] + e[2]
}

fn exps_of(var: Var, power: u32) -> Exps {
    let mut e = [0; 3];
    e[var.index()] = power;
    e
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series substituted for {0} has a nonzero constant term")]
    NonzeroConstantTerm(&'static str),
    #[error("linear coefficient is not the unit")]
    NonUnitLinearTerm,
    #[error("series is not invertible: {0}")]
    NotInvertible(&'static str),
    #[error("expected a series in the single variable {0}")]
    NotUnivariate(&'static str),
    #[error("coefficients come from different rings")]
    RingMismatch,
}

/// Power series with every term of total degree above `cutoff` discarded.
///
/// Results of arithmetic carry the smaller cutoff of their operands. Equality
/// compares cutoff and terms; the recorded variable list is presentation only.
#[derive(Clone, Debug)]
pub struct TruncatedSeries<R> {
    vars: BTreeSet<Var>,
    cutoff: u32,
    terms: BTreeMap<Exps, R>,
}

impl<R: PartialEq> PartialEq for TruncatedSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        self.cutoff == other.cutoff && self.terms == other.terms
    }
}

impl<R: Ring> TruncatedSeries<R> {
    pub fn zero(cutoff: u32) -> Self {
        TruncatedSeries {
            vars: BTreeSet::new(),
            cutoff,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(cutoff: u32) -> Self {
        Self::constant(R::one(), cutoff)
    }

    pub fn constant(c: R, cutoff: u32) -> Self {
        Self::monomial(c, [0, 0, 0], cutoff)
    }

    pub fn var(v: Var, cutoff: u32) -> Self {
        Self::monomial(R::one(), exps_of(v, 1), cutoff)
    }

    pub fn monomial(c: R, exps: Exps, cutoff: u32) -> Self {
        let mut s = Self::zero(cutoff);
        s.vars = Var::ALL
            .into_iter()
            .filter(|v| exps[v.index()] > 0)
            .collect();
        if !c.is_zero() && total(&exps) <= cutoff {
            s.terms.insert(exps, c);
        }
        s
    }

    pub fn from_terms(cutoff: u32, terms: impl IntoIterator<Item = (Exps, R)>) -> Self {
        let mut s = Self::zero(cutoff);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    /// `Σ coeffs[k] v^k`.
    pub fn univariate(v: Var, coeffs: Vec<R>, cutoff: u32) -> Self {
        let mut s = Self::from_terms(
            cutoff,
            coeffs
                .into_iter()
                .enumerate()
                .map(|(k, c)| (exps_of(v, k as u32), c)),
        );
        s.vars.insert(v);
        s
    }

    fn add_term(&mut self, e: Exps, c: R) {
        if total(&e) > self.cutoff || c.is_zero() {
            return;
        }
        for v in Var::ALL {
            if e[v.index()] > 0 {
                self.vars.insert(v);
            }
        }
        match self.terms.get_mut(&e) {
            Some(prev) => {
                let sum = prev.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *prev = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.vars.iter().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &R)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Exps) -> R {
        self.terms.get(&e).cloned().unwrap_or_else(R::zero)
    }

    /// Coefficient of `x^i y^j`.
    pub fn coeff_xy(&self, i: u32, j: u32) -> R {
        self.coeff([i, j, 0])
    }

    pub fn constant_term(&self) -> R {
        self.coeff([0, 0, 0])
    }

    /// Coefficients `[v^0], ..., [v^cutoff]` of a one-variable series.
    pub fn univariate_coeffs(&self, v: Var) -> Result<Vec<R>, SeriesError> {
        let mut out = vec![R::zero(); self.cutoff as usize + 1];
        for (e, c) in &self.terms {
            if total(e) != e[v.index()] {
                return Err(SeriesError::NotUnivariate(v.name()));
            }
            out[e[v.index()] as usize] = c.clone();
        }
        Ok(out)
    }

    /// Drop everything above degree `n` (a no-op when `n >= cutoff`).
    pub fn truncate(&self, n: u32) -> Self {
        let cutoff = n.min(self.cutoff);
        TruncatedSeries {
            vars: self.vars.clone(),
            cutoff,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total(e) <= cutoff)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Part of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let mut s = Self::zero(self.cutoff);
        s.vars = self.vars.clone();
        s.terms = self
            .terms
            .iter()
            .filter(|(e, _)| total(e) == d)
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        s
    }

    fn merged_vars(&self, other: &Self) -> BTreeSet<Var> {
        self.vars.union(&other.vars).copied().collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut s = self.truncate(rhs.cutoff);
        s.vars = self.merged_vars(rhs);
        for (e, c) in &rhs.terms {
            s.add_term(*e, c.clone());
        }
        s
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            vars: self.vars.clone(),
            cutoff: self.cutoff,
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn scale(&self, q: &Rat) -> Self {
        self.map_coeffs(|c| c.scale(q)).with_vars(&self.vars)
    }

    pub fn mul_coeff(&self, r: &R) -> Self {
        self.map_coeffs(|c| c.mul(r)).with_vars(&self.vars)
    }

    fn with_vars(mut self, vars: &BTreeSet<Var>) -> Self {
        self.vars = vars.clone();
        self
    }

    /// Truncated product.
    pub fn mul(&self, rhs: &Self) -> Self {
        let cutoff = self.cutoff.min(rhs.cutoff);
        let mut s = Self::zero(cutoff);
        s.vars = self.merged_vars(rhs);
        for (ea, ca) in &self.terms {
            let da = total(ea);
            if da > cutoff {
                continue;
            }
            for (eb, cb) in &rhs.terms {
                if da + total(eb) > cutoff {
                    continue;
                }
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                s.add_term(e, ca.mul(cb));
            }
        }
        s
    }

    /// Product that first checks all coefficients belong to one ring.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self, SeriesError> {
        let reference = self.terms.values().chain(rhs.terms.values()).next();
        if let Some(r) = reference {
            if !self
                .terms
                .values()
                .chain(rhs.terms.values())
                .all(|c| c.compatible(r))
            {
                return Err(SeriesError::RingMismatch);
            }
        }
        Ok(self.mul(rhs))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.cutoff);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// All powers `self^0, ..., self^k`.
    pub fn powers(&self, k: u32) -> Vec<Self> {
        let mut out = Vec::with_capacity(k as usize + 1);
        out.push(Self::one(self.cutoff));
        for i in 1..=k as usize {
            let next = out[i - 1].mul(self);
            out.push(next);
        }
        out
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        let mut s = TruncatedSeries::zero(self.cutoff);
        s.vars = self.vars.clone();
        for (e, c) in &self.terms {
            s.add_term(*e, f(c));
        }
        s
    }

    /// Simultaneous substitution of series for variables; unassigned variables stay.
    ///
    /// Every substituted series must have zero constant term. The result is
    /// exact up to the smallest cutoff involved.
    pub fn substitute(&self, assignment: &[(Var, &TruncatedSeries<R>)]) -> Result<Self, SeriesError> {
        let mut cutoff = self.cutoff;
        let mut images: [Option<&TruncatedSeries<R>>; 3] = [None, None, None];
        for (v, s) in assignment {
            if !s.constant_term().is_zero() {
                return Err(SeriesError::NonzeroConstantTerm(v.name()));
            }
            cutoff = cutoff.min(s.cutoff);
            images[v.index()] = Some(s);
        }
        let mut max_exp = [0u32; 3];
        for e in self.terms.keys() {
            for i in 0..3 {
                max_exp[i] = max_exp[i].max(e[i]);
            }
        }
        let mut powers: [Vec<TruncatedSeries<R>>; 3] = Default::default();
        for v in Var::ALL {
            let i = v.index();
            let base = match images[i] {
                Some(s) => s.truncate(cutoff),
                None => Self::var(v, cutoff),
            };
            powers[i] = base.powers(max_exp[i].min(cutoff));
        }
        let mut out = Self::zero(cutoff);
        out.vars = Var::ALL
            .into_iter()
            .filter(|v| images[v.index()].is_none() && self.vars.contains(v))
            .collect();
        for s in images.iter().flatten() {
            out.vars.extend(s.vars.iter().copied());
        }
        for (e, c) in &self.terms {
            if total(e) > cutoff {
                continue;
            }
            let mut term = powers[0][e[0] as usize].mul_coeff(c);
            for i in 1..3 {
                if e[i] > 0 {
                    term = term.mul(&powers[i][e[i] as usize]);
                }
            }
            for (te, tc) in term.terms {
                out.add_term(te, tc);
            }
        }
        Ok(out)
    }

    /// Formal partial derivative.
    pub fn derivative(&self, v: Var) -> Self {
        let i = v.index();
        let mut s = Self::zero(self.cutoff.saturating_sub(1));
        s.vars = self.vars.clone();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = *e;
            d[i] -= 1;
            s.add_term(d, c.scale(&Rat::from_integer(e[i].into())));
        }
        s
    }

    /// Multiplicative inverse of a series whose constant term is one.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_one() {
            return Err(SeriesError::NotInvertible("constant term is not one"));
        }
        // 1/(1 + h) = Σ (-h)^k, h has no constant term
        let minus_h = self.sub(&Self::one(self.cutoff)).neg();
        let mut acc = Self::one(self.cutoff);
        let mut p = Self::one(self.cutoff);
        for _ in 0..self.cutoff {
            p = p.mul(&minus_h);
            if p.is_zero() {
                break;
            }
            acc = acc.add(&p);
        }
        Ok(acc)
    }

    /// Compositional inverse of a one-variable series `x + higher terms`.
    ///
    /// Newton iteration `r ← r - (s(r) - x) / s'(r)`, doubling the number of
    /// correct coefficients per pass.
    pub fn reversion(&self) -> Result<Self, SeriesError> {
        let v = self.single_var()?;
        if !self.constant_term().is_zero() {
            return Err(SeriesError::NonzeroConstantTerm(v.name()));
        }
        if !self.coeff(exps_of(v, 1)).is_one() {
            return Err(SeriesError::NonUnitLinearTerm);
        }
        let n = self.cutoff;
        let x = Self::var(v, n);
        let ds = self.derivative(v);
        let mut r = x.truncate(1.min(n));
        let mut precision = 1;
        while precision < n {
            precision = (2 * precision + 1).min(n);
            let r_p = Self::from_terms(precision, r.terms.clone()).with_vars(&r.vars);
            let s_p = self.truncate(precision);
            let err = s_p.substitute(&[(v, &r_p)])?.sub(&x.truncate(precision));
            let slope = ds.substitute(&[(v, &r_p)])?;
            // ds has cutoff n-1; pad so the inverse keeps the working precision
            let slope = Self::from_terms(precision, slope.terms).with_vars(&r.vars);
            let step = err.mul(&slope.inverse()?);
            r = r_p.sub(&step);
        }
        Ok(Self::from_terms(n, r.terms).with_vars(&self.vars))
    }

    fn single_var(&self) -> Result<Var, SeriesError> {
        let mut vars = self.vars.iter();
        match (vars.next(), vars.next()) {
            (Some(v), None) => Ok(*v),
            (None, _) => Ok(Var::X),
            (Some(v), Some(_)) => Err(SeriesError::NotUnivariate(v.name())),
        }
    }

    /// Terms sorted by total degree, then by descending exponent vector.
    pub fn sorted_terms(&self) -> Vec<(&Exps, &R)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| total(a).cmp(&total(b)).then(b.cmp(a)));
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vars: Vec<Var> = self.vars.iter().copied().collect();
        let terms: Vec<serde_json::Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(e, c)| {
                let exps: Vec<u32> = vars.iter().map(|v| e[v.index()]).collect();
                serde_json::json!({ "exponents": exps, "coefficient": c.to_string() })
            })
            .collect();
        serde_json::json!({ "variables": vars, "cutoff": self.cutoff, "terms": terms })
    }
}

pub(crate) fn render_monomial(e: &Exps) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        match e[v.index()] {
            0 => {}
            1 => parts.push(v.name().to_string()),
            k => parts.push(format!("{}^{}", v.name(), k)),
        }
    }
    parts.join("*")
}

impl<R: Ring> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.sorted_terms() {
            let text = c.to_string();
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
                _ => (false, text.clone()),
            };
            let body = if body.contains(' ') {
                format!("({body})")
            } else {
                body
            };
            let mono = render_monomial(e);
            let term = if mono.is_empty() {
                body
            } else if body == "1" {
                mono
            } else {
                format!("{body}*{mono}")
            };
            match (first, neg) {
                (true, true) => write!(f, "-{term}")?,
                (true, false) => write!(f, "{term}")?,
                (false, true) => write!(f, " - {term}")?,
                (false, false) => write!(f, " + {term}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({})", self.cutoff + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{bott_generator, lazard_generators, rat, GradedPoly};

    type S = TruncatedSeries<Rat>;

    fn x(n: u32) -> S {
        S::var(Var::X, n)
    }
    fn y(n: u32) -> S {
        S::var(Var::Y, n)
    }

    #[test]
    fn square_of_sum() {
        let s = x(2).add(&y(2));
        let sq = s.mul(&s);
        let expect = S::from_terms(
            2,
            [([2, 0, 0], rat(1, 1)), ([1, 1, 0], rat(2, 1)), ([0, 2, 0], rat(1, 1))],
        );
        assert_eq!(sq, expect);
    }

    #[test]
    fn truncation_drops_cube() {
        let a = x(2).add(&x(2).mul(&x(2)));
        assert_eq!(a.mul(&x(2)), x(2).mul(&x(2)));
    }

    #[test]
    fn k_theory_law_squared() {
        // (x + y + t xy)^2 against a naive convolution of the coefficient table
        let gens = bott_generator();
        let t = GradedPoly::generator(&gens, 0);
        let f = TruncatedSeries::<GradedPoly>::from_terms(
            4,
            [([1, 0, 0], GradedPoly::one()), ([0, 1, 0], GradedPoly::one()), ([1, 1, 0], t.clone())],
        );
        let sq = f.mul(&f);
        let mut naive: BTreeMap<Exps, GradedPoly> = BTreeMap::new();
        for (ea, ca) in f.terms() {
            for (eb, cb) in f.terms() {
                let e = [ea[0] + eb[0], ea[1] + eb[1], 0];
                let entry = naive.entry(e).or_insert_with(GradedPoly::zero);
                *entry = entry.add(&ca.mul(cb));
            }
        }
        naive.retain(|e, c| total(e) <= 4 && !c.is_zero());
        assert_eq!(sq, TruncatedSeries::from_terms(4, naive));
        assert_eq!(sq.coeff_xy(2, 1), t.scale(&rat(2, 1)));
        assert_eq!(sq.coeff_xy(2, 2), t.mul(&t));
        assert_eq!(sq.coeff_xy(1, 1), GradedPoly::from_int(2));
    }

    #[test]
    fn substitute_zero_into_multiplicative_law() {
        let f = x(3).add(&y(3)).add(&x(3).mul(&y(3)));
        let zero = S::zero(3);
        assert_eq!(f.substitute(&[(Var::X, &zero)]).unwrap(), y(3));
        assert_eq!(f.substitute(&[(Var::Y, &zero)]).unwrap(), x(3));
    }

    #[test]
    fn substitute_into_sum() {
        // x+y with x ↦ x+x², y ↦ y+y²: no cross terms
        let g = |v: Var| S::var(v, 2).add(&S::var(v, 2).pow(2));
        let (gx, gy) = (g(Var::X), g(Var::Y));
        let s = x(2).add(&y(2));
        let out = s.substitute(&[(Var::X, &gx), (Var::Y, &gy)]).unwrap();
        assert_eq!(out, gx.add(&gy));
        assert!(out.coeff_xy(1, 1).is_zero());
    }

    #[test]
    fn constant_term_rejected() {
        let s = x(2);
        let bad = S::one(2).add(&y(2));
        assert_eq!(
            s.substitute(&[(Var::X, &bad)]),
            Err(SeriesError::NonzeroConstantTerm("x"))
        );
    }

    #[test]
    fn reversion_of_identity() {
        assert_eq!(x(6).reversion().unwrap(), x(6));
    }

    #[test]
    fn reversion_gives_signed_catalan() {
        let s = S::univariate(Var::X, vec![rat(0, 1), rat(1, 1), rat(1, 1)], 5);
        let r = s.reversion().unwrap();
        let expect = S::univariate(
            Var::X,
            [0, 1, -1, 2, -5, 14].iter().map(|&c| rat(c, 1)).collect(),
            5,
        );
        assert_eq!(r, expect);
        // composition oracle both ways
        assert_eq!(s.substitute(&[(Var::X, &r)]).unwrap(), x(5));
        assert_eq!(r.substitute(&[(Var::X, &s)]).unwrap(), x(5));
    }

    #[test]
    fn reversion_over_lazard_polynomials() {
        let gens = lazard_generators(2);
        let m1 = GradedPoly::generator(&gens, 0);
        let m2 = GradedPoly::generator(&gens, 1);
        let s = TruncatedSeries::univariate(
            Var::X,
            vec![GradedPoly::zero(), GradedPoly::one(), m1.clone(), m2.clone()],
            3,
        );
        let r = s.reversion().unwrap();
        assert_eq!(r.coeff([2, 0, 0]), m1.neg());
        assert_eq!(
            r.coeff([3, 0, 0]),
            m1.mul(&m1).scale(&rat(2, 1)).sub(&m2)
        );
        assert_eq!(r.to_string(), "x - m1*x^2 + (2*m1^2 - m2)*x^3 + O(4)");
    }

    #[test]
    fn reversion_errors() {
        let s = S::univariate(Var::X, vec![rat(0, 1), rat(2, 1)], 3);
        assert_eq!(s.reversion(), Err(SeriesError::NonUnitLinearTerm));
        assert!(matches!(
            x(3).add(&y(3)).reversion(),
            Err(SeriesError::NotUnivariate(_))
        ));
    }

    #[test]
    fn inverse_of_unit_series() {
        let u = S::one(4).add(&x(4));
        let inv = u.inverse().unwrap();
        assert_eq!(u.mul(&inv), S::one(4));
        assert!(x(4).inverse().is_err());
    }

    #[test]
    fn json_is_sorted() {
        let s = y(2).add(&x(2)).add(&x(2).mul(&y(2)).scale(&rat(-1, 2)));
        let j = s.to_json();
        assert_eq!(
            j.to_string(),
            r#"{"cutoff":2,"terms":[{"coefficient":"1","exponents":[1,0]},{"coefficient":"1","exponents":[0,1]},{"coefficient":"-1/2","exponents":[1,1]}],"variables":["x","y"]}"#
        );
        assert_eq!(s.to_string(), "x + y - 1/2*x*y + O(3)");
    }
}
