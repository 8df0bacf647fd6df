use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::ring::{rat_to_string, Int, Rat, Ring};
use super::AlgebraError;

/// A polynomial generator with its grading weight.
///
/// Weights are even for the Lazard generators (`m_i` has weight `2i`) and the
/// Bott element `t` (weight 2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub weight: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, weight: u32) -> Self {
        Generator {
            name: name.into(),
            weight,
        }
    }
}

pub type Generators = Arc<[Generator]>;

/// `m_1, ..., m_n` with `m_i` of weight `2i`.
pub fn lazard_generators(n: usize) -> Generators {
    (1..=n)
        .map(|i| Generator::new(format!("m{i}"), 2 * i as u32))
        .collect::<Vec<_>>()
        .into()
}

/// The single Bott generator `t` of weight 2.
pub fn bott_generator() -> Generators {
    vec![Generator::new("t", 2)].into()
}

/// Exponent vector with trailing zeros trimmed, so a constant is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    /// The monomial consisting of generator `index` (0-based) to the first power.
    pub fn var(index: usize) -> Self {
        let mut v = vec![0; index + 1];
        v[index] = 1;
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0.get(index).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weight(&self, gens: &[Generator]) -> u32 {
        self.0
            .iter()
            .zip(gens)
            .map(|(e, g)| e * g.weight)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (&self.0, &other.0)
        } else {
            (&other.0, &self.0)
        };
        let mut v = long.clone();
        for (a, b) in v.iter_mut().zip(short) {
            *a += b;
        }
        Monomial(v)
    }

    fn render(&self, gens: &[Generator]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = gens.get(i).map(|g| g.name.as_str()).unwrap_or("?");
            if e == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        parts.join("*")
    }
}

/// Display/serialization order: ascending weight, then lexicographically
/// larger exponents of earlier generators first (`m1^2` before `m2`).
fn display_order(gens: &[Generator], a: &Monomial, b: &Monomial) -> Ordering {
    a.weight(gens)
        .cmp(&b.weight(gens))
        .then_with(|| b.0.cmp(&a.0))
}

/// Sparse polynomial over Q in a list of weighted generators.
///
/// A polynomial without generators is a constant and combines with any other
/// polynomial. Two generator lists are compatible when one is a prefix of the
/// other; the result of an operation carries the longer list.
#[derive(Clone, Debug)]
pub struct GradedPoly {
    gens: Option<Generators>,
    terms: BTreeMap<Monomial, Rat>,
}

fn gens_compatible(a: &Option<Generators>, b: &Option<Generators>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => {
            Arc::ptr_eq(x, y) || x.iter().zip(y.iter()).all(|(p, q)| p == q)
        }
        _ => true,
    }
}

fn merge_gens(a: &Option<Generators>, b: &Option<Generators>) -> Option<Generators> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.len() > x.len() { y.clone() } else { x.clone() }),
        (Some(x), None) => Some(x.clone()),
        (None, y) => y.clone(),
    }
}

impl GradedPoly {
    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !<Rat as Ring>::is_zero(&c) {
            terms.insert(Monomial::one(), c);
        }
        GradedPoly { gens: None, terms }
    }

    /// The generator at `index` (0-based) as a polynomial.
    pub fn generator(gens: &Generators, index: usize) -> Self {
        assert!(index < gens.len(), "generator index out of range");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(index), <Rat as Ring>::one());
        GradedPoly {
            gens: Some(gens.clone()),
            terms,
        }
    }

    pub fn from_terms(
        gens: Option<Generators>,
        terms: impl IntoIterator<Item = (Monomial, Rat)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            if let Some(g) = &gens {
                assert!(m.exponents().len() <= g.len(), "monomial exceeds generator list");
            }
            let entry = map.entry(m).or_insert_with(<Rat as Ring>::zero);
            *entry += c;
        }
        map.retain(|_, c| !<Rat as Ring>::is_zero(c));
        GradedPoly { gens, terms: map }
    }

    pub fn generators(&self) -> Option<&Generators> {
        self.gens.as_ref()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(<Rat as Ring>::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one())
    }

    fn gens_slice(&self) -> &[Generator] {
        self.gens.as_deref().unwrap_or(&[])
    }

    /// Weights of all monomials present, ascending and deduplicated.
    pub fn weights(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self
            .terms
            .keys()
            .map(|m| m.weight(self.gens_slice()))
            .collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    /// `Some(w)` when every monomial has weight `w`; `None` for zero or mixed weights.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        match self.weights().as_slice() {
            [w] => Some(*w),
            _ => None,
        }
    }

    /// The part of weight exactly `w`.
    pub fn component(&self, w: u32) -> GradedPoly {
        let gens = self.gens_slice();
        GradedPoly {
            gens: self.gens.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight(gens) == w)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check(rhs)?;
        Ok(self.combine(rhs, false))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check(rhs)?;
        Ok(self.combine(rhs, true))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check(rhs)?;
        Ok(self.product(rhs))
    }

    fn check(&self, rhs: &Self) -> Result<(), AlgebraError> {
        if gens_compatible(&self.gens, &rhs.gens) {
            Ok(())
        } else {
            Err(AlgebraError::GeneratorMismatch {
                left: self.generator_names(),
                right: rhs.generator_names(),
            })
        }
    }

    fn generator_names(&self) -> Vec<String> {
        self.gens_slice().iter().map(|g| g.name.clone()).collect()
    }

    fn combine(&self, rhs: &Self, negate: bool) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            let entry = terms.entry(m.clone()).or_insert_with(<Rat as Ring>::zero);
            if negate {
                *entry -= c;
            } else {
                *entry += c;
            }
            if <Rat as Ring>::is_zero(entry) {
                terms.remove(m);
            }
        }
        GradedPoly {
            gens: merge_gens(&self.gens, &rhs.gens),
            terms,
        }
    }

    fn product(&self, rhs: &Self) -> Self {
        let mut terms: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match terms.get_mut(&m) {
                    Some(e) => *e += c,
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        terms.retain(|_, c| !<Rat as Ring>::is_zero(c));
        GradedPoly {
            gens: merge_gens(&self.gens, &rhs.gens),
            terms,
        }
    }

    /// Ring homomorphism `Q[gens] -> R` sending generator `i` to `values[i]`.
    ///
    /// Panics when a monomial uses a generator without an assigned value.
    pub fn evaluate<R: Ring>(&self, values: &[R]) -> R {
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut term = R::from_rat(c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&values[i].pow(e));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Terms in canonical order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rat)> {
        let gens = self.gens_slice();
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| display_order(gens, a.0, b.0));
        v
    }

    /// JSON form: list of `{exponents, numerator, denominator}` in canonical order.
    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        let width = self.gens_slice().len();
        self.sorted_terms()
            .into_iter()
            .map(|(m, c)| {
                let mut exps = m.exponents().to_vec();
                exps.resize(width.max(exps.len()), 0);
                JsonTerm {
                    exponents: exps,
                    numerator: c.numer().to_string(),
                    denominator: c.denom().to_string(),
                }
            })
            .collect()
    }

    pub fn from_json_terms(
        gens: Option<Generators>,
        terms: &[JsonTerm],
    ) -> Result<Self, AlgebraError> {
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let num: Int = t
                .numerator
                .parse()
                .map_err(|_| AlgebraError::Parse(t.numerator.clone()))?;
            let den: Int = t
                .denominator
                .parse()
                .map_err(|_| AlgebraError::Parse(t.denominator.clone()))?;
            if den == Int::from(0) {
                return Err(AlgebraError::Parse("zero denominator".into()));
            }
            let width = gens.as_ref().map_or(0, |g| g.len());
            if t.exponents.iter().skip(width).any(|&e| e != 0) {
                return Err(AlgebraError::Parse(format!(
                    "exponent vector {:?} longer than generator list",
                    t.exponents
                )));
            }
            out.push((Monomial::new(t.exponents.clone()), Rat::new(num, den)));
        }
        Ok(GradedPoly::from_terms(gens, out))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub exponents: Vec<u32>,
    pub numerator: String,
    pub denominator: String,
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && gens_compatible(&self.gens, &other.gens)
    }
}

impl Eq for GradedPoly {}

/// Canonical text such as `3/2*m1^2*m2 - m3 + 1`.
impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let gens = self.gens_slice();
        for (idx, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c < &<Rat as Ring>::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", rat_to_string(&abs))?;
            } else if <Rat as Ring>::is_one(&abs) {
                write!(f, "{}", m.render(gens))?;
            } else {
                write!(f, "{}*{}", rat_to_string(&abs), m.render(gens))?;
            }
        }
        Ok(())
    }
}

impl Ring for GradedPoly {
    fn zero() -> Self {
        GradedPoly {
            gens: None,
            terms: BTreeMap::new(),
        }
    }
    fn one() -> Self {
        GradedPoly::constant(<Rat as Ring>::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("generator mismatch")
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.try_sub(rhs).expect("generator mismatch")
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("generator mismatch")
    }
    fn neg(&self) -> Self {
        GradedPoly {
            gens: self.gens.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
    fn from_rat(q: &Rat) -> Self {
        GradedPoly::constant(q.clone())
    }
    fn scale(&self, q: &Rat) -> Self {
        if <Rat as Ring>::is_zero(q) {
            return GradedPoly {
                gens: self.gens.clone(),
                terms: BTreeMap::new(),
            };
        }
        GradedPoly {
            gens: self.gens.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }
    fn compatible(&self, other: &Self) -> bool {
        gens_compatible(&self.gens, &other.gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ring::rat;

    fn m(gens: &Generators, i: usize) -> GradedPoly {
        GradedPoly::generator(gens, i - 1)
    }

    #[test]
    fn square_of_m1_has_weight_four() {
        let gens = lazard_generators(3);
        let sq = m(&gens, 1).mul(&m(&gens, 1));
        assert_eq!(sq.to_string(), "m1^2");
        assert_eq!(sq.homogeneous_weight(), Some(4));
    }

    #[test]
    fn canonical_text() {
        let gens = lazard_generators(3);
        let p = m(&gens, 1)
            .mul(&m(&gens, 1))
            .mul(&m(&gens, 2))
            .scale(&rat(3, 2))
            .sub(&m(&gens, 3))
            .add(&GradedPoly::one())
            .sub(&m(&gens, 1).scale(&rat(2, 1)));
        assert_eq!(p.to_string(), "1 - 2*m1 - m3 + 3/2*m1^2*m2");
        assert_eq!(GradedPoly::zero().to_string(), "0");
        assert_eq!(p.weights(), vec![0, 2, 6, 8]);
        assert_eq!(p.homogeneous_weight(), None);
        assert_eq!(p.component(6).to_string(), "-m3");
    }

    #[test]
    fn mismatched_generators_are_rejected() {
        let a = GradedPoly::generator(&lazard_generators(1), 0);
        let t = GradedPoly::generator(&bott_generator(), 0);
        assert!(matches!(
            a.try_mul(&t),
            Err(AlgebraError::GeneratorMismatch { .. })
        ));
        // prefixes are compatible
        let b = GradedPoly::generator(&lazard_generators(4), 3);
        let ab = a.try_mul(&b).unwrap();
        assert_eq!(ab.to_string(), "m1*m4");
        // constants mix with anything
        assert!(t.try_add(&GradedPoly::from_int(3)).is_ok());
    }

    #[test]
    fn json_terms_roundtrip() {
        let gens = lazard_generators(2);
        let p = m(&gens, 1)
            .mul(&m(&gens, 1))
            .scale(&rat(-5, 3))
            .add(&m(&gens, 2).scale(&rat(7, 1)));
        let json = p.to_json_terms();
        assert_eq!(json[0].exponents, vec![2, 0]);
        assert_eq!(json[0].numerator, "-5");
        assert_eq!(json[0].denominator, "3");
        let back = GradedPoly::from_json_terms(Some(gens), &json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn evaluation_is_a_ring_map() {
        let gens = lazard_generators(2);
        let p = m(&gens, 1).mul(&m(&gens, 2)).add(&GradedPoly::from_int(2));
        let v = p.evaluate(&[rat(1, 2), rat(3, 1)]);
        assert_eq!(v, rat(7, 2));
    }
}
