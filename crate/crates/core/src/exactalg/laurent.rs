use std::collections::BTreeMap;
use std::fmt;

use super::ring::{rat_to_string, Rat, Ring};

/// Element of `Q[u, v, u^-1, v^-1]`, keyed by the exponent pair `(a, b)` of `u^a v^b`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentUV {
    terms: BTreeMap<(i64, i64), Rat>,
}

impl LaurentUV {
    pub fn monomial(c: Rat, u_exp: i64, v_exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !<Rat as Ring>::is_zero(&c) {
            terms.insert((u_exp, v_exp), c);
        }
        LaurentUV { terms }
    }

    pub fn u() -> Self {
        Self::monomial(<Rat as Ring>::one(), 1, 0)
    }

    pub fn v() -> Self {
        Self::monomial(<Rat as Ring>::one(), 0, 1)
    }

    pub fn coeff(&self, u_exp: i64, v_exp: i64) -> Rat {
        self.terms
            .get(&(u_exp, v_exp))
            .cloned()
            .unwrap_or_else(<Rat as Ring>::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Rat)> {
        self.terms.iter()
    }

    /// Multiplicative inverse of a single monomial; `None` otherwise.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(a, b), c) = self.terms.iter().next()?;
        Some(Self::monomial(c.recip(), -a, -b))
    }

    fn from_map(mut terms: BTreeMap<(i64, i64), Rat>) -> Self {
        terms.retain(|_, c| !<Rat as Ring>::is_zero(c));
        LaurentUV { terms }
    }
}

fn render_power(name: &str, e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

/// Terms ordered by total degree, then by descending power of `u`.
impl fmt::Display for LaurentUV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|(a, _), (b, _)| (a.0 + a.1).cmp(&(b.0 + b.1)).then(b.0.cmp(&a.0)));
        for (idx, (&(a, b), c)) in keys.into_iter().enumerate() {
            let negative = c < &<Rat as Ring>::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let mono: Vec<String> = [render_power("u", a), render_power("v", b)]
                .into_iter()
                .flatten()
                .collect();
            if mono.is_empty() {
                write!(f, "{}", rat_to_string(&abs))?;
            } else if <Rat as Ring>::is_one(&abs) {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", rat_to_string(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Ring for LaurentUV {
    fn zero() -> Self {
        LaurentUV::default()
    }
    fn one() -> Self {
        Self::monomial(<Rat as Ring>::one(), 0, 0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &rhs.terms {
            *terms.entry(*k).or_insert_with(<Rat as Ring>::zero) += c;
        }
        Self::from_map(terms)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                *terms
                    .entry((a1 + a2, b1 + b2))
                    .or_insert_with(<Rat as Ring>::zero) += c1 * c2;
            }
        }
        Self::from_map(terms)
    }
    fn neg(&self) -> Self {
        LaurentUV {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
    fn from_rat(q: &Rat) -> Self {
        Self::monomial(q.clone(), 0, 0)
    }
}
