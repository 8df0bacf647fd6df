//! Sets of integers cut out by polynomial constraints in one integer parameter.
//!
//! Two kinds of constraint occur: `P(λ) = 0` (finitely many integer roots, or
//! everything when `P` vanishes identically) and `P(λ) ∈ Z` for rational `P`
//! (a union of residue classes, described prime by prime).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ring::{common_denominator, factor_small, Int, Rat};
use super::AlgebraError;

/// Trial-division bound used when factoring denominators and constant terms.
const FACTOR_LIMIT: u64 = 10_000_000;

/// Residues of `λ` modulo `prime^exponent` that satisfy every constraint at this prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePowerClasses {
    pub prime: u64,
    pub exponent: u32,
    pub residues: BTreeSet<u64>,
}

impl PrimePowerClasses {
    pub fn modulus(&self) -> u64 {
        self.prime.pow(self.exponent)
    }

    fn contains(&self, n: &Int) -> bool {
        let r = n.mod_floor(&Int::from(self.modulus())).to_u64().unwrap();
        self.residues.contains(&r)
    }

    fn is_everything(&self) -> bool {
        self.residues.len() as u64 == self.modulus()
    }

    fn intersect(&self, other: &PrimePowerClasses) -> PrimePowerClasses {
        debug_assert_eq!(self.prime, other.prime);
        let (fine, coarse) = if self.exponent >= other.exponent {
            (self, other)
        } else {
            (other, self)
        };
        let m = coarse.modulus();
        PrimePowerClasses {
            prime: fine.prime,
            exponent: fine.exponent,
            residues: fine
                .residues
                .iter()
                .copied()
                .filter(|r| coarse.residues.contains(&(r % m)))
                .collect(),
        }
    }
}

/// A set of integers, possibly infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegerSet {
    All,
    Finite(BTreeSet<Int>),
    /// Integers whose residues lie in the listed classes at every listed prime.
    Periodic(Vec<PrimePowerClasses>),
}

impl IntegerSet {
    pub fn empty() -> Self {
        IntegerSet::Finite(BTreeSet::new())
    }

    pub fn singleton(n: impl Into<Int>) -> Self {
        IntegerSet::Finite(BTreeSet::from([n.into()]))
    }

    pub fn is_empty(&self) -> bool {
        match self {
            IntegerSet::All => false,
            IntegerSet::Finite(s) => s.is_empty(),
            IntegerSet::Periodic(c) => c.iter().any(|p| p.residues.is_empty()),
        }
    }

    pub fn contains(&self, n: &Int) -> bool {
        match self {
            IntegerSet::All => true,
            IntegerSet::Finite(s) => s.contains(n),
            IntegerSet::Periodic(c) => c.iter().all(|p| p.contains(n)),
        }
    }

    /// Elements `λ` with `|λ| <= bound`, ascending.
    pub fn within(&self, bound: u64) -> Vec<Int> {
        let b = bound as i64;
        (-b..=b)
            .map(Int::from)
            .filter(|n| self.contains(n))
            .collect()
    }

    pub fn intersect(&self, other: &IntegerSet) -> IntegerSet {
        use IntegerSet::*;
        match (self, other) {
            (All, x) | (x, All) => x.clone(),
            (Finite(a), b) => Finite(a.iter().filter(|n| b.contains(n)).cloned().collect()),
            (a, Finite(b)) => Finite(b.iter().filter(|n| a.contains(n)).cloned().collect()),
            (Periodic(a), Periodic(b)) => {
                let mut by_prime: BTreeMap<u64, PrimePowerClasses> = BTreeMap::new();
                for c in a.iter().chain(b) {
                    let merged = match by_prime.get(&c.prime) {
                        Some(prev) => prev.intersect(c),
                        None => c.clone(),
                    };
                    by_prime.insert(c.prime, merged);
                }
                Periodic(by_prime.into_values().collect())
            }
        }
    }

    /// Integers `λ` with `poly(λ) = 0`, where `poly[p]` is the coefficient of `λ^p`.
    pub fn zeros_of(poly: &[Rat]) -> Result<IntegerSet, AlgebraError> {
        let ints = clear_denominators(poly);
        if ints.iter().all(Zero::is_zero) {
            return Ok(IntegerSet::All);
        }
        Ok(IntegerSet::Finite(integer_roots(&ints)?))
    }

    /// Integers `λ` for which `poly(λ)` is an integer.
    pub fn integer_values_of(poly: &[Rat]) -> Result<IntegerSet, AlgebraError> {
        let den = common_denominator(poly);
        if den.is_one() {
            return Ok(IntegerSet::All);
        }
        let scaled: Vec<Int> = poly
            .iter()
            .map(|q| (q * Rat::from_integer(den.clone())).to_integer())
            .collect();
        let factors = factor_small(&den, FACTOR_LIMIT)
            .ok_or_else(|| AlgebraError::FactorLimit(den.to_string()))?;
        let mut classes = Vec::new();
        for (p, e) in factors {
            let c = solve_prime_power(&scaled, p, e)?;
            if !c.is_everything() {
                classes.push(c);
            }
        }
        Ok(if classes.is_empty() {
            IntegerSet::All
        } else {
            IntegerSet::Periodic(classes)
        })
    }
}

impl fmt::Display for IntegerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegerSet::All => write!(f, "Z"),
            IntegerSet::Finite(s) => {
                let items: Vec<String> = s.iter().map(|n| n.to_string()).collect();
                write!(f, "{{{}}}", items.join(", "))
            }
            IntegerSet::Periodic(classes) => {
                let parts: Vec<String> = classes
                    .iter()
                    .map(|c| {
                        let rs: Vec<String> = c.residues.iter().map(|r| r.to_string()).collect();
                        format!("λ mod {} in {{{}}}", c.modulus(), rs.join(", "))
                    })
                    .collect();
                write!(f, "{}", parts.join(" and "))
            }
        }
    }
}

fn clear_denominators(poly: &[Rat]) -> Vec<Int> {
    let den = common_denominator(poly);
    poly.iter()
        .map(|q| (q * Rat::from_integer(den.clone())).to_integer())
        .collect()
}

fn eval_int(poly: &[Int], x: &Int) -> Int {
    poly.iter().rev().fold(Int::zero(), |acc, c| acc * x + c)
}

/// All integer roots of a nonzero integer polynomial.
fn integer_roots(poly: &[Int]) -> Result<BTreeSet<Int>, AlgebraError> {
    let mut roots = BTreeSet::new();
    let shift = poly.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let reduced = &poly[shift..];
    if shift > 0 {
        roots.insert(Int::zero());
    }
    if reduced.len() <= 1 {
        return Ok(roots);
    }
    // A nonzero integer root divides the constant term of the reduced polynomial.
    let c0 = reduced[0].abs();
    let factors =
        factor_small(&c0, FACTOR_LIMIT).ok_or_else(|| AlgebraError::FactorLimit(c0.to_string()))?;
    let mut divisors = vec![Int::one()];
    for (p, e) in factors {
        let mut next = Vec::new();
        for d in &divisors {
            let mut pk = Int::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= Int::from(p);
            }
        }
        divisors = next;
    }
    for d in divisors {
        for cand in [d.clone(), -d] {
            if eval_int(reduced, &cand).is_zero() {
                roots.insert(cand);
            }
        }
    }
    Ok(roots)
}

/// Residues `r mod p^e` with `poly(r) ≡ 0 (mod p^e)`, found by lifting from `p` upward.
fn solve_prime_power(poly: &[Int], p: u64, e: u32) -> Result<PrimePowerClasses, AlgebraError> {
    let modulus = (p as u128)
        .checked_pow(e)
        .filter(|m| *m <= u64::MAX as u128)
        .ok_or_else(|| AlgebraError::FactorLimit(format!("{p}^{e}")))?;
    let reduced: Vec<u128> = poly
        .iter()
        .map(|c| c.mod_floor(&Int::from(modulus)).to_u128().unwrap())
        .collect();
    let eval_mod = |x: u128, m: u128| -> u128 {
        reduced
            .iter()
            .rev()
            .fold(0u128, |acc, c| (mulmod(acc, x, m) + c % m) % m)
    };
    let mut residues: Vec<u128> = (0..p as u128).filter(|&r| eval_mod(r, p as u128) == 0).collect();
    let mut m = p as u128;
    for _ in 1..e {
        let next_m = m * p as u128;
        let mut lifted = Vec::new();
        for &r in &residues {
            for t in 0..p as u128 {
                let cand = r + t * m;
                if eval_mod(cand, next_m) == 0 {
                    lifted.push(cand);
                }
            }
        }
        residues = lifted;
        m = next_m;
    }
    Ok(PrimePowerClasses {
        prime: p,
        exponent: e,
        residues: residues.into_iter().map(|r| r as u64).collect(),
    })
}

fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        (a % m) * (b % m) % m
    } else {
        ((Int::from(a) * Int::from(b)) % Int::from(m)).to_u128().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ring::rat;

    #[test]
    fn roots_of_quadratic() {
        // λ² - λ = λ(λ - 1)
        let s = IntegerSet::zeros_of(&[rat(0, 1), rat(-1, 1), rat(1, 1)]).unwrap();
        assert_eq!(s, IntegerSet::Finite([Int::from(0), Int::from(1)].into()));
        // λ² = 0 only at 0; 2λ² + 3 has no integer roots
        let s = IntegerSet::zeros_of(&[rat(0, 1), rat(0, 1), rat(1, 2)]).unwrap();
        assert_eq!(s, IntegerSet::singleton(0));
        let s = IntegerSet::zeros_of(&[rat(3, 1), rat(0, 1), rat(2, 1)]).unwrap();
        assert!(s.is_empty());
        assert_eq!(IntegerSet::zeros_of(&[]).unwrap(), IntegerSet::All);
    }

    #[test]
    fn integer_valued_conditions() {
        // λ(λ-1)/2 is always an integer
        let s = IntegerSet::integer_values_of(&[rat(0, 1), rat(-1, 2), rat(1, 2)]).unwrap();
        assert_eq!(s, IntegerSet::All);
        // λ/6 integral iff 6 | λ
        let s = IntegerSet::integer_values_of(&[rat(0, 1), rat(1, 6)]).unwrap();
        assert_eq!(s.within(13), vec![Int::from(-12), Int::from(-6), Int::from(0), Int::from(6), Int::from(12)]);
        // λ²/4 integral iff λ even
        let s = IntegerSet::integer_values_of(&[rat(0, 1), rat(0, 1), rat(1, 4)]).unwrap();
        assert!(s.contains(&Int::from(2)) && !s.contains(&Int::from(3)));
    }

    #[test]
    fn brute_force_agreement() {
        let poly = [rat(1, 3), rat(5, 6), rat(-7, 12), rat(1, 8)];
        let s = IntegerSet::integer_values_of(&poly).unwrap();
        for n in -200i64..=200 {
            let v = poly
                .iter()
                .rev()
                .fold(rat(0, 1), |acc, c| acc * rat(n, 1) + c);
            assert_eq!(s.contains(&Int::from(n)), v.is_integer(), "n = {n}");
        }
    }

    #[test]
    fn intersections() {
        let evens = IntegerSet::integer_values_of(&[rat(0, 1), rat(1, 2)]).unwrap();
        let fours = IntegerSet::integer_values_of(&[rat(0, 1), rat(1, 4)]).unwrap();
        let threes = IntegerSet::integer_values_of(&[rat(0, 1), rat(1, 3)]).unwrap();
        let both = evens.intersect(&fours).intersect(&threes);
        assert_eq!(both.within(24), vec![Int::from(-24), Int::from(-12), Int::from(0), Int::from(12), Int::from(24)]);
        let finite = IntegerSet::Finite([Int::from(0), Int::from(6), Int::from(12)].into());
        assert_eq!(finite.intersect(&both), IntegerSet::Finite([Int::from(0), Int::from(12)].into()));
        assert_eq!(both.to_string(), "λ mod 4 in {0} and λ mod 3 in {0}");
    }
}
