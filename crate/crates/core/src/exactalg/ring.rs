use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rat = BigRational;

/// A commutative ring with unit whose elements can absorb rational scalars.
///
/// Every coefficient domain used by the series and formal group law code
/// implements this: plain rationals, graded polynomials over Q, Laurent
/// polynomials in `u, v`, and polynomials in an integer parameter over any of those.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rat(q: &Rat) -> Self;

    fn scale(&self, q: &Rat) -> Self {
        self.mul(&Self::from_rat(q))
    }

    fn from_int(n: i64) -> Self {
        Self::from_rat(&Rat::from_integer(n.into()))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Whether two elements live in the same concrete ring (e.g. agree on generator names).
    fn compatible(&self, _other: &Self) -> bool {
        true
    }
}

impl Ring for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn is_zero(&self) -> bool {
        <Rat as Zero>::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rat(q: &Rat) -> Self {
        q.clone()
    }
    fn scale(&self, q: &Rat) -> Self {
        self * q
    }
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

pub fn int_rat(n: impl Into<Int>) -> Rat {
    Rat::from_integer(n.into())
}

/// Canonical text of a rational: `-3/2`, `7`.
pub fn rat_to_string(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn is_integer(q: &Rat) -> bool {
    q.denom().is_one()
}

pub fn factorial(n: u32) -> Int {
    (1..=n).fold(Int::one(), |acc, k| acc * Int::from(k))
}

pub fn binomial(n: u32, k: u32) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

/// Binomial coefficient that is zero for negative arguments.
pub fn binomial_signed(n: i64, k: i64) -> Int {
    if n < 0 || k < 0 || k > n {
        Int::zero()
    } else {
        binomial(n as u32, k as u32)
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Int {
    values
        .into_iter()
        .fold(Int::one(), |acc, q| acc.lcm(q.denom()))
}

/// Prime factorization by trial division. `None` when a cofactor above `limit²` resists.
pub fn factor_small(n: &Int, limit: u64) -> Option<Vec<(u64, u32)>> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return None;
    }
    let mut p = 2u64;
    while p <= limit {
        let bp = Int::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        let limit_sq = Int::from(limit) * Int::from(limit);
        if n > limit_sq {
            return None;
        }
        out.push((n.to_u64()?, 1));
    }
    Some(out)
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &Int, p: u64) -> u32 {
    let p = Int::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut p = n + 1;
    while !is_prime(p) {
        p += 1;
    }
    p
}

/// Number of partitions of `n`.
pub fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    let mut table = vec![0u64; n + 1];
    table[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            table[total] += table[total - part];
        }
    }
    table[n]
}
