use std::fmt;

use super::ring::{Rat, Ring};

/// Polynomial in a single integer parameter `lambda` over a coefficient ring.
///
/// Used to run the homomorphism solver symbolically in the free parameter of
/// the seed coefficient. `coeffs[p]` is the coefficient of `lambda^p`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamPoly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> ParamPoly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ParamPoly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        ParamPoly::new(vec![c])
    }

    /// `base + lambda * direction`.
    pub fn line(base: R, direction: R) -> Self {
        ParamPoly::new(vec![base, direction])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, p: usize) -> R {
        self.coeffs.get(p).cloned().unwrap_or_else(R::zero)
    }

    /// Degree in the parameter, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> ParamPoly<S> {
        ParamPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// Substitute a concrete parameter value.
    pub fn eval(&self, lambda: &Rat) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(lambda).add(c);
        }
        acc
    }
}

impl<R: Ring> fmt::Display for ParamPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (p, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            match p {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*lambda")?,
                _ => write!(f, "({c})*lambda^{p}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<R: Ring> Ring for ParamPoly<R> {
    fn zero() -> Self {
        ParamPoly { coeffs: Vec::new() }
    }
    fn one() -> Self {
        ParamPoly::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ParamPoly::new((0..n).map(|p| self.coeff(p).add(&rhs.coeff(p))).collect())
    }
    fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ParamPoly::new((0..n).map(|p| self.coeff(p).sub(&rhs.coeff(p))).collect())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        ParamPoly::new(out)
    }
    fn neg(&self) -> Self {
        ParamPoly {
            coeffs: self.coeffs.iter().map(Ring::neg).collect(),
        }
    }
    fn from_rat(q: &Rat) -> Self {
        ParamPoly::constant(R::from_rat(q))
    }
    fn scale(&self, q: &Rat) -> Self {
        ParamPoly::new(self.coeffs.iter().map(|c| c.scale(q)).collect())
    }
    fn compatible(&self, other: &Self) -> bool {
        match (self.coeffs.first(), other.coeffs.first()) {
            (Some(a), Some(b)) => a.compatible(b),
            _ => true,
        }
    }
}
