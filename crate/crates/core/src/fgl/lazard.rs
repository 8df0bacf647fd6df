use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactalg::{
    common_denominator, hnf_basis, lazard_generators, Generators, GradedPoly, Int, IntMatrix,
    Monomial, Rat, Ring,
};

use super::{universal_fgl, FglError, FormalGroupLaw};

/// Exponent vectors of weight `2k` in `m_1..m_k`, `m_1^k` first and `m_k` last.
pub fn weight_monomials(k: u32) -> Vec<Monomial> {
    fn go(k: u32, max_part: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k == 0 {
            out.push(Monomial::new(exps.clone()));
            return;
        }
        for part in 1..=max_part.min(k) {
            exps[part as usize - 1] += 1;
            go(k - part, part, exps, out);
            exps[part as usize - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut vec![0; k as usize], &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// The degree-`2k` part of the Lazard ring as a full-rank lattice in `Q[m]_{2k}`.
///
/// Row `r` of the basis is the polynomial `Σ_c basis[r][c] / denominator · monomials[c]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LazardDegree {
    pub k: u32,
    pub monomials: Vec<Monomial>,
    pub denominator: Int,
    pub basis: IntMatrix,
}

impl LazardDegree {
    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    fn from_vectors(k: u32, monomials: Vec<Monomial>, vectors: &[Vec<Rat>]) -> Self {
        let den = common_denominator(vectors.iter().flatten());
        let rows: Vec<Vec<Int>> = vectors
            .iter()
            .map(|v| v.iter().map(|q| (q * Rat::from_integer(den.clone())).to_integer()).collect())
            .collect();
        let mut basis = hnf_basis(&IntMatrix::from_rows(&rows));
        let mut g = den.clone();
        for row in basis.rows_iter() {
            for c in row {
                g = g.gcd(c);
            }
        }
        let mut denominator = den;
        if !g.is_one() && !g.is_zero() {
            denominator /= &g;
            for i in 0..basis.nrows() {
                for j in 0..basis.ncols() {
                    basis[(i, j)] /= &g;
                }
            }
        }
        LazardDegree {
            k,
            monomials,
            denominator,
            basis,
        }
    }
}

/// `L_{2k}` for `k = 1..=K`, generated by the coefficients of the universal law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LazardLattice {
    gens: Generators,
    degrees: Vec<LazardDegree>,
}

/// Lattices `L_2, ..., L_{2K}`; builds the universal law to cutoff `K + 1`.
pub fn lazard_basis(max_k: u32) -> Result<LazardLattice, FglError> {
    let univ = universal_fgl(max_k + 1)?;
    LazardLattice::build(&univ, max_k)
}

impl LazardLattice {
    /// `L_{2k}` is spanned by the `α_ij` with `i + j = k + 1` together with
    /// products `L_{2a}·L_{2b}`, `a + b = k`; that span equals the span of all
    /// α-monomials of weight `2k`.
    pub fn build(univ: &FormalGroupLaw<GradedPoly>, max_k: u32) -> Result<Self, FglError> {
        if max_k < 1 {
            return Err(FglError::InvalidDegree);
        }
        if univ.cutoff() < max_k + 1 {
            return Err(FglError::CutoffTooSmall {
                needed: max_k + 1,
                have: univ.cutoff(),
            });
        }
        let gens = lazard_generators(max_k as usize);
        let mut lattice = LazardLattice {
            gens,
            degrees: Vec::new(),
        };
        for k in 1..=max_k {
            let monomials = weight_monomials(k);
            let index: HashMap<&Monomial, usize> =
                monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let to_vec = |p: &GradedPoly| {
                let mut v = vec![<Rat as Ring>::zero(); monomials.len()];
                for (m, c) in p.terms() {
                    v[index[m]] = c.clone();
                }
                v
            };
            let mut vectors = Vec::new();
            for i in 1..=(k + 1) / 2 {
                vectors.push(to_vec(&univ.alpha(i, k + 1 - i)));
            }
            for a in 1..=k / 2 {
                let b = k - a;
                let left = lattice.basis_polys(a)?;
                let right = lattice.basis_polys(b)?;
                for (p, lp) in left.iter().enumerate() {
                    for (q, rq) in right.iter().enumerate() {
                        if a == b && q < p {
                            continue;
                        }
                        vectors.push(to_vec(&lp.mul(rq)));
                    }
                }
            }
            lattice
                .degrees
                .push(LazardDegree::from_vectors(k, monomials.clone(), &vectors));
        }
        Ok(lattice)
    }

    pub(crate) fn from_parts(gens: Generators, degrees: Vec<LazardDegree>) -> Self {
        LazardLattice { gens, degrees }
    }

    /// Largest `k` with `L_{2k}` available.
    pub fn max_degree(&self) -> u32 {
        self.degrees.len() as u32
    }

    pub fn generators(&self) -> &Generators {
        &self.gens
    }

    pub fn degrees(&self) -> &[LazardDegree] {
        &self.degrees
    }

    pub fn degree(&self, k: u32) -> Result<&LazardDegree, FglError> {
        if k == 0 || k > self.max_degree() {
            return Err(FglError::DegreeOutOfRange {
                k,
                cutoff: self.max_degree(),
            });
        }
        Ok(&self.degrees[k as usize - 1])
    }

    pub fn rank(&self, k: u32) -> Result<usize, FglError> {
        Ok(self.degree(k)?.rank())
    }

    /// Basis of `L_{2k}` as polynomials.
    pub fn basis_polys(&self, k: u32) -> Result<Vec<GradedPoly>, FglError> {
        let d = self.degree(k)?;
        Ok(d
            .basis
            .rows_iter()
            .map(|row| {
                GradedPoly::from_terms(
                    Some(self.gens.clone()),
                    d.monomials
                        .iter()
                        .zip(row)
                        .map(|(m, c)| (m.clone(), Rat::new(c.clone(), d.denominator.clone()))),
                )
            })
            .collect())
    }

    /// Coordinates of `p` over Q in the basis of `L_{2k}`.
    pub fn rational_coords(&self, k: u32, p: &GradedPoly) -> Result<Vec<Rat>, FglError> {
        let d = self.degree(k)?;
        if !p.is_zero() && p.homogeneous_weight() != Some(2 * k) {
            return Err(FglError::Inhomogeneous { expected: 2 * k });
        }
        let index: HashMap<&Monomial, usize> =
            d.monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let scale = Rat::from_integer(d.denominator.clone());
        let mut rest = vec![<Rat as Ring>::zero(); d.monomials.len()];
        for (m, c) in p.terms() {
            let i = *index.get(m).ok_or(FglError::Inhomogeneous { expected: 2 * k })?;
            rest[i] = c * &scale;
        }
        let mut coords = vec![<Rat as Ring>::zero(); d.rank()];
        for (i, ci) in coords.iter_mut().enumerate() {
            let row = d.basis.row(i);
            let Some(piv) = row.iter().position(|c| !c.is_zero()) else {
                continue;
            };
            let q = &rest[piv] / Rat::from_integer(row[piv].clone());
            for (x, a) in rest.iter_mut().zip(row) {
                *x -= &q * Rat::from_integer(a.clone());
            }
            *ci = q;
        }
        if rest.iter().any(|x| !Ring::is_zero(x)) {
            // full rank in every degree, so this only happens on a corrupted basis
            return Err(FglError::NotInLattice);
        }
        Ok(coords)
    }

    /// Integer coordinates of `p` in `L_{2k}`, or `NotInLattice`.
    pub fn membership(&self, k: u32, p: &GradedPoly) -> Result<Vec<Int>, FglError> {
        let coords = self.rational_coords(k, p)?;
        if coords.iter().all(|c| c.is_integer()) {
            Ok(coords.into_iter().map(|c| c.to_integer()).collect())
        } else {
            Err(FglError::NotInLattice)
        }
    }

    pub fn contains(&self, k: u32, p: &GradedPoly) -> Result<bool, FglError> {
        match self.membership(k, p) {
            Ok(_) => Ok(true),
            Err(FglError::NotInLattice) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// The generator of `L_2`.
    pub fn degree_two_generator(&self) -> GradedPoly {
        self.basis_polys(1)
            .expect("degree one always present")
            .remove(0)
    }
}

/// Every product of `α_ij` (`i, j ≥ 1`) of total weight `2k`.
pub fn alpha_monomials(univ: &FormalGroupLaw<GradedPoly>, k: u32) -> Vec<GradedPoly> {
    let mut pairs = Vec::new();
    for i in 1..=k {
        for j in i..=k + 1 - i {
            let a = univ.alpha(i, j);
            if !a.is_zero() {
                pairs.push((i + j - 1, a));
            }
        }
    }
    fn go(
        pairs: &[(u32, GradedPoly)],
        start: usize,
        left: u32,
        acc: GradedPoly,
        out: &mut Vec<GradedPoly>,
    ) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for idx in start..pairs.len() {
            let (w, a) = &pairs[idx];
            if *w <= left {
                go(pairs, idx, left - w, acc.mul(a), out);
            }
        }
    }
    let mut out = Vec::new();
    go(&pairs, 0, k, GradedPoly::one(), &mut out);
    out
}
