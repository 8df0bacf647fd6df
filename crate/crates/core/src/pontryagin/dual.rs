use crate::exactalg::Ring;
use crate::series::{SeriesError, TruncatedSeries, Var};

use super::{PontryaginError, PontryaginTable};

/// The homology map dual to the substitution `x ↦ s(x)`:
/// `β_n ↦ Σ_k ([x^n] s(x)^k) β_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualEndomorphism<R> {
    max_index: u32,
    /// `matrix[n][k] = [x^n] s^k`.
    matrix: Vec<Vec<R>>,
}

pub fn dual_endomorphism<R: Ring>(
    s: &TruncatedSeries<R>,
    max_index: u32,
) -> Result<DualEndomorphism<R>, PontryaginError> {
    let coeffs = s.univariate_coeffs(Var::X)?;
    if !s.constant_term().is_zero() {
        return Err(SeriesError::NonzeroConstantTerm("x").into());
    }
    let needed = max_index;
    if s.cutoff() < needed {
        return Err(PontryaginError::CutoffTooSmall {
            needed,
            have: s.cutoff(),
        });
    }
    let s = TruncatedSeries::univariate(Var::X, coeffs, needed);
    let powers: Vec<Vec<R>> = s
        .powers(max_index)
        .iter()
        .map(|p| {
            let mut c = p.univariate_coeffs(Var::X).expect("univariate");
            c.resize(needed as usize + 1, R::zero());
            c
        })
        .collect();
    let matrix = (0..=needed as usize)
        .map(|n| powers.iter().map(|p| p[n].clone()).collect())
        .collect();
    Ok(DualEndomorphism { max_index, matrix })
}

impl<R: Ring> DualEndomorphism<R> {
    pub fn max_index(&self) -> u32 {
        self.max_index
    }

    pub fn entry(&self, n: u32, k: u32) -> R {
        self.matrix[n as usize][k as usize].clone()
    }

    /// Image of `β_n` in the `β` basis.
    pub fn image(&self, n: u32) -> Vec<R> {
        self.matrix[n as usize].clone()
    }

    pub fn rows(&self) -> &[Vec<R>] {
        &self.matrix
    }

    pub fn apply(&self, u: &[R]) -> Vec<R> {
        let mut out = vec![R::zero(); self.matrix.len()];
        for (n, un) in u.iter().enumerate() {
            for (slot, d) in out.iter_mut().zip(&self.matrix[n]) {
                *slot = slot.add(&un.mul(d));
            }
        }
        out
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.matrix
            .iter()
            .enumerate()
            .all(|(n, row)| row.iter().skip(n + 1).all(R::is_zero))
    }

    /// First `(i, j)` with `D(β_i•β_j) ≠ D(β_i)•D(β_j)`, for `i + j ≤ M`.
    ///
    /// `None` exactly when `s` is an endomorphism of the law behind `table` to this order.
    /// Relies on lower-triangularity, which holds since `s(0) = 0`.
    pub fn product_violation(&self, table: &PontryaginTable<R>) -> Option<(u32, u32)> {
        let m = self.max_index.min(table.max_index());
        for i in 0..=m {
            for j in 0..=m - i {
                let bi = PontryaginTable::<R>::basis_vector(i);
                let bj = PontryaginTable::<R>::basis_vector(j);
                let mut lhs = self.apply(&table.product(&bi, &bj).ok()?);
                let di = &self.matrix[i as usize][..=i as usize];
                let dj = &self.matrix[j as usize][..=j as usize];
                let mut rhs = table.product(di, dj).ok()?;
                lhs.resize(m as usize + 1, R::zero());
                rhs.resize(m as usize + 1, R::zero());
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, Rat};
    use crate::fgl::{additive, multiplicative};
    use crate::pontryagin::structure_constants;

    fn series(coeffs: &[i64], cutoff: u32) -> TruncatedSeries<Rat> {
        TruncatedSeries::univariate(Var::X, coeffs.iter().map(|&c| rat(c, 1)).collect(), cutoff)
    }

    #[test]
    fn identity_and_doubling() {
        let id = dual_endomorphism(&series(&[0, 1], 9), 8).unwrap();
        let dbl = dual_endomorphism(&series(&[0, 2], 9), 8).unwrap();
        for n in 0..=8u32 {
            for k in 0..=8 {
                let one = if n == k { rat(1, 1) } else { rat(0, 1) };
                assert_eq!(id.entry(n, k), one);
                let pow = if n == k { rat(1 << n, 1) } else { rat(0, 1) };
                assert_eq!(dbl.entry(n, k), pow);
            }
        }
        let table = structure_constants(&additive::<Rat>(9), 8).unwrap();
        assert_eq!(dbl.product_violation(&table), None);
    }

    #[test]
    fn quadratic_substitution() {
        let d = dual_endomorphism(&series(&[0, 1, 1], 6), 5).unwrap();
        assert!(d.is_lower_triangular());
        // pairing ⟨β_2, s^k⟩ by hand: s = x + x², s² = x² + 2x³ + x⁴
        assert_eq!(d.image(2), vec![rat(0, 1), rat(1, 1), rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(d.image(3)[2], rat(2, 1));
        // x + x² is the 2-series of x + y + xy up to a shift: [2](x) = 2x + x²
        let mult = structure_constants(&multiplicative::<Rat>(6), 5).unwrap();
        assert!(d.product_violation(&mult).is_some());
        let two = dual_endomorphism(&series(&[0, 2, 1], 6), 5).unwrap();
        assert_eq!(two.product_violation(&mult), None);
    }

    #[test]
    fn rejects_constant_term() {
        let err = dual_endomorphism(&series(&[1, 1], 4), 3).unwrap_err();
        assert!(matches!(err, PontryaginError::Series(_)));
    }
}
