//! Pontrjagin-ring structure constants dual to a formal group law:
//! `β_i • β_j = Σ_k c_ij^k β_k` with `c_ij^k = [x^i y^j] F(x,y)^k`.

mod closed;
mod dual;

use std::collections::BTreeMap;

use serde_json::json;
use thiserror::Error;

use crate::exactalg::Ring;
use crate::fgl::FormalGroupLaw;
use crate::series::SeriesError;

pub use closed::{k_theory_closed_form, KTheoryProduct};
pub use dual::{dual_endomorphism, DualEndomorphism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PontryaginError {
    #[error("law cutoff {have} is too small, need at least {needed}")]
    CutoffTooSmall { needed: u32, have: u32 },
    #[error("index {index} exceeds the table bound {max}")]
    IndexOutOfRange { index: u32, max: u32 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Structure constants `c_ij^k` for all `i + j ≤ M`.
#[derive(Clone, Debug, PartialEq)]
pub struct PontryaginTable<R> {
    source: String,
    max_index: u32,
    entries: BTreeMap<(u32, u32, u32), R>,
}

/// Reads `c_ij^k` off the powers `F^0, ..., F^M`. The law must be known through degree `M`.
pub fn structure_constants<R: Ring>(
    f: &FormalGroupLaw<R>,
    max_index: u32,
) -> Result<PontryaginTable<R>, PontryaginError> {
    let needed = max_index;
    if f.cutoff() < needed {
        return Err(PontryaginError::CutoffTooSmall {
            needed,
            have: f.cutoff(),
        });
    }
    let powers = f.series().truncate(needed).powers(max_index);
    let mut entries = BTreeMap::new();
    for (k, pk) in powers.iter().enumerate() {
        for (e, c) in pk.terms() {
            entries.insert((e[0], e[1], k as u32), c.clone());
        }
    }
    Ok(PontryaginTable {
        source: f.name().to_string(),
        max_index,
        entries,
    })
}

/// `Σ Π_r α_{a_r b_r}` over pairs of `k`-part compositions `a` of `i` and `b` of `j`.
///
/// Independent of series powers; agrees with `c_ij^k` by expanding `F^k` as a
/// product of `k` copies of `Σ α_ab x^a y^b`.
pub fn composition_sum<R: Ring>(f: &FormalGroupLaw<R>, i: u32, j: u32, k: u32) -> R {
    let pairs: Vec<(u32, u32, R)> = f
        .alpha_table()
        .into_iter()
        .filter(|((a, b), _)| *a <= i && *b <= j)
        .map(|((a, b), c)| (a, b, c))
        .collect();
    fn go<R: Ring>(pairs: &[(u32, u32, R)], i: u32, j: u32, parts: u32) -> R {
        if parts == 0 {
            return if i == 0 && j == 0 { R::one() } else { R::zero() };
        }
        let mut acc = R::zero();
        for (a, b, c) in pairs {
            if *a <= i && *b <= j {
                let rest = go(pairs, i - a, j - b, parts - 1);
                if !rest.is_zero() {
                    acc = acc.add(&c.mul(&rest));
                }
            }
        }
        acc
    }
    go(&pairs, i, j, k)
}

impl<R: Ring> PontryaginTable<R> {
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn max_index(&self) -> u32 {
        self.max_index
    }

    /// `c_ij^k`; zero outside the table.
    pub fn get(&self, i: u32, j: u32, k: u32) -> R {
        self.entries.get(&(i, j, k)).cloned().unwrap_or_else(R::zero)
    }

    /// Nonzero entries in `(i, j, k)` order.
    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32, u32), &R)> {
        self.entries.iter()
    }

    /// Product of two elements given by their coordinates in the `β` basis.
    pub fn product(&self, u: &[R], v: &[R]) -> Result<Vec<R>, PontryaginError> {
        let top = (u.len() + v.len()).saturating_sub(2) as u32;
        if top > self.max_index {
            return Err(PontryaginError::IndexOutOfRange {
                index: top,
                max: self.max_index,
            });
        }
        let mut out = vec![R::zero(); top as usize + 1];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let uv = ui.mul(vj);
                for (k, slot) in out.iter_mut().enumerate().take(i + j + 1) {
                    let c = self.get(i as u32, j as u32, k as u32);
                    if !c.is_zero() {
                        *slot = slot.add(&uv.mul(&c));
                    }
                }
            }
        }
        while out.len() > 1 && out.last().is_some_and(R::is_zero) {
            out.pop();
        }
        Ok(out)
    }

    /// `β_n` as a coordinate vector.
    pub fn basis_vector(n: u32) -> Vec<R> {
        let mut v = vec![R::zero(); n as usize + 1];
        v[n as usize] = R::one();
        v
    }

    /// First `(i, j, k)` with `c_ij^k ≠ c_ji^k`.
    pub fn symmetry_violation(&self) -> Option<(u32, u32, u32)> {
        self.entries
            .iter()
            .find(|((i, j, k), c)| self.get(*j, *i, *k) != **c)
            .map(|(key, _)| *key)
    }

    /// First `(i, j, l, k)` with `(β_i•β_j)•β_l ≠ β_i•(β_j•β_l)` at `β_k`, for `i + j + l ≤ M`.
    pub fn associativity_violation(&self) -> Option<(u32, u32, u32, u32)> {
        let m = self.max_index;
        for i in 0..=m {
            for j in 0..=m - i {
                for l in 0..=m - i - j {
                    for k in 0..=i + j + l {
                        let mut lhs = R::zero();
                        for p in 0..=i + j {
                            lhs = lhs.add(&self.get(i, j, p).mul(&self.get(p, l, k)));
                        }
                        let mut rhs = R::zero();
                        for q in 0..=j + l {
                            rhs = rhs.add(&self.get(j, l, q).mul(&self.get(i, q, k)));
                        }
                        if lhs != rhs {
                            return Some((i, j, l, k));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,k,coefficient\n");
        for ((i, j, k), c) in &self.entries {
            out.push_str(&format!("{i},{j},{k},{c}\n"));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<_> = self
            .entries
            .iter()
            .map(|((i, j, k), c)| json!({ "i": i, "j": j, "k": k, "coefficient": c.to_string() }))
            .collect();
        json!({ "source": self.source, "max_index": self.max_index, "entries": entries })
    }
}

/// `β_1^{•n}` in the `β` basis.
pub fn beta1_power<R: Ring>(table: &PontryaginTable<R>, n: u32) -> Result<Vec<R>, PontryaginError> {
    if n > table.max_index() {
        return Err(PontryaginError::IndexOutOfRange {
            index: n,
            max: table.max_index(),
        });
    }
    let beta1 = PontryaginTable::<R>::basis_vector(1);
    let mut acc = PontryaginTable::<R>::basis_vector(0);
    for _ in 0..n {
        acc = table.product(&acc, &beta1)?;
    }
    Ok(acc)
}

/// `Σ c_k β_k` as text, highest index first: `2*β2 - 2*m1*β1`.
pub fn format_beta<R: Ring>(coords: &[R]) -> String {
    let mut out = String::new();
    for (k, c) in coords.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let text = c.to_string();
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) if !rest.contains(" + ") && !rest.contains(" - ") => (true, rest.to_string()),
            _ => (false, text.clone()),
        };
        let compound = body.contains(" + ") || body.contains(" - ");
        let coeff = if body == "1" {
            String::new()
        } else if compound {
            format!("({body})*")
        } else {
            format!("{body}*")
        };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&format!("{coeff}β{k}"));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{binomial, factorial, int_rat, lazard_generators, rat, GradedPoly, Rat};
    use crate::fgl::{additive, multiplicative, universal_fgl};

    #[test]
    fn additive_constants_are_binomials() {
        let t = structure_constants(&additive::<Rat>(9), 8).unwrap();
        for i in 0..=8u32 {
            for j in 0..=8 - i {
                for k in 0..=8 {
                    let expect = if k == i + j { int_rat(binomial(i + j, i)) } else { rat(0, 1) };
                    assert_eq!(t.get(i, j, k), expect);
                }
            }
        }
    }

    #[test]
    fn universal_square_of_beta1() {
        let f = universal_fgl(5).unwrap();
        let t = structure_constants(&f, 4).unwrap();
        let sq = beta1_power(&t, 2).unwrap();
        let m1 = GradedPoly::generator(&lazard_generators(4), 0);
        assert_eq!(sq, vec![GradedPoly::zero(), m1.scale(&rat(-2, 1)), GradedPoly::from_int(2)]);
        assert_eq!(format_beta(&sq), "2*β2 - 2*m1*β1");
        assert_eq!(composition_sum(&f, 1, 1, 2), GradedPoly::from_int(2));
        assert_eq!(composition_sum(&f, 1, 1, 1), f.alpha(1, 1));
        assert!(composition_sum(&f, 2, 0, 1).is_zero());
        let b4 = beta1_power(&t, 4).unwrap();
        assert_eq!(b4[4], GradedPoly::constant(int_rat(factorial(4))));
    }

    #[test]
    fn unit_and_symmetry() {
        let t = structure_constants(&multiplicative::<Rat>(7), 6).unwrap();
        for j in 0..=6 {
            for k in 0..=6 {
                assert_eq!(t.get(0, j, k), if j == k { rat(1, 1) } else { rat(0, 1) });
            }
        }
        assert_eq!(t.symmetry_violation(), None);
        assert_eq!(t.associativity_violation(), None);
    }

    #[test]
    fn cutoff_checked() {
        let err = structure_constants(&additive::<Rat>(4), 5).unwrap_err();
        assert_eq!(err, PontryaginError::CutoffTooSmall { needed: 5, have: 4 });
    }

    #[test]
    fn csv_export() {
        let t = structure_constants(&additive::<Rat>(3), 2).unwrap();
        assert_eq!(
            t.to_csv(),
            "i,j,k,coefficient\n0,0,0,1\n0,1,1,1\n0,2,2,1\n1,0,1,1\n1,1,2,2\n2,0,2,1\n"
        );
    }
}
