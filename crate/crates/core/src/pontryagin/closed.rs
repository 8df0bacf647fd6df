use std::collections::BTreeMap;
use std::fmt;

use crate::exactalg::{binomial_signed, bott_generator, int_rat, GradedPoly, Int, Ring};

/// `t^iY_i • t^jY_j = t^{i+j} Σ_k coeffs[k] Y_k` in the homology of `CP^∞`
/// with the K-theory orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTheoryProduct {
    pub i: u32,
    pub j: u32,
    pub coeffs: BTreeMap<u32, Int>,
}

/// `Σ_{k=max(i,j)}^{i+j} C(k, 2k-(i+j)) C(2k-(i+j), k-j) Y_k`, times `t^{i+j}`.
pub fn k_theory_closed_form(i: u32, j: u32) -> KTheoryProduct {
    let n = (i + j) as i64;
    let mut coeffs = BTreeMap::new();
    for k in i.max(j)..=i + j {
        let k = k as i64;
        let c = binomial_signed(k, 2 * k - n) * binomial_signed(2 * k - n, k - j as i64);
        if c != Int::from(0) {
            coeffs.insert(k as u32, c);
        }
    }
    KTheoryProduct { i, j, coeffs }
}

impl KTheoryProduct {
    pub fn t_power(&self) -> u32 {
        self.i + self.j
    }

    /// Coordinates in the basis `β_k = t^k Y_k`: the `β_k` coefficient is `coeffs[k]·t^{i+j-k}`.
    pub fn to_beta(&self) -> Vec<GradedPoly> {
        let t = GradedPoly::generator(&bott_generator(), 0);
        let mut out = vec![GradedPoly::zero(); self.t_power() as usize + 1];
        for (&k, c) in &self.coeffs {
            out[k as usize] = t.pow(self.t_power() - k).scale(&int_rat(c.clone()));
        }
        out
    }
}

/// `t^2*(Y1 + 2*Y2)`.
impl fmt::Display for KTheoryProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.t_power() {
            0 => {}
            1 => write!(f, "t*")?,
            p => write!(f, "t^{p}*")?,
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| if *c == Int::from(1) { format!("Y{k}") } else { format!("{c}*Y{k}") })
            .collect();
        if terms.len() == 1 && self.coeffs.values().all(|c| *c == Int::from(1)) {
            write!(f, "{}", terms[0])
        } else {
            write!(f, "({})", terms.join(" + "))
        }
    }
}
