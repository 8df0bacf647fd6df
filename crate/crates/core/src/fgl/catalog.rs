use crate::exactalg::{bott_generator, lazard_generators, GradedPoly, Ring};
use crate::series::{TruncatedSeries, Var};

use super::{FglError, FormalGroupLaw};

pub const LAW_NAMES: [&str; 4] = ["additive", "multiplicative", "k-theory", "universal"];

/// `x + y`.
pub fn additive<R: Ring>(cutoff: u32) -> FormalGroupLaw<R> {
    let s = TruncatedSeries::var(Var::X, cutoff).add(&TruncatedSeries::var(Var::Y, cutoff));
    FormalGroupLaw::new("additive", "Z", s)
}

/// `x + y + xy`.
pub fn multiplicative<R: Ring>(cutoff: u32) -> FormalGroupLaw<R> {
    let s = TruncatedSeries::from_terms(
        cutoff,
        [
            ([1, 0, 0], R::one()),
            ([0, 1, 0], R::one()),
            ([1, 1, 0], R::one()),
        ],
    );
    FormalGroupLaw::new("multiplicative", "Z", s)
}

/// `x + y + t·xy` over `Z[t]`, `t` of weight 2.
pub fn k_theory(cutoff: u32) -> FormalGroupLaw<GradedPoly> {
    let t = GradedPoly::generator(&bott_generator(), 0);
    let s = TruncatedSeries::from_terms(
        cutoff,
        [
            ([1, 0, 0], GradedPoly::one()),
            ([0, 1, 0], GradedPoly::one()),
            ([1, 1, 0], t),
        ],
    );
    FormalGroupLaw::new("k-theory", "Z[t]", s)
}

/// The universal law through total degree `cutoff`: `F = l⁻¹(l(x) + l(y))` with
/// `l(x) = x + m_1 x² + ... + m_{K-1} x^K`, so `α_ij` lies in `Q[m_1..m_{K-1}]`.
pub fn universal_fgl(cutoff: u32) -> Result<FormalGroupLaw<GradedPoly>, FglError> {
    if cutoff < 1 {
        return Err(FglError::InvalidDegree);
    }
    let gens = lazard_generators(cutoff.saturating_sub(1) as usize);
    let mut coeffs = vec![GradedPoly::zero(), GradedPoly::one()];
    for i in 0..gens.len() {
        coeffs.push(GradedPoly::generator(&gens, i));
    }
    let lx = TruncatedSeries::univariate(Var::X, coeffs.clone(), cutoff);
    let ly = TruncatedSeries::univariate(Var::Y, coeffs, cutoff);
    let exp = lx.reversion()?;
    let sum = lx.add(&ly);
    let series = exp.substitute(&[(Var::X, &sum)])?;
    let ring = if gens.is_empty() {
        "Z".to_string()
    } else {
        format!("Lazard ring in Q[m1..m{}]", gens.len())
    };
    Ok(FormalGroupLaw::new("universal", ring, series))
}

pub fn by_name(name: &str, cutoff: u32) -> Result<FormalGroupLaw<GradedPoly>, FglError> {
    match name {
        "additive" => Ok(additive(cutoff)),
        "multiplicative" => Ok(multiplicative(cutoff)),
        "k-theory" | "ktheory" => Ok(k_theory(cutoff)),
        "universal" => universal_fgl(cutoff),
        other => Err(FglError::UnknownLaw(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{lazard_generators, rat};

    #[test]
    fn low_universal_coefficients() {
        let f = universal_fgl(5).unwrap();
        let gens = lazard_generators(4);
        let m1 = GradedPoly::generator(&gens, 0);
        let m2 = GradedPoly::generator(&gens, 1);
        assert_eq!(f.alpha(1, 0), GradedPoly::one());
        assert_eq!(f.alpha(2, 0), GradedPoly::zero());
        assert_eq!(f.alpha(1, 1), m1.scale(&rat(-2, 1)));
        // α_12 = 4 m1² - 3 m2
        let expect = m1.mul(&m1).scale(&rat(4, 1)).sub(&m2.scale(&rat(3, 1)));
        assert_eq!(f.alpha(1, 2), expect);
        assert_eq!(f.alpha(2, 1), expect);
        for ((i, j), c) in f.alpha_table() {
            assert_eq!(c.homogeneous_weight(), Some(2 * (i + j - 1)), "α_{i}{j}");
        }
    }

    #[test]
    fn unknown_law() {
        assert_eq!(by_name("elliptic", 4), Err(FglError::UnknownLaw("elliptic".into())));
    }
}
