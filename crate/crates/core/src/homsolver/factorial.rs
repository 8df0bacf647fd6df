use num_traits::Zero;

use crate::exactalg::{factorial, next_prime, Int};

/// Smallest `n` in `2..=bound` with `n! ∤ λ^n`; `None` when there is none
/// (always for `λ = 0`).
pub fn factorial_divisibility(lambda: i64, bound: u32) -> Option<u32> {
    if lambda == 0 {
        return None;
    }
    let l = Int::from(lambda);
    let mut power = l.clone();
    let mut fact = Int::from(1);
    for n in 2..=bound {
        power *= &l;
        fact *= Int::from(n);
        if !(&power % &fact).is_zero() {
            return Some(n);
        }
    }
    None
}

/// For `λ ≠ 0`, the smallest prime `p > |λ|`: `p` divides `p!` but not `λ^p`.
pub fn prime_witness(lambda: i64) -> Option<u64> {
    (lambda != 0).then(|| next_prime(lambda.unsigned_abs()))
}

/// Exact check that `n! ∤ λ^n`.
pub fn witness_holds(lambda: i64, n: u32) -> bool {
    !(Int::from(lambda).pow(n) % factorial(n)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial_divisibility(1, 10), Some(2));
        assert_eq!(factorial_divisibility(6, 10), Some(5));
        assert_eq!(factorial_divisibility(0, 10), None);
        assert_eq!(factorial_divisibility(30, 4), None);
        assert_eq!(prime_witness(6), Some(7));
        assert!(witness_holds(6, 7));
        assert!(!witness_holds(6, 4));
    }

    #[test]
    fn minimality() {
        for lambda in -20i64..=20 {
            if lambda == 0 {
                continue;
            }
            let n = factorial_divisibility(lambda, 30).unwrap();
            assert!(witness_holds(lambda, n));
            assert!((2..n).all(|k| !witness_holds(lambda, k)));
            assert!(witness_holds(lambda, prime_witness(lambda).unwrap() as u32));
        }
    }
}
