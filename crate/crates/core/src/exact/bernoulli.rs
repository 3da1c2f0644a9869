use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{binomial, ExactError, Rational};

fn cache() -> &'static RwLock<Vec<Rational>> {
    static CACHE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![Rational::one()]))
}

/// Bernoulli numbers `B_0, …, B_{n_max}` with the convention `B_1 = -1/2`.
///
/// Comparing coefficients in `z = (e^z - 1) · Σ B_ℓ z^ℓ / ℓ!` gives
/// `Σ_{ℓ=0}^{n} C(n+1, ℓ) B_ℓ = 0` for `n ≥ 1`, which is solved for `B_n`.
/// Values are cached process-wide and extended on demand.
pub fn bernoulli_numbers(n_max: usize) -> Vec<Rational> {
    {
        let known = cache().read().unwrap_or_else(|e| e.into_inner());
        if known.len() > n_max {
            return known[..=n_max].to_vec();
        }
    }
    let mut known = cache().write().unwrap_or_else(|e| e.into_inner());
    while known.len() <= n_max {
        let n = known.len();
        let acc = known
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (l, b)| {
                acc + b * Rational::from_integer(binomial(n as u64 + 1, l as u64))
            });
        let next = -acc / Rational::from_integer(BigInt::from(n + 1));
        known.push(next);
    }
    known[..=n_max].to_vec()
}

pub fn bernoulli_number(n: usize) -> Rational {
    bernoulli_numbers(n).pop().expect("non-empty")
}

/// `1^k + 2^k + … + n^k` through Faulhaber's formula
/// `(1/(k+1)) Σ_{ℓ=0}^{k} C(k+1, ℓ) B_ℓ n^{k+1-ℓ}`.
///
/// The formula needs the `B_1 = +1/2` convention when summing from 1, so the
/// sign of the `ℓ = 1` term is flipped relative to the cached values.
pub fn sum_powers(k: u32, n: u64) -> Result<Rational, ExactError> {
    if k == 0 {
        return Err(ExactError::ZeroExponent);
    }
    let bern = bernoulli_numbers(k as usize);
    let n_big = Rational::from_integer(BigInt::from(n));
    let mut total = Rational::zero();
    for (l, b) in bern.iter().enumerate() {
        let b = if l == 1 { -b } else { b.clone() };
        let power = num_traits::pow(n_big.clone(), k as usize + 1 - l);
        total += Rational::from_integer(binomial(k as u64 + 1, l as u64)) * b * power;
    }
    Ok(total / Rational::from_integer(BigInt::from(k + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    #[test]
    fn first_values() {
        assert_eq!(
            bernoulli_numbers(2),
            vec![rat(1), ratio(-1, 2), ratio(1, 6)]
        );
        assert_eq!(bernoulli_number(3), rat(0));
        assert_eq!(bernoulli_number(4), ratio(-1, 30));
        assert_eq!(bernoulli_number(12), ratio(-691, 2730));
        for n in (3..40).step_by(2) {
            assert!(bernoulli_number(n).is_zero(), "B_{n}");
        }
    }

    #[test]
    fn cache_is_idempotent() {
        let a = bernoulli_numbers(20);
        let b = bernoulli_numbers(5);
        assert_eq!(&a[..=5], &b[..]);
        assert_eq!(bernoulli_numbers(20), a);
    }

    #[test]
    fn faulhaber_small() {
        assert_eq!(sum_powers(1, 3).unwrap(), rat(6));
        assert_eq!(sum_powers(2, 3).unwrap(), rat(14));
        assert_eq!(sum_powers(3, 2).unwrap(), rat(9));
        assert_eq!(sum_powers(5, 0).unwrap(), rat(0));
        assert_eq!(sum_powers(0, 3), Err(ExactError::ZeroExponent));
    }

    #[test]
    fn faulhaber_matches_brute_force() {
        for k in 1..=8u32 {
            for n in 0..=50u64 {
                let brute: BigInt = (1..=n).map(|i| BigInt::from(i).pow(k)).sum();
                assert_eq!(
                    sum_powers(k, n).unwrap(),
                    Rational::from_integer(brute),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn concurrent_access_is_consistent() {
        let handles: Vec<_> = (0..8)
            .map(|i| std::thread::spawn(move || bernoulli_numbers(30 + i)))
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for r in &results {
            assert_eq!(&r[..=30], &results[0][..=30]);
        }
    }
}
