use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{bernoulli_numbers, factorial, RatPolynomial, Rational, WeightSeq};

/// Truncated power series `Σ_{n ≤ order} c_n z^n` of `z / (e^{a z} - 1)`,
/// obtained by inverting `(e^{a z} - 1) / z = Σ a^{n+1} z^n / (n+1)!`.
fn inverse_exp_series(a: u64, order: usize) -> Vec<Rational> {
    let a = Rational::from_integer(BigInt::from(a));
    let mut forward = Vec::with_capacity(order + 1);
    let mut a_pow = a.clone();
    for n in 0..=order {
        forward.push(&a_pow / Rational::from_integer(factorial(n as u64 + 1)));
        a_pow *= &a;
    }
    let lead_inv = Rational::one() / &forward[0];
    let mut inv: Vec<Rational> = Vec::with_capacity(order + 1);
    inv.push(lead_inv.clone());
    for n in 1..=order {
        let s = (1..=n).fold(Rational::zero(), |acc, k| acc + &forward[k] * &inv[n - k]);
        inv.push(-s * &lead_inv);
    }
    inv
}

fn mul_truncated(lhs: &[Rational], rhs: &[Rational], order: usize) -> Vec<Rational> {
    (0..=order)
        .map(|n| (0..=n).fold(Rational::zero(), |acc, k| acc + &lhs[k] * &rhs[n - k]))
        .collect()
}

/// Bernoulli–Barnes polynomial `B_ℓ(x; a_1, …, a_r)`, the `z^ℓ/ℓ!` coefficient of
/// `z^r e^{x z} / ∏ (e^{a_i z} - 1)`, as a polynomial in `x`.
///
/// Built from exact series inversion, independently of the Bernoulli-number
/// cache used by [`bernoulli_barnes_number`]. Results are memoized per
/// `(ℓ, a)`.
pub fn bernoulli_barnes_poly(l: usize, a: &WeightSeq) -> RatPolynomial {
    static CACHE: OnceLock<Mutex<HashMap<(usize, Vec<u64>), RatPolynomial>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (l, a.weights().to_vec());
    if let Some(hit) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return hit.clone();
    }
    let poly = barnes_poly_uncached(l, a);
    cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert(key, poly.clone());
    poly
}

fn barnes_poly_uncached(l: usize, a: &WeightSeq) -> RatPolynomial {
    let mut product = vec![Rational::zero(); l + 1];
    product[0] = Rational::one();
    for &w in a.weights() {
        product = mul_truncated(&product, &inverse_exp_series(w, l), l);
    }
    // e^{xz} contributes x^k / k! at z^k
    let l_fact = Rational::from_integer(factorial(l as u64));
    let coeffs = (0..=l)
        .map(|k| &product[l - k] * &l_fact / Rational::from_integer(factorial(k as u64)))
        .collect();
    RatPolynomial::from_coeffs(coeffs)
}

/// Bernoulli–Barnes number `B_ℓ(a_1, …, a_r)` via the multinomial expansion
/// `Σ_{i_1+…+i_r=ℓ} C(ℓ; i_1, …, i_r) B_{i_1}⋯B_{i_r} a_1^{i_1-1}⋯a_r^{i_r-1}`.
pub fn bernoulli_barnes_number(l: usize, a: &WeightSeq) -> Rational {
    let bern = bernoulli_numbers(l);
    let l_fact = Rational::from_integer(factorial(l as u64));
    let weights: Vec<Rational> = a
        .weights()
        .iter()
        .map(|&w| Rational::from_integer(BigInt::from(w)))
        .collect();
    // factor per (weight, index): B_i a^{i-1} / i!
    let factors: Vec<Vec<Rational>> = weights
        .iter()
        .map(|w| {
            (0..=l)
                .map(|i| {
                    let pow = if i == 0 {
                        Rational::one() / w
                    } else {
                        num_traits::pow(w.clone(), i - 1)
                    };
                    &bern[i] * pow / Rational::from_integer(factorial(i as u64))
                })
                .collect()
        })
        .collect();
    l_fact * compositions_sum(&factors, 0, l)
}

/// Sum over compositions `i_k + … + i_r = remaining` of `∏ factors[j][i_j]`.
fn compositions_sum(factors: &[Vec<Rational>], start: usize, remaining: usize) -> Rational {
    if start + 1 == factors.len() {
        return factors[start][remaining].clone();
    }
    (0..=remaining).fold(Rational::zero(), |acc, i| {
        if factors[start][i].is_zero() {
            acc
        } else {
            acc + &factors[start][i] * compositions_sum(factors, start + 1, remaining - i)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{bernoulli_number, rat, ratio};

    fn ws(w: &[u64]) -> WeightSeq {
        WeightSeq::new(w.to_vec()).unwrap()
    }

    #[test]
    fn leading_value_is_inverse_weight_product() {
        assert_eq!(
            bernoulli_barnes_poly(0, &ws(&[2, 3])),
            RatPolynomial::constant(ratio(1, 6))
        );
        assert_eq!(
            bernoulli_barnes_poly(0, &ws(&[1, 1, 1, 1])),
            RatPolynomial::one()
        );
        assert_eq!(bernoulli_barnes_number(0, &ws(&[2, 3])), ratio(1, 6));
        assert_eq!(bernoulli_barnes_number(0, &ws(&[1])), rat(1));
    }

    #[test]
    fn single_unit_weight_is_classical() {
        assert_eq!(
            bernoulli_barnes_poly(1, &ws(&[1])),
            RatPolynomial::from_coeffs(vec![ratio(-1, 2), rat(1)])
        );
        assert_eq!(bernoulli_barnes_number(1, &ws(&[1])), ratio(-1, 2));
        for l in 0..=12 {
            assert_eq!(bernoulli_barnes_number(l, &ws(&[1])), bernoulli_number(l));
        }
    }

    #[test]
    fn classical_difference_equation() {
        // B_ℓ(x+1) - B_ℓ(x) = ℓ x^{ℓ-1}
        for l in 1..=10usize {
            let p = bernoulli_barnes_poly(l, &ws(&[1]));
            let diff = &p.translate(&rat(1)) - &p;
            assert_eq!(diff, RatPolynomial::monomial(rat(l as i64), l - 1), "l={l}");
        }
    }

    #[test]
    fn number_matches_polynomial_at_zero() {
        let seqs: [&[u64]; 6] = [
            &[1],
            &[2, 3],
            &[1, 2, 4],
            &[5, 5],
            &[3, 4, 5, 2],
            &[1, 1, 1],
        ];
        for a in seqs {
            let a = ws(a);
            for l in 0..=12 {
                let p = bernoulli_barnes_poly(l, &a);
                assert_eq!(p.degree(), Some(l));
                assert_eq!(
                    bernoulli_barnes_number(l, &a),
                    p.eval(&rat(0)),
                    "l={l} a={a}"
                );
            }
        }
    }
}
