use num_bigint::BigInt;
use num_traits::Zero;

use super::HilbertSeries;
use crate::exact::{RatPolynomial, Rational};

/// Quasi-polynomial `q(n) = Σ_k d_k(n) n^k` with `D`-periodic coefficients,
/// together with the index `α` from which it agrees with the Hilbert function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial {
    period: u64,
    /// `coeffs[k][j]` is the coefficient of `n^k` on the class `n ≡ j (mod D)`.
    coeffs: Vec<Vec<Rational>>,
    alpha: u64,
}

impl QuasiPolynomial {
    /// Interpolates every residue class mod `D` past the a-invariant `E`,
    /// where the strictly proper part of the series is the only contribution,
    /// then scans down from `E + 1` for the first disagreement.
    pub(super) fn extract(series: &HilbertSeries) -> Self {
        let period = series.weights().period();
        let d = period as i64;
        let e = series.a_invariant().expect("non-zero series");
        // each class is a polynomial in n of degree < r; r points pin it down
        let samples = series.weights().len() as i64;

        let first_sample = |j: i64| if e < j { 0 } else { (e - j) / d + 1 };
        let last_needed = (0..d)
            .map(|j| j + (first_sample(j) + samples - 1) * d)
            .max()
            .unwrap_or(0)
            .max(e + 1)
            .max(0);
        let values = series.expand(last_needed as usize).values;
        let value = |n: i64| Rational::from_integer(BigInt::from(values[n as usize]));
        let as_rat = |n: i64| Rational::from_integer(BigInt::from(n));

        let class_polys: Vec<RatPolynomial> = (0..d)
            .map(|j| {
                let t0 = first_sample(j);
                let points: Vec<(Rational, Rational)> = (t0..t0 + samples)
                    .map(|t| {
                        let n = j + t * d;
                        (as_rat(n), value(n))
                    })
                    .collect();
                RatPolynomial::interpolate(&points)
            })
            .collect();

        let degree = class_polys.iter().filter_map(RatPolynomial::degree).max();
        let coeffs: Vec<Vec<Rational>> = match degree {
            None => Vec::new(),
            Some(top) => (0..=top)
                .map(|k| class_polys.iter().map(|p| p.coeff(k)).collect())
                .collect(),
        };

        let mut qp = Self {
            period,
            coeffs,
            alpha: 0,
        };
        let mut alpha = (e + 1).max(0);
        while alpha > 0 && qp.eval(alpha as u64 - 1) == value(alpha - 1) {
            alpha -= 1;
        }
        qp.alpha = alpha as u64;
        qp
    }

    /// The zero quasi-polynomial, used for the zero module.
    pub fn zero(period: u64) -> Self {
        Self {
            period,
            coeffs: Vec::new(),
            alpha: 0,
        }
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    /// Degree in `n`; `-1` for the zero quasi-polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `α(M)`: the least `n_0` with `H(M, n) = q(n)` for all `n ≥ n_0`.
    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    /// `d_k(n)`, reading the class of `n` modulo the period.
    pub fn coeff(&self, k: usize, n: u64) -> Rational {
        self.coeffs
            .get(k)
            .map(|row| row[(n % self.period) as usize].clone())
            .unwrap_or_else(Rational::zero)
    }

    /// The full coefficient table, `table()[k][j]`.
    pub fn table(&self) -> &[Vec<Rational>] {
        &self.coeffs
    }

    /// `Σ_{j=0}^{D-1} d_k(j)`.
    pub fn period_sum(&self, k: usize) -> Rational {
        self.coeffs
            .get(k)
            .map(|row| row.iter().sum())
            .unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, n: u64) -> Rational {
        let x = Rational::from_integer(BigInt::from(n));
        let j = (n % self.period) as usize;
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, row| acc * &x + &row[j])
    }
}
