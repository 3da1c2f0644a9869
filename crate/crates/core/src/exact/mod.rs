//! Exact arithmetic backbone.
//!
//! Everything here is computed over arbitrary-precision rationals; no floating
//! point is involved. The other modules read Bernoulli data, polynomial
//! coefficients and quasi-polynomial tables from this layer.

mod barnes;
mod bernoulli;
mod poly;

pub use barnes::{bernoulli_barnes_number, bernoulli_barnes_poly};
pub use bernoulli::{bernoulli_number, bernoulli_numbers, sum_powers};
pub use poly::{ParsePolyError, RatPolynomial};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational scalar, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("weight sequence must be non-empty")]
    EmptyWeights,
    #[error("weights must be positive integers, got {0}")]
    NonPositiveWeight(i64),
    #[error("Faulhaber's identity needs a positive exponent, got k = 0")]
    ZeroExponent,
}

/// Builds the rational `n / 1`.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `num / den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Binomial coefficient `C(n, k)` as an exact integer (zero when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Converts an exact rational to the nearest `f64`.
///
/// Works for numerators and denominators far beyond the `f64` range by
/// scaling both through their bit lengths first.
pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && n.abs() < 1e300 && d < 1e300 {
            return n / d;
        }
    }
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift = nb - db - 60;
    let scaled = if shift >= 0 {
        q / Rational::from_integer(BigInt::one() << shift as u64)
    } else {
        q * Rational::from_integer(BigInt::one() << (-shift) as u64)
    };
    let mant = scaled.numer().to_f64().unwrap_or(0.0) / scaled.denom().to_f64().unwrap_or(1.0);
    mant * 2f64.powi(shift as i32)
}

/// Positive integer weight sequence `(a_1, …, a_r)` together with its period
/// `D = lcm(a_1, …, a_r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightSeq {
    weights: Vec<u64>,
    period: u64,
}

impl WeightSeq {
    pub fn new(weights: Vec<u64>) -> Result<Self, ExactError> {
        if weights.is_empty() {
            return Err(ExactError::EmptyWeights);
        }
        if weights.iter().any(|&a| a == 0) {
            return Err(ExactError::NonPositiveWeight(0));
        }
        let period = weights.iter().fold(1u64, |acc, &a| acc.lcm(&a));
        Ok(Self { weights, period })
    }

    /// Accepts signed input, as read from user documents.
    pub fn from_signed(weights: &[i64]) -> Result<Self, ExactError> {
        if let Some(&bad) = weights.iter().find(|&&a| a <= 0) {
            return Err(ExactError::NonPositiveWeight(bad));
        }
        Self::new(weights.iter().map(|&a| a as u64).collect())
    }

    /// `r` copies of weight one: the standard grading.
    pub fn standard(r: usize) -> Self {
        Self::new(vec![1; r.max(1)]).expect("unit weights are valid")
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The period `D = lcm(a_1, …, a_r)`.
    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn total(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn is_standard(&self) -> bool {
        self.weights.iter().all(|&a| a == 1)
    }

    /// The sequence with `extra` unit weights appended.
    pub fn with_unit_weights(&self, extra: usize) -> Self {
        let mut weights = self.weights.clone();
        weights.extend(std::iter::repeat(1).take(extra));
        Self::new(weights).expect("extending valid weights")
    }
}

impl std::fmt::Display for WeightSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
