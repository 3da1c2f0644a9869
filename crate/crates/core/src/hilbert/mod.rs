//! Hilbert series of finitely generated graded modules over a weighted
//! polynomial ring, stored in Hilbert–Serre form `h(t) / ∏ (1 - t^{a_i})`.
//!
//! The numerator is kept exactly as given (a Betti table or user input);
//! cancellation of `(1 - t)` factors only happens inside the operations that
//! need it.

mod partition;
mod quasi;

pub use partition::{bounded_denumerant, bounded_denumerant_table, restricted_partition};
pub use quasi::QuasiPolynomial;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact::{ExactError, RatPolynomial, Rational, WeightSeq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("zero module: the numerator is identically zero")]
    ZeroModule,
    #[error("standard graded only: every weight must be 1")]
    NotStandardGraded,
    #[error("multiplicity defined here for dim >= 1")]
    DimensionZero,
    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(WeightSeq, WeightSeq),
    #[error("invalid Betti table: {0}")]
    InvalidBetti(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Sparse table of graded Betti numbers `β_{ij}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    entries: Vec<(usize, u64, u64)>,
}

impl BettiTable {
    /// Entries are `(homological degree i, internal degree j, β_{ij})`.
    pub fn new(entries: Vec<(usize, u64, u64)>) -> Result<Self, HilbertError> {
        let mut seen = BTreeSet::new();
        for &(i, j, beta) in &entries {
            if beta == 0 {
                return Err(HilbertError::InvalidBetti(format!(
                    "beta_{{{i},{j}}} must be positive"
                )));
            }
            if !seen.insert((i, j)) {
                return Err(HilbertError::InvalidBetti(format!(
                    "duplicate entry ({i},{j})"
                )));
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[(usize, u64, u64)] {
        &self.entries
    }

    /// Largest homological degree present (the projective dimension for a
    /// minimal resolution).
    pub fn max_homological_degree(&self) -> usize {
        self.entries.iter().map(|e| e.0).max().unwrap_or(0)
    }

    /// `(internal degree, signed multiplicity)` pairs `(j, (-1)^i β_{ij})`.
    pub fn signed_shifts(&self) -> Vec<(u64, Rational)> {
        self.entries
            .iter()
            .map(|&(i, j, beta)| {
                let sign = if i % 2 == 0 { 1i64 } else { -1 };
                (j, Rational::from_integer(BigInt::from(sign * beta as i64)))
            })
            .collect()
    }
}

/// Power-series expansion of a Hilbert series together with the
/// "is this the series of a module" diagnostic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub values: Vec<i128>,
    /// False when some coefficient is negative.
    pub is_module_series: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    weights: WeightSeq,
    numerator: Vec<i64>,
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl HilbertSeries {
    /// `numerator[i]` is the coefficient of `t^i` in `h(t)`.
    pub fn new(weights: WeightSeq, numerator: Vec<i64>) -> Self {
        Self {
            weights,
            numerator: trim(numerator),
        }
    }

    /// The weighted polynomial ring itself (numerator 1).
    pub fn free(weights: WeightSeq) -> Self {
        Self::new(weights, vec![1])
    }

    pub fn zero(weights: WeightSeq) -> Self {
        Self::new(weights, Vec::new())
    }

    /// Hilbert series read off a graded free resolution:
    /// `h(t) = Σ_i (-1)^i Σ_j β_{ij} t^j`.
    pub fn from_betti(weights: WeightSeq, betti: &BettiTable) -> Self {
        let len = betti
            .entries()
            .iter()
            .map(|e| e.1 as usize + 1)
            .max()
            .unwrap_or(0);
        let mut numerator = vec![0i64; len];
        for &(i, j, beta) in betti.entries() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            numerator[j as usize] += sign * beta as i64;
        }
        Self::new(weights, numerator)
    }

    pub fn weights(&self) -> &WeightSeq {
        &self.weights
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn numerator_poly(&self) -> RatPolynomial {
        RatPolynomial::from_ints(&self.numerator)
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    fn require_nonzero(&self) -> Result<(), HilbertError> {
        if self.is_zero() {
            Err(HilbertError::ZeroModule)
        } else {
            Ok(())
        }
    }

    /// Degree of the rational function, `deg h - Σ a_i`. Past this index the
    /// coefficients are given by the quasi-polynomial.
    pub fn a_invariant(&self) -> Result<i64, HilbertError> {
        self.require_nonzero()?;
        Ok(self.numerator.len() as i64 - 1 - self.weights.total() as i64)
    }

    /// Coefficients `H(M, 0..=n_max)`.
    ///
    /// Panics if a coefficient leaves the `i128` range.
    pub fn expand(&self, n_max: usize) -> Expansion {
        let mut values = vec![0i128; n_max + 1];
        for (i, &c) in self.numerator.iter().enumerate().take(n_max + 1) {
            values[i] = c as i128;
        }
        for &a in self.weights.weights() {
            let a = a as usize;
            for n in a..=n_max {
                values[n] = values[n]
                    .checked_add(values[n - a])
                    .expect("Hilbert function value overflows i128");
            }
        }
        let is_module_series = values.iter().all(|&v| v >= 0);
        Expansion {
            values,
            is_module_series,
        }
    }

    /// True iff all coefficients up to `max(n_max, E + 1)` are nonnegative,
    /// where `E` is the a-invariant.
    pub fn validate(&self, n_max: usize) -> bool {
        let e_plus_one = self.a_invariant().map(|e| e + 1).unwrap_or(0).max(0) as usize;
        self.expand(n_max.max(e_plus_one)).is_module_series
    }

    /// Multiplicity of `t = 1` as a root of the numerator, and the cofactor
    /// `q` with `h(t) = (t - 1)^mult q(t)`.
    fn split_unit_root(&self) -> (usize, Vec<i128>) {
        let mut q: Vec<i128> = self.numerator.iter().map(|&c| c as i128).collect();
        let mut mult = 0;
        while q.len() > 1 && q.iter().sum::<i128>() == 0 {
            // synthetic division by (t - 1), highest degree first
            let deg = q.len() - 1;
            let mut quot = vec![0i128; deg];
            let mut carry = 0i128;
            for i in (1..=deg).rev() {
                carry += q[i];
                quot[i - 1] = carry;
            }
            q = quot;
            mult += 1;
        }
        (mult, q)
    }

    /// Krull dimension: the pole order of the series at `t = 1`.
    pub fn dimension(&self) -> Result<usize, HilbertError> {
        self.require_nonzero()?;
        let (mult, _) = self.split_unit_root();
        Ok(self.weights.len().saturating_sub(mult))
    }

    /// Series of the shifted module `M(-k)`: numerator times `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut numerator = vec![0; k];
        numerator.extend_from_slice(&self.numerator);
        Self::new(self.weights.clone(), numerator)
    }

    /// Series of `M / fM` for `f` regular of degree `k`: numerator times `(1 - t^k)`.
    pub fn regular_quotient(&self, k: usize) -> Self {
        let mut numerator = vec![0i64; self.numerator.len() + k];
        for (i, &c) in self.numerator.iter().enumerate() {
            numerator[i] += c;
            numerator[i + k] -= c;
        }
        Self::new(self.weights.clone(), numerator)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, HilbertError> {
        if self.weights != other.weights {
            return Err(HilbertError::WeightMismatch(
                self.weights.clone(),
                other.weights.clone(),
            ));
        }
        let len = self.numerator.len().max(other.numerator.len());
        let numerator = (0..len)
            .map(|i| {
                self.numerator.get(i).copied().unwrap_or(0)
                    + other.numerator.get(i).copied().unwrap_or(0)
            })
            .collect();
        Ok(Self::new(self.weights.clone(), numerator))
    }

    /// Series of the `i`-th iterated Hilbert function (`i`-fold partial sums):
    /// the denominator gains `(1 - t)^i`.
    pub fn iterate(&self, i: usize) -> Self {
        Self::new(self.weights.with_unit_weights(i), self.numerator.clone())
    }

    pub fn quasi_polynomial(&self) -> Result<QuasiPolynomial, HilbertError> {
        self.require_nonzero()?;
        Ok(QuasiPolynomial::extract(self))
    }

    /// Hilbert polynomial coefficients `(d_0, …, d_{m-1})` of a standard graded
    /// series; empty when `m = 0`.
    pub fn hilbert_polynomial(&self) -> Result<Vec<Rational>, HilbertError> {
        if !self.weights.is_standard() {
            return Err(HilbertError::NotStandardGraded);
        }
        let m = self.dimension()?;
        if m == 0 {
            return Ok(Vec::new());
        }
        let qp = self.quasi_polynomial()?;
        Ok((0..m).map(|k| qp.coeff(k, 0)).collect())
    }

    /// Multiplicity `e(M) = h(1)` and Hilbert coefficients
    /// `e_k(M) = h^{(k)}(1) / k!` after reducing to `h(t) / (1 - t)^m`.
    pub fn multiplicity(&self) -> Result<Multiplicity, HilbertError> {
        if !self.weights.is_standard() {
            return Err(HilbertError::NotStandardGraded);
        }
        let m = self.dimension()?;
        if m == 0 {
            return Err(HilbertError::DimensionZero);
        }
        let (mult, q) = self.split_unit_root();
        // h/(1-t)^mult = (-1)^mult q
        let sign = if mult % 2 == 0 { 1 } else { -1 };
        let reduced = RatPolynomial::from_coeffs(
            q.iter()
                .map(|&c| Rational::from_integer(BigInt::from(sign * c)))
                .collect(),
        );
        let one = Rational::from_integer(BigInt::from(1));
        let mut hilbert_coefficients = Vec::with_capacity(m);
        let mut deriv = reduced.clone();
        let mut k_fact = BigInt::from(1);
        for k in 0..m {
            if k > 0 {
                deriv = deriv.derivative();
                k_fact *= k;
            }
            hilbert_coefficients.push(deriv.eval(&one) / Rational::from_integer(k_fact.clone()));
        }
        Ok(Multiplicity {
            e: hilbert_coefficients[0].clone(),
            hilbert_coefficients,
            reduced_numerator: reduced,
            dimension: m,
        })
    }
}

/// Result of [`HilbertSeries::multiplicity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiplicity {
    pub e: Rational,
    /// `e_0, …, e_{m-1}`.
    pub hilbert_coefficients: Vec<Rational>,
    /// `h(t)` with `H_M(t) = h(t) / (1 - t)^m` and `h(1) ≠ 0`.
    pub reduced_numerator: RatPolynomial,
    pub dimension: usize,
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let denom: Vec<String> = self
            .weights
            .weights()
            .iter()
            .map(|&a| {
                if a == 1 {
                    "(1 - t)".to_string()
                } else {
                    format!("(1 - t^{a})")
                }
            })
            .collect();
        write!(
            f,
            "({}) / {}",
            self.numerator_poly().display_in("t"),
            denom.join("")
        )
    }
}
