use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::VerifyError;
use crate::analytic::residues_from_shifts;
use crate::exact::{bernoulli_barnes_poly, factorial, Rational, WeightSeq};
use crate::hilbert::HilbertSeries;

/// Shape of a pure resolution `0 → S(-d_p)^{β_p} → … → S(-d_1)^{β_1} → S`
/// over `r` standard-graded variables, for a quotient of dimension `m = r - p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureResolutionSpec {
    r: usize,
    m: usize,
    degrees: Vec<u64>,
}

impl PureResolutionSpec {
    pub fn new(r: usize, m: usize, degrees: Vec<u64>) -> Result<Self, VerifyError> {
        if m < 1 || m >= r {
            return Err(VerifyError::InvalidSpec(format!(
                "need 1 <= m < r, got r={r} m={m}"
            )));
        }
        if degrees.len() != r - m {
            return Err(VerifyError::InvalidSpec(format!(
                "a pure resolution of a dimension-{m} quotient of {r} variables has length {}, got {} degrees",
                r - m,
                degrees.len()
            )));
        }
        if degrees.first() == Some(&0) {
            return Err(VerifyError::InvalidSpec("degrees must be positive".into()));
        }
        if degrees.windows(2).any(|w| w[0] >= w[1]) {
            return Err(VerifyError::RepeatedDegrees(degrees));
        }
        Ok(Self { r, m, degrees })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }
}

fn rat(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `∏_{j ≠ i} d_j / (d_j - d_i)` with `d_0 = 0`; `i` indexes `0..=p`.
fn herzog_kuhl_product(degrees: &[u64], i: usize) -> Result<Rational, VerifyError> {
    let all: Vec<i64> = std::iter::once(0)
        .chain(degrees.iter().map(|&d| d as i64))
        .collect();
    let di = all[i];
    let mut acc = Rational::one();
    for (j, &dj) in all.iter().enumerate().skip(1) {
        if j == i {
            continue;
        }
        if dj == di {
            return Err(VerifyError::RepeatedDegrees(degrees.to_vec()));
        }
        acc *= Rational::new(BigInt::from(dj), BigInt::from(dj - di));
    }
    Ok(acc)
}

/// Betti numbers `β_i = (-1)^{i+1} ∏_{j≠i} d_j / (d_j - d_i)`, `1 ≤ i ≤ p`,
/// forced on a Cohen–Macaulay module with a pure resolution of this type.
pub fn pure_betti(spec: &PureResolutionSpec) -> Result<Vec<Rational>, VerifyError> {
    (1..=spec.p())
        .map(|i| {
            let prod = herzog_kuhl_product(spec.degrees(), i)?;
            Ok(if i % 2 == 1 { prod } else { -prod })
        })
        .collect()
}

/// Outcome of [`check_pure_identity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureIdentityReport {
    pub betti: Vec<Rational>,
    /// Every `β_i` is a positive integer (a necessary condition for the
    /// resolution to exist).
    pub betti_integral: bool,
    /// `R_{S/I}(m)` from the Betti-number residue formula.
    pub residue: Rational,
    /// `(m-1)! R_{S/I}(m)`.
    pub residue_route: Rational,
    /// `d_1 ⋯ d_p / p!`.
    pub multiplicity: Rational,
    pub equal: bool,
    /// `h(1)` after cancellation, when the Betti numbers are integers.
    pub series_multiplicity: Option<Rational>,
    /// Literal sum `Σ_{i=0}^p (-1)^{i+1} ∏_{j≠i} d_j/(d_j-d_i) B_p(d_i; 1,…,1)`
    /// with `d_0 = 0`.
    pub literal_lhs: Rational,
    /// `(m-1)! (-1)^p d_1 ⋯ d_p`.
    pub literal_rhs: Rational,
    pub literal_holds: bool,
}

/// Checks `(m-1)! R_{S/I}(m) = d_1⋯d_p / p!` exactly, where the residue comes
/// from the Betti-number formula over `r` unit weights, and evaluates the
/// literal displayed Bernoulli–Barnes sum alongside.
pub fn check_pure_identity(spec: &PureResolutionSpec) -> Result<PureIdentityReport, VerifyError> {
    let betti = pure_betti(spec)?;
    let betti_integral = betti
        .iter()
        .all(|b| b.is_integer() && b > &Rational::zero());
    let weights = WeightSeq::standard(spec.r());
    let p = spec.p();
    let m = spec.m();

    let mut shifts = vec![(0u64, Rational::one())];
    for (i, (b, &d)) in betti.iter().zip(spec.degrees()).enumerate() {
        let signed = if (i + 1) % 2 == 0 {
            b.clone()
        } else {
            -b.clone()
        };
        shifts.push((d, signed));
    }
    let residue = residues_from_shifts(&weights, &shifts)
        .get(m)
        .eval(&Rational::zero());
    let residue_route = &residue * Rational::from_integer(factorial(m as u64 - 1));
    let degree_product: Rational = spec.degrees().iter().map(|&d| rat(d)).product();
    let multiplicity = &degree_product / Rational::from_integer(factorial(p as u64));

    let series_multiplicity = if betti_integral {
        let mut numerator = vec![0i64; *spec.degrees().last().unwrap() as usize + 1];
        numerator[0] = 1;
        for (d, b) in shifts.iter().skip(1) {
            numerator[*d as usize] += i64::try_from(b.to_integer()).expect("small Betti number");
        }
        HilbertSeries::new(weights.clone(), numerator)
            .multiplicity()
            .ok()
            .map(|mu| mu.e)
    } else {
        None
    };

    let barnes = bernoulli_barnes_poly(p, &weights);
    let mut literal_lhs = Rational::zero();
    for i in 0..=p {
        let prod = herzog_kuhl_product(spec.degrees(), i)?;
        let d_i = if i == 0 {
            Rational::zero()
        } else {
            rat(spec.degrees()[i - 1])
        };
        let term = prod * barnes.eval(&d_i);
        literal_lhs += if (i + 1) % 2 == 0 { term } else { -term };
    }
    let sign = if p % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    };
    let literal_rhs = Rational::from_integer(factorial(m as u64 - 1)) * sign * &degree_product;

    Ok(PureIdentityReport {
        equal: residue_route == multiplicity,
        literal_holds: literal_lhs == literal_rhs,
        betti,
        betti_integral,
        residue,
        residue_route,
        multiplicity,
        series_multiplicity,
        literal_lhs,
        literal_rhs,
    })
}

/// Every valid spec with `r ≤ r_max` and strictly increasing degrees in
/// `1..=d_max`.
pub fn enumerate_pure_specs(r_max: usize, d_max: u64) -> Vec<PureResolutionSpec> {
    fn increasing(len: usize, lo: u64, hi: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if acc.len() == len {
            out.push(acc.clone());
            return;
        }
        for d in lo..=hi {
            acc.push(d);
            increasing(len, d + 1, hi, acc, out);
            acc.pop();
        }
    }
    let mut specs = Vec::new();
    for r in 2..=r_max {
        for m in 1..r {
            let mut seqs = Vec::new();
            increasing(r - m, 1, d_max, &mut Vec::new(), &mut seqs);
            specs.extend(
                seqs.into_iter()
                    .map(|d| PureResolutionSpec::new(r, m, d).expect("valid by construction")),
            );
        }
    }
    specs
}
