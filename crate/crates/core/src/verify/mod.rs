//! Cross-formula identity checks.
//!
//! Each check computes the same quantity along two or more independent
//! routes (exact residue formulas, series manipulations, Hurwitz closed
//! forms, finite sums) and reports how far apart they land.

mod pure;
mod suites;

pub use pure::{
    check_pure_identity, enumerate_pure_specs, pure_betti, PureIdentityReport, PureResolutionSpec,
};
pub use suites::{
    random_z, run_suite, standard_graded_suite, structural_instance, suite_members, z_grid,
    CheckLine, CheckReport, StructuralInstance, Suite, SuiteMember, SUITE_NAMES,
};

use num_traits::Zero;
use thiserror::Error;

use crate::analytic::{
    hurwitz_zeta, residues_limit, AnalyticError, ComplexValue, EvalConfig, ModuleZeta,
};
use crate::exact::{binomial, factorial, to_f64, Rational, WeightSeq};
use crate::hilbert::{bounded_denumerant_table, HilbertError, HilbertSeries};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("invalid pure resolution: {0}")]
    InvalidSpec(String),
    #[error("degrees must be strictly increasing, got {0:?}")]
    RepeatedDegrees(Vec<u64>),
    #[error("not a module series: some Hilbert function value is negative")]
    NotModuleSeries,
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
}

/// Largest `|lhs - rhs|` over the samples for
/// `Σ_n f_a(n) (n+w)^{-z} = Σ_{j=0}^{r} (-1)^j C(r, j) ζ_a(z, w + D j)`,
/// where `f_a` are the bounded denumerants of the Artinian complete
/// intersection `(x_1^{D/a_1}, …, x_r^{D/a_r})` and `ζ_a` is the Barnes zeta
/// function of the free module.
pub fn check_ci_identity(
    a: &WeightSeq,
    w: f64,
    z_samples: &[ComplexValue],
    cfg: &EvalConfig,
) -> Result<f64, VerifyError> {
    let table = bounded_denumerant_table(a);
    let barnes = ModuleZeta::new(&HilbertSeries::free(a.clone()), *cfg);
    let r = a.len() as u64;
    let d = a.period() as f64;
    let mut worst = 0.0f64;
    for &z in z_samples {
        let lhs: ComplexValue = table
            .iter()
            .enumerate()
            .filter(|(_, &f)| f != 0)
            .map(|(n, &f)| (-z * (n as f64 + w).ln()).exp() * f as f64)
            .sum();
        let mut rhs = ComplexValue::new(0.0, 0.0);
        for j in 0..=r {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let c = to_f64(&Rational::from_integer(binomial(r, j))) * sign;
            rhs += barnes.eval(z, w + d * j as f64)? * c;
        }
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// Hilbert data of the associated graded module `gr_I(M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamuelInput {
    hilbert_of_graded: HilbertSeries,
}

impl SamuelInput {
    pub fn new(hilbert_of_graded: HilbertSeries) -> Result<Self, VerifyError> {
        if !hilbert_of_graded.weights().is_standard() {
            return Err(HilbertError::NotStandardGraded.into());
        }
        if hilbert_of_graded.is_zero() {
            return Err(HilbertError::ZeroModule.into());
        }
        if !hilbert_of_graded.validate(64) {
            return Err(VerifyError::NotModuleSeries);
        }
        Ok(Self { hilbert_of_graded })
    }

    pub fn series(&self) -> &HilbertSeries {
        &self.hilbert_of_graded
    }
}

/// `e(M, I) = m! · Res_{z=m+1} ζ^1_{M,I}(z)`, the residue taken exactly from
/// the once-iterated series of `gr_I(M)`.
pub fn samuel_multiplicity(input: &SamuelInput) -> Result<Rational, VerifyError> {
    let series = input.series();
    let m = series.dimension()?;
    if m == 0 {
        return Err(HilbertError::DimensionZero.into());
    }
    let residue = residues_limit(&series.iterate(1)).get(m + 1).coeff(0);
    Ok(residue * Rational::from_integer(factorial(m as u64)))
}

/// The multiplicity of a standard graded module computed four ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityRoutes {
    pub dimension: usize,
    /// `h(1)` after cancelling `(1 - t)` factors.
    pub numerator_at_one: Rational,
    /// `(m-1)! d_{M,m-1}`.
    pub leading_coefficient: Rational,
    /// `(m-1)! R_M(m)`, from the limit residue.
    pub residue: Rational,
    /// `(m-1)! R_M(w, m)` at `w = 0`.
    pub residue_at_zero_shift: Rational,
    /// `m! R^1_M(m+1)`, from the once-iterated function.
    pub iterated_residue: Rational,
    pub hilbert_coefficients: Vec<Rational>,
}

impl MultiplicityRoutes {
    pub fn all_equal(&self) -> bool {
        let e = &self.numerator_at_one;
        [
            &self.leading_coefficient,
            &self.residue,
            &self.residue_at_zero_shift,
            &self.iterated_residue,
        ]
        .iter()
        .all(|v| *v == e)
    }
}

pub fn multiplicity_routes(series: &HilbertSeries) -> Result<MultiplicityRoutes, VerifyError> {
    let mult = series.multiplicity()?;
    let m = mult.dimension;
    let fact_m1 = Rational::from_integer(factorial(m as u64 - 1));
    let qp = series.quasi_polynomial()?;
    let zeta = ModuleZeta::new(series, EvalConfig::default());
    let iterated = ModuleZeta::new(&series.iterate(1), EvalConfig::default());
    Ok(MultiplicityRoutes {
        dimension: m,
        numerator_at_one: mult.e.clone(),
        leading_coefficient: &fact_m1 * qp.coeff(m - 1, 0),
        residue: &fact_m1 * zeta.limit_residues().get(m).coeff(0),
        residue_at_zero_shift: &fact_m1 * zeta.residues().get(m).eval(&Rational::zero()),
        iterated_residue: Rational::from_integer(factorial(m as u64))
            * iterated.limit_residues().get(m + 1).coeff(0),
        hilbert_coefficients: mult.hilbert_coefficients,
    })
}

/// `|ζ_{M ⊕ N} - ζ_M - ζ_N|` at one point.
pub fn additivity_deviation(
    s1: &HilbertSeries,
    s2: &HilbertSeries,
    z: ComplexValue,
    w: f64,
    cfg: &EvalConfig,
) -> Result<f64, VerifyError> {
    let sum = s1.direct_sum(s2)?;
    let lhs = ModuleZeta::new(&sum, *cfg).eval(z, w)?;
    let rhs = ModuleZeta::new(s1, *cfg).eval(z, w)? + ModuleZeta::new(s2, *cfg).eval(z, w)?;
    Ok((lhs - rhs).norm())
}

/// `|ζ_{M(-k)}(z, w) - ζ_M(z, w + k)|`.
pub fn shift_deviation(
    s: &HilbertSeries,
    k: usize,
    z: ComplexValue,
    w: f64,
    cfg: &EvalConfig,
) -> Result<f64, VerifyError> {
    let lhs = ModuleZeta::new(&s.shift(k), *cfg).eval(z, w)?;
    let rhs = ModuleZeta::new(s, *cfg).eval(z, w + k as f64)?;
    Ok((lhs - rhs).norm())
}

/// `|ζ_{M/fM}(z, w) - ζ_M(z, w) + ζ_M(z, w + k)|` for `f` regular of degree `k`.
pub fn quotient_deviation(
    s: &HilbertSeries,
    k: usize,
    z: ComplexValue,
    w: f64,
    cfg: &EvalConfig,
) -> Result<f64, VerifyError> {
    let base = ModuleZeta::new(s, *cfg);
    let lhs = ModuleZeta::new(&s.regular_quotient(k), *cfg).eval(z, w)?;
    let rhs = base.eval(z, w)? - base.eval(z, w + k as f64)?;
    Ok((lhs - rhs).norm())
}

/// Inclusion–exclusion over a regular sequence of degrees `k_1, …, k_p`:
/// `ζ_{M/(f)M}(z, w) = Σ_{T ⊆ [p]} (-1)^{|T|} ζ_M(z, w + Σ_{i∈T} k_i)`.
pub fn inclusion_exclusion_deviation(
    s: &HilbertSeries,
    degrees: &[usize],
    z: ComplexValue,
    w: f64,
    cfg: &EvalConfig,
) -> Result<f64, VerifyError> {
    let quotient = degrees
        .iter()
        .fold(s.clone(), |acc, &k| acc.regular_quotient(k));
    let lhs = ModuleZeta::new(&quotient, *cfg).eval(z, w)?;
    let base = ModuleZeta::new(s, *cfg);
    let mut rhs = ComplexValue::new(0.0, 0.0);
    for mask in 0u32..(1 << degrees.len()) {
        let shift: usize = degrees
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &k)| k)
            .sum();
        let sign = if mask.count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        rhs += base.eval(z, w + shift as f64)? * sign;
    }
    Ok((lhs - rhs).norm())
}

/// Hilbert-series form of the Gorenstein criterion for a ring `S` with
/// canonical module `ω`: `H_ω(t) = t^{-a(S)} H_S(t)`, equivalently
/// `ζ_ω(z, w) = ζ_S(z, w - a(S))`.
pub fn gorenstein_series_identity(
    omega: &HilbertSeries,
    ring: &HilbertSeries,
) -> Result<bool, VerifyError> {
    if omega.weights() != ring.weights() {
        return Err(
            HilbertError::WeightMismatch(omega.weights().clone(), ring.weights().clone()).into(),
        );
    }
    let shift = -ring.a_invariant()?;
    Ok(if shift >= 0 {
        *omega == ring.shift(shift as usize)
    } else {
        omega.shift((-shift) as usize) == *ring
    })
}

/// `|ζ_{ω_S}(z, w) - ζ_S(z, w + Σ a_i)|` for the polynomial ring `S` over `a`,
/// whose canonical module is `S(-Σ a_i)`.
pub fn canonical_shift_deviation(
    a: &WeightSeq,
    z: ComplexValue,
    w: f64,
    cfg: &EvalConfig,
) -> Result<f64, VerifyError> {
    let ring = HilbertSeries::free(a.clone());
    let omega = ring.shift(a.total() as usize);
    let lhs = ModuleZeta::new(&omega, *cfg).eval(z, w)?;
    let rhs = ModuleZeta::new(&ring, *cfg).eval(z, w + a.total() as f64)?;
    Ok((lhs - rhs).norm())
}

/// `|ζ_R(z, w) - (w^{-z} + ζ(z, w + 2))|` for the cusp `K[x, y]/(x^3 - y^2)`,
/// `deg x = 2`, `deg y = 3`.
pub fn cusp_deviation(z: ComplexValue, w: f64, cfg: &EvalConfig) -> Result<f64, VerifyError> {
    let cusp = suites::cusp();
    let closed = ModuleZeta::new(&cusp, *cfg).eval(z, w)?;
    let target = (-z * w.ln()).exp() + hurwitz_zeta(z, w + 2.0, cfg)?;
    Ok((closed - target).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn ws(w: &[u64]) -> WeightSeq {
        WeightSeq::new(w.to_vec()).unwrap()
    }

    fn grid() -> Vec<ComplexValue> {
        let mut pts = Vec::new();
        for re in [-2.0, -0.5, 0.25, 1.5, 2.5, 4.0] {
            for im in [-3.0, -1.0, 0.5, 2.0] {
                pts.push(ComplexValue::new(re, im));
            }
        }
        pts
    }

    #[test]
    fn ci_identity_two_three() {
        let dev = check_ci_identity(&ws(&[2, 3]), 1.0, &grid(), &EvalConfig::default()).unwrap();
        assert!(dev <= 1e-9, "{dev}");
    }

    #[test]
    fn ci_identity_unit_weights() {
        let dev = check_ci_identity(&ws(&[1, 1]), 0.4, &grid(), &EvalConfig::default()).unwrap();
        assert!(dev <= 1e-9, "{dev}");
    }

    #[test]
    fn samuel_examples() {
        for r in 1..=4 {
            let input = SamuelInput::new(HilbertSeries::free(WeightSeq::standard(r))).unwrap();
            assert_eq!(samuel_multiplicity(&input).unwrap(), int(1));
        }
        for d in 1..=6 {
            let input =
                SamuelInput::new(HilbertSeries::free(WeightSeq::standard(2)).regular_quotient(d))
                    .unwrap();
            assert_eq!(samuel_multiplicity(&input).unwrap(), int(d as i64));
        }
        assert!(SamuelInput::new(HilbertSeries::free(ws(&[2, 3]))).is_err());
        assert!(matches!(
            SamuelInput::new(HilbertSeries::new(ws(&[1]), vec![1, -2])),
            Err(VerifyError::NotModuleSeries)
        ));
        let artinian =
            SamuelInput::new(HilbertSeries::free(WeightSeq::standard(1)).regular_quotient(3))
                .unwrap();
        assert!(samuel_multiplicity(&artinian).is_err());
    }

    #[test]
    fn multiplicity_routes_agree() {
        let s = HilbertSeries::free(WeightSeq::standard(3))
            .regular_quotient(2)
            .regular_quotient(3);
        let routes = multiplicity_routes(&s).unwrap();
        assert_eq!(routes.numerator_at_one, int(6));
        assert!(routes.all_equal(), "{routes:?}");
    }

    #[test]
    fn gorenstein_identity() {
        for a in [ws(&[1]), ws(&[2, 3]), ws(&[1, 2, 4])] {
            let ring = HilbertSeries::free(a.clone());
            let omega = ring.shift(a.total() as usize);
            assert!(gorenstein_series_identity(&omega, &ring).unwrap());
            assert!(!gorenstein_series_identity(&ring, &ring).unwrap());
            let z = ComplexValue::new(0.3, 1.7);
            assert!(canonical_shift_deviation(&a, z, 0.8, &EvalConfig::default()).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn cusp_target() {
        let cfg = EvalConfig::default();
        for w in [0.5, 1.0, 2.25] {
            for z in grid() {
                assert!(cusp_deviation(z, w, &cfg).unwrap() <= 1e-9);
            }
        }
    }
}
