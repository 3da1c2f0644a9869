use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_traits::Zero;

use super::hurwitz::{hurwitz_zeta, real_pow_neg};
use super::residues::{residues_closed_from, residues_limit_from, ResidueTable};
use super::{AnalyticError, ComplexValue, EvalConfig};
use crate::exact::{binomial, to_f64, Rational};
use crate::hilbert::{HilbertSeries, QuasiPolynomial};

/// Evaluation points in the mean-value average used at removable singularities.
const REGULAR_POINTS: usize = 32;
const REGULAR_RADIUS: f64 = 1e-2;
/// Largest truncation index accepted by the direct-summation oracle.
const MAX_DIRECT_TERMS: u64 = 50_000_000;

/// Precomputed analytic data of one Hilbert series: the quasi-polynomial,
/// the Hilbert function below `α(M)` and both exact residue tables.
///
/// Building this once and evaluating many points is much cheaper than the
/// free functions, which rebuild it on each call.
#[derive(Debug, Clone)]
pub struct ModuleZeta {
    series: HilbertSeries,
    qp: QuasiPolynomial,
    /// `H(M, n)` for `n < max(α, 1)`.
    head: Vec<f64>,
    /// `d_k(j)` as doubles, `coeffs[k][j]`.
    coeffs: Vec<Vec<f64>>,
    /// Minimal period of each `d_k`, a divisor of `D`.
    periods: Vec<u64>,
    residues: ResidueTable,
    limit_residues: ResidueTable,
    cfg: EvalConfig,
}

impl ModuleZeta {
    pub fn new(series: &HilbertSeries, cfg: EvalConfig) -> Self {
        let qp = if series.is_zero() {
            QuasiPolynomial::zero(series.weights().period())
        } else {
            series.quasi_polynomial().expect("non-zero series")
        };
        let head_len = qp.alpha().max(1) as usize;
        let head = series
            .expand(head_len - 1)
            .values
            .iter()
            .map(|&v| v as f64)
            .collect();
        let coeffs = qp
            .table()
            .iter()
            .map(|row| row.iter().map(to_f64).collect())
            .collect();
        let periods = qp.table().iter().map(|row| minimal_period(row)).collect();
        Self {
            periods,
            residues: residues_closed_from(&qp),
            limit_residues: residues_limit_from(&qp),
            series: series.clone(),
            qp,
            head,
            coeffs,
            cfg,
        }
    }

    pub fn series(&self) -> &HilbertSeries {
        &self.series
    }

    pub fn quasi_polynomial(&self) -> &QuasiPolynomial {
        &self.qp
    }

    pub fn config(&self) -> &EvalConfig {
        &self.cfg
    }

    /// Upper bound `m` of the pole set `{1, …, m}`: one more than the degree
    /// of the quasi-polynomial.
    pub fn pole_bound(&self) -> usize {
        (self.qp.degree() + 1) as usize
    }

    /// Residues of `ζ_M(·, w)` as exact polynomials in `w`.
    pub fn residues(&self) -> &ResidueTable {
        &self.residues
    }

    /// Residues of `ζ_M(z)`.
    pub fn limit_residues(&self) -> &ResidueTable {
        &self.limit_residues
    }

    /// `θ_M(z, w) = Σ_{n < α} H(M, n) (n + w)^{-z}`.
    pub fn theta(&self, z: ComplexValue, w: f64) -> ComplexValue {
        (0..self.qp.alpha() as usize)
            .rev()
            .filter(|&n| self.head[n] != 0.0)
            .map(|n| real_pow_neg(n as f64 + w, z) * self.head[n])
            .sum()
    }

    /// `θ_M(z) = Σ_{n=1}^{α-1} H(M, n) n^{-z}`.
    pub fn theta_limit(&self, z: ComplexValue) -> ComplexValue {
        (1..self.qp.alpha() as usize)
            .rev()
            .filter(|&n| self.head[n] != 0.0)
            .map(|n| real_pow_neg(n as f64, z) * self.head[n])
            .sum()
    }

    /// Closed form of `ζ_M(z, w)` as `θ_M` plus a combination of Hurwitz zeta
    /// values `ζ(z - l, (j + α + w)/P)`, `0 ≤ l < m`, where `P` divides `D`
    /// and `0 ≤ j < P`.
    pub fn eval(&self, z: ComplexValue, w: f64) -> Result<ComplexValue, AnalyticError> {
        if !(w > 0.0) || !w.is_finite() {
            return Err(AnalyticError::NonPositiveShift(w));
        }
        let w_exact = Rational::from_float(w).expect("finite w");
        self.guard_poles(
            z,
            |pole| self.residues.get(pole).eval(&w_exact),
            |z| self.eval_unguarded(z, w),
        )
    }

    /// `ζ_M(z) = lim_{w↘0} (ζ_M(z, w) - H(M, 0) w^{-z}) = Σ_{n ≥ 1} H(M, n) n^{-z}`.
    pub fn eval_limit(&self, z: ComplexValue) -> Result<ComplexValue, AnalyticError> {
        self.guard_poles(
            z,
            |pole| self.limit_residues.get(pole).coeff(0),
            |z| self.eval_limit_unguarded(z),
        )
    }

    /// Poles with non-zero residue are errors; removable ones are evaluated
    /// through the mean value over a small circle around `z`.
    fn guard_poles(
        &self,
        z: ComplexValue,
        residue_at: impl Fn(usize) -> Rational,
        eval: impl Fn(ComplexValue) -> Result<ComplexValue, AnalyticError>,
    ) -> Result<ComplexValue, AnalyticError> {
        let near = (1..=self.pole_bound()).find(|&p| (z - p as f64).norm() <= self.cfg.pole_guard);
        let Some(pole) = near else {
            return eval(z);
        };
        let residue = residue_at(pole);
        if !residue.is_zero() {
            return Err(AnalyticError::Pole { pole, residue });
        }
        let mut acc = ComplexValue::new(0.0, 0.0);
        for i in 0..REGULAR_POINTS {
            let angle = 2.0 * PI * (i as f64 + 0.5) / REGULAR_POINTS as f64;
            acc += eval(z + ComplexValue::from_polar(REGULAR_RADIUS, angle))?;
        }
        Ok(acc / REGULAR_POINTS as f64)
    }

    /// Hurwitz terms `(P, j, l) -> weight` standing for
    /// `weight · P^{l-z} ζ(z - l, (α + j + w)/P)`, where `P` is the period of
    /// the coefficient being expanded.
    ///
    /// Expanding each `d_k` over its own minimal period rather than `D` keeps
    /// the factors `P^{l - Re z}` small: the high-degree coefficients usually
    /// have period 1, and cancellation between large Hurwitz terms is what
    /// limits double-precision accuracy for `Re z < 0`.
    fn hurwitz_terms(&self, start: u64, w: f64) -> BTreeMap<(u64, u64, usize), f64> {
        let d = self.qp.period();
        let mut terms = BTreeMap::new();
        for (k, row) in self.coeffs.iter().enumerate() {
            let period = self.periods[k];
            for j in 0..period {
                let c = row[((start + j) % d) as usize];
                if c == 0.0 {
                    continue;
                }
                // (P(q + x) - w)^k = Σ_l C(k, l) (-w)^{k-l} P^l (q + x)^l
                let mut w_pow = 1.0;
                for l in (0..=k).rev() {
                    if w_pow != 0.0 {
                        *terms.entry((period, j, l)).or_insert(0.0) += c * binom_f64(k, l) * w_pow;
                    }
                    w_pow *= -w;
                }
            }
        }
        terms
    }

    fn sum_hurwitz_terms(
        &self,
        z: ComplexValue,
        start: u64,
        w: f64,
    ) -> Result<ComplexValue, AnalyticError> {
        let mut total = ComplexValue::new(0.0, 0.0);
        for ((period, j, l), weight) in self.hurwitz_terms(start, w) {
            if weight == 0.0 {
                continue;
            }
            let s = z - l as f64;
            let x = ((start + j) as f64 + w) / period as f64;
            total += hurwitz_zeta(s, x, &self.cfg)? * real_pow_neg(period as f64, s) * weight;
        }
        Ok(total)
    }

    fn eval_unguarded(&self, z: ComplexValue, w: f64) -> Result<ComplexValue, AnalyticError> {
        let total = self.sum_hurwitz_terms(z, self.qp.alpha(), w)?;
        finite(self.theta(z, w) + total, z)
    }

    fn eval_limit_unguarded(&self, z: ComplexValue) -> Result<ComplexValue, AnalyticError> {
        let total = self.sum_hurwitz_terms(z, self.qp.alpha().max(1), 0.0)?;
        finite(self.theta_limit(z) + total, z)
    }

    /// Truncated Dirichlet series `Σ_{n ≤ N} H(M, n) (n + w)^{-z}` with `N` taken
    /// from the tail bound `C N^{m - Re z} / (Re z - m) ≤ eps`, where `C`
    /// bounds `|H(M, n)| / n^{m-1}`. Only valid for `Re z ≥ m + 3/2`.
    pub fn direct(&self, z: ComplexValue, w: f64, eps: f64) -> Result<ComplexValue, AnalyticError> {
        if !(w > 0.0) || !w.is_finite() {
            return Err(AnalyticError::NonPositiveShift(w));
        }
        let n_max = self.direct_truncation(z, eps)?;
        let values = self.series.expand(n_max as usize).values;
        let sum: ComplexValue = (0..=n_max as usize)
            .rev()
            .filter(|&n| values[n] != 0)
            .map(|n| real_pow_neg(n as f64 + w, z) * values[n] as f64)
            .sum();
        finite(sum, z)
    }

    /// `Σ_{1 ≤ n ≤ N} H(M, n) n^{-z}`, truncated as in [`ModuleZeta::direct`].
    pub fn direct_limit(&self, z: ComplexValue, eps: f64) -> Result<ComplexValue, AnalyticError> {
        let n_max = self.direct_truncation(z, eps)?;
        let values = self.series.expand(n_max as usize).values;
        let sum: ComplexValue = (1..=n_max as usize)
            .rev()
            .filter(|&n| values[n] != 0)
            .map(|n| real_pow_neg(n as f64, z) * values[n] as f64)
            .sum();
        finite(sum, z)
    }

    fn direct_truncation(&self, z: ComplexValue, eps: f64) -> Result<u64, AnalyticError> {
        let m = self.pole_bound() as f64;
        let required = m + 1.5;
        if z.re < required {
            return Err(AnalyticError::DivergentRegion { re: z.re, required });
        }
        let bound: f64 = self
            .coeffs
            .iter()
            .map(|row| row.iter().fold(0.0f64, |acc, c| acc.max(c.abs())))
            .sum();
        let floor = self.qp.alpha().max(1);
        if bound == 0.0 {
            return Ok(floor);
        }
        let excess = z.re - m;
        let n = (bound / (eps * excess)).powf(1.0 / excess).ceil();
        if n > MAX_DIRECT_TERMS as f64 {
            return Err(AnalyticError::TooManyTerms(n as u64));
        }
        Ok((n as u64).max(floor))
    }
}

fn minimal_period(row: &[Rational]) -> u64 {
    let d = row.len();
    (1..=d)
        .filter(|p| d % p == 0)
        .find(|&p| (p..d).all(|j| row[j] == row[j % p]))
        .unwrap_or(d.max(1)) as u64
}

fn binom_f64(n: usize, k: usize) -> f64 {
    to_f64(&Rational::from_integer(binomial(n as u64, k as u64)))
}

fn finite(v: ComplexValue, z: ComplexValue) -> Result<ComplexValue, AnalyticError> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(AnalyticError::NonFinite(z))
    }
}

fn check_shift(w: f64) -> Result<(), AnalyticError> {
    if w > 0.0 && w.is_finite() {
        Ok(())
    } else {
        Err(AnalyticError::NonPositiveShift(w))
    }
}

/// `θ_M(z, w)`, the finite part of `ζ_M` below `α(M)`.
pub fn theta(
    series: &HilbertSeries,
    z: ComplexValue,
    w: f64,
) -> Result<ComplexValue, AnalyticError> {
    check_shift(w)?;
    Ok(ModuleZeta::new(series, EvalConfig::default()).theta(z, w))
}

/// `θ_M(z) = Σ_{n=1}^{α-1} H(M, n) n^{-z}`.
pub fn theta_limit(series: &HilbertSeries, z: ComplexValue) -> ComplexValue {
    ModuleZeta::new(series, EvalConfig::default()).theta_limit(z)
}

/// `ζ_M(z, w)` through its Hurwitz-zeta closed form.
pub fn zeta_closed(
    series: &HilbertSeries,
    z: ComplexValue,
    w: f64,
    cfg: &EvalConfig,
) -> Result<ComplexValue, AnalyticError> {
    ModuleZeta::new(series, *cfg).eval(z, w)
}

/// `ζ_M(z, w)` by direct summation; the independent oracle for [`zeta_closed`].
pub fn zeta_direct(
    series: &HilbertSeries,
    z: ComplexValue,
    w: f64,
    eps: f64,
) -> Result<ComplexValue, AnalyticError> {
    ModuleZeta::new(series, EvalConfig::default()).direct(z, w, eps)
}

/// `ζ_M(z)`, the `w ↘ 0` limit with the `n = 0` term removed.
pub fn zeta_limit(
    series: &HilbertSeries,
    z: ComplexValue,
    cfg: &EvalConfig,
) -> Result<ComplexValue, AnalyticError> {
    ModuleZeta::new(series, *cfg).eval_limit(z)
}

/// `Σ_{n ≥ 1} H(M, n) n^{-z}` by direct summation.
pub fn zeta_limit_direct(
    series: &HilbertSeries,
    z: ComplexValue,
    eps: f64,
) -> Result<ComplexValue, AnalyticError> {
    ModuleZeta::new(series, EvalConfig::default()).direct_limit(z, eps)
}

/// The `i`-th higher zeta-Barnes type function, built on the iterated
/// Hilbert function `H_i(M, n) = Σ_{j ≤ n} H_{i-1}(M, j)`.
pub fn iterated_zeta(series: &HilbertSeries, i: usize, cfg: &EvalConfig) -> ModuleZeta {
    ModuleZeta::new(&series.iterate(i), *cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::WeightSeq;

    fn ws(w: &[u64]) -> WeightSeq {
        WeightSeq::new(w.to_vec()).unwrap()
    }

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }

    fn cusp() -> HilbertSeries {
        HilbertSeries::new(ws(&[2, 3]), vec![1, 0, 0, 0, 0, 0, -1])
    }

    #[test]
    fn theta_of_cusp() {
        let zf = ModuleZeta::new(&cusp(), EvalConfig::default());
        for &(z, w) in &[(c(0.3, 1.0), 0.5), (c(-2.0, 3.0), 2.25)] {
            assert!((zf.theta(z, w) - real_pow_neg(w, z)).norm() < 1e-15);
        }
        assert_eq!(zf.theta_limit(c(2.0, 0.0)), c(0.0, 0.0));
        let plane = ModuleZeta::new(&HilbertSeries::free(ws(&[1, 1])), EvalConfig::default());
        assert_eq!(plane.theta(c(2.0, 0.0), 1.0), c(0.0, 0.0));
    }

    #[test]
    fn cusp_closed_form() {
        let cfg = EvalConfig::default();
        let zf = ModuleZeta::new(&cusp(), cfg);
        for &(z, w) in &[
            (c(0.5, 1.0), 1.0),
            (c(-2.0, -3.0), 0.5),
            (c(3.0, 2.0), 2.25),
        ] {
            let expect = real_pow_neg(w, z) + hurwitz_zeta(z, w + 2.0, &cfg).unwrap();
            assert!((zf.eval(z, w).unwrap() - expect).norm() < 1e-10, "z={z}");
            let limit = hurwitz_zeta(z, 2.0, &cfg).unwrap();
            assert!((zf.eval_limit(z).unwrap() - limit).norm() < 1e-10, "z={z}");
        }
    }

    #[test]
    fn single_variable_is_hurwitz() {
        let cfg = EvalConfig::default();
        let zf = ModuleZeta::new(&HilbertSeries::free(ws(&[1])), cfg);
        let z = c(0.7, -4.0);
        let v = zf.eval(z, 0.3).unwrap();
        assert!((v - hurwitz_zeta(z, 0.3, &cfg).unwrap()).norm() < 1e-12);
        let riemann = zf.eval_limit(c(2.0, 0.0)).unwrap();
        assert!((riemann.re - PI * PI / 6.0).abs() < 1e-12);
    }

    #[test]
    fn direct_oracle_agrees() {
        let zf = ModuleZeta::new(&HilbertSeries::free(ws(&[1])), EvalConfig::default());
        let apery = zf.direct(c(3.0, 0.0), 1.0, 1e-12).unwrap();
        assert!((apery.re - 1.202_056_903_159_594).abs() < 1e-11);

        for s in [
            cusp(),
            HilbertSeries::free(ws(&[2, 3])),
            HilbertSeries::new(ws(&[1, 1]), vec![3, -1]),
        ] {
            let zf = ModuleZeta::new(&s, EvalConfig::default());
            let m = zf.pole_bound() as f64;
            for im in [-2.0, 0.0, 5.0] {
                let z = c(m + 2.0, im);
                let closed = zf.eval(z, 0.75).unwrap();
                let direct = zf.direct(z, 0.75, 1e-10).unwrap();
                assert!((closed - direct).norm() < 1e-8, "{s} z={z}");
                let limit = zf.eval_limit(z).unwrap();
                let limit_direct = zf.direct_limit(z, 1e-10).unwrap();
                assert!((limit - limit_direct).norm() < 1e-8, "{s} z={z}");
            }
        }
    }

    #[test]
    fn direct_rejects_divergent_region() {
        let zf = ModuleZeta::new(&HilbertSeries::free(ws(&[1, 1])), EvalConfig::default());
        assert!(matches!(
            zf.direct(c(3.0, 0.0), 1.0, 1e-10),
            Err(AnalyticError::DivergentRegion { .. })
        ));
    }

    #[test]
    fn poles_and_removable_points() {
        let cfg = EvalConfig::default();
        let plane = ModuleZeta::new(&HilbertSeries::free(ws(&[1, 1])), cfg);
        // residue at z = 1 is 1 - w: a genuine pole for w = 0.5, removable for w = 1
        match plane.eval(c(1.0, 0.0), 0.5) {
            Err(AnalyticError::Pole { pole, residue }) => {
                assert_eq!(pole, 1);
                assert_eq!(residue, crate::exact::ratio(1, 2));
            }
            other => panic!("expected pole, got {other:?}"),
        }
        // ζ_{(1,1)}(z, 1) = Σ (n+1)^{1-z} = ζ(z-1, 1); at z = 1 that is ζ(0) = -1/2
        let v = plane.eval(c(1.0, 0.0), 1.0).unwrap();
        assert!((v - c(-0.5, 0.0)).norm() < 1e-10, "{v}");
        assert!(matches!(
            plane.eval(c(2.0, 0.0), 1.0),
            Err(AnalyticError::Pole { pole: 2, .. })
        ));
    }

    #[test]
    fn artinian_module_is_its_theta() {
        let s = HilbertSeries::free(ws(&[2, 3]))
            .regular_quotient(6)
            .regular_quotient(6);
        let zf = ModuleZeta::new(&s, EvalConfig::default());
        assert_eq!(zf.pole_bound(), 0);
        let z = c(1.0, 0.0);
        assert_eq!(zf.eval(z, 0.5).unwrap(), zf.theta(z, 0.5));
        assert!(zf.residues().is_empty());
    }
}
