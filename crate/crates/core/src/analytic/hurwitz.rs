use std::f64::consts::PI;
use std::sync::OnceLock;

use super::{AnalyticError, ComplexValue, EvalConfig};
use crate::exact::{bernoulli_numbers, factorial, to_f64, Rational};

const MAX_TERMS: usize = 40;
const MAX_OFFSET: f64 = 1e7;
/// Left of this, small shifts go through the functional equation.
const REFLECT_BELOW: f64 = -5.0;
/// Terms kept in the periodic zeta series of the functional equation.
const MAX_PERIODIC_TERMS: f64 = 1e6;

/// `B_{2j} / (2j)!` for `j = 0..=MAX_TERMS`.
fn scaled_bernoulli() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let bern = bernoulli_numbers(2 * MAX_TERMS + 2);
        (0..=MAX_TERMS + 1)
            .map(|j| to_f64(&(&bern[2 * j] / Rational::from_integer(factorial(2 * j as u64)))))
            .collect()
    })
}

/// `x^{-s}` for real `x > 0`.
#[inline]
pub(crate) fn real_pow_neg(x: f64, s: ComplexValue) -> ComplexValue {
    (-s * x.ln()).exp()
}

/// `|B_{2j+2}/(2j+2)! · (z)_{2j+1} · a^{-z-2j-1}|` for `j = 0..=max_terms`: the
/// size of the first omitted term when `j` corrections are kept.
fn remainder_estimates(z: ComplexValue, a: f64, max_terms: usize) -> Vec<f64> {
    let bern = scaled_bernoulli();
    let inv_a2 = 1.0 / (a * a);
    let mut poch = z.norm();
    let mut power = a.powf(-z.re - 1.0);
    (0..=max_terms)
        .map(|j| {
            let e = bern[j + 1].abs() * poch * power;
            let next = 2.0 * j as f64;
            poch *= (z + next + 1.0).norm() * (z + next + 2.0).norm();
            power *= inv_a2;
            e
        })
        .collect()
}

/// Offset `N` and term count `J ≤ euler_maclaurin_terms` for one evaluation.
///
/// Every candidate offset `N + w` on a geometric ladder that admits a `J`
/// with first omitted term below the tolerance is scored by the largest
/// term the summation will add: the partial sum and the corrections are of
/// size up to `(N + w)^{1 - Re z}` and `|(z)_{2j-1}| (N + w)^{1 - Re z - 2j}`
/// and cancel down to `ζ(z, w)`, so that size sets the rounding error. For
/// `Re z < 0` a large offset loses `1 - Re z` bits per doubling, a small one
/// makes the corrections blow up; the ladder finds the balance.
fn choose_parameters(z: ComplexValue, w: f64, cfg: &EvalConfig) -> (u64, usize) {
    let max_terms = cfg.euler_maclaurin_terms.clamp(1, MAX_TERMS);
    let tol = cfg.target_abs_tol;
    let mut n = (cfg.min_offset - w).ceil().max(0.0);
    let mut best: Option<(f64, u64, usize)> = None;
    let mut since_best = 0;
    loop {
        let a = n + w;
        let estimates = remainder_estimates(z, a, max_terms);
        if let Some(first) = (1..=max_terms).find(|&j| estimates[j] <= tol) {
            // keep adding terms while they still shrink, well below the target
            let mut j = first;
            while j < max_terms && estimates[j + 1] < estimates[j] && estimates[j] > tol * 1e-4 {
                j += 1;
            }
            let head = a.powf(-z.re).max(w.powf(-z.re)) * a / (z - 1.0).norm().max(1e-300);
            let score = estimates[..j].iter().fold(head, |acc, &e| acc.max(e));
            match best {
                Some((s, _, _)) if s <= score => since_best += 1,
                _ => {
                    best = Some((score, n as u64, j));
                    since_best = 0;
                }
            }
            if since_best >= 3 || z.re >= 1.0 {
                break;
            }
        }
        if a >= MAX_OFFSET {
            break;
        }
        n = (n * 1.5).max(n + 1.0).ceil();
    }
    best.map_or((n as u64, max_terms), |(_, n, j)| (n, j))
}

/// `ln Γ(s)` for `Re s ≥ 1/2`, Lanczos approximation with `g = 7`.
fn ln_gamma(s: ComplexValue) -> ComplexValue {
    const G: f64 = 7.0;
    const P: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    let s = s - 1.0;
    let series = P[1..]
        .iter()
        .enumerate()
        .fold(ComplexValue::new(P[0], 0.0), |acc, (i, &p)| {
            acc + p / (s + (i + 1) as f64)
        });
    let t = s + G + 0.5;
    0.5 * (2.0 * PI).ln() + (s + 0.5) * t.ln() - t + series.ln()
}

/// Functional equation for `Re z < 0`:
///
/// `ζ(z, x) = Γ(s)/(2π)^s [e^{-iπs/2} F(x, s) + e^{iπs/2} F(-x, s)]`,
/// `s = 1 - z`, `F(x, s) = Σ_{n≥1} e^{2πinx} n^{-s}`, for `0 < x ≤ 1`; larger
/// `w` are brought into range by `ζ(z, w) = ζ(z, w - 1) - (w - 1)^{-z}`.
fn reflected(z: ComplexValue, w: f64) -> Result<ComplexValue, AnalyticError> {
    let shifts = (w.ceil() - 1.0).max(0.0);
    let x = w - shifts;
    let s = 1.0 - z;
    let i = ComplexValue::i();
    let base = ln_gamma(s) - s * (2.0 * PI).ln();
    let plus = (base - i * PI * s / 2.0).exp();
    let minus = (base + i * PI * s / 2.0).exp();
    // tail Σ_{n>N} n^{-σ} < N^{1-σ}/(σ-1)
    let excess = s.re - 1.0;
    let terms = (1e17 / excess)
        .powf(1.0 / excess)
        .ceil()
        .min(MAX_PERIODIC_TERMS) as u64;
    let mut sum = ComplexValue::new(0.0, 0.0);
    for n in (1..=terms).rev() {
        let phase = ComplexValue::from_polar(1.0, 2.0 * PI * ((n as f64 * x) % 1.0));
        sum += real_pow_neg(n as f64, s) * (plus * phase + minus * phase.conj());
    }
    for k in 0..shifts as u64 {
        sum -= real_pow_neg(x + k as f64, z);
    }
    if sum.re.is_finite() && sum.im.is_finite() {
        Ok(sum)
    } else {
        Err(AnalyticError::NonFinite(z))
    }
}

/// Hurwitz zeta `ζ(z, w) = Σ_{n ≥ 0} (n + w)^{-z}`, analytically continued to
/// all `z ≠ 1`, by Euler–Maclaurin summation:
///
/// `Σ_{n<N} (n+w)^{-z} + (N+w)^{1-z}/(z-1) + (N+w)^{-z}/2
///  + Σ_{j=1}^{J} B_{2j}/(2j)! · (z)_{2j-1} · (N+w)^{-z-2j+1}`.
///
/// `N` and `J` are chosen per call, see `choose_parameters`.
pub fn hurwitz_zeta(
    z: ComplexValue,
    w: f64,
    cfg: &EvalConfig,
) -> Result<ComplexValue, AnalyticError> {
    if !(w > 0.0) || !w.is_finite() {
        return Err(AnalyticError::NonPositiveShift(w));
    }
    if (z - 1.0).norm() <= cfg.pole_guard {
        return Err(AnalyticError::HurwitzPole(z));
    }
    if z.re <= REFLECT_BELOW && w <= 8.0 {
        return reflected(z, w);
    }
    let (n, terms) = choose_parameters(z, w, cfg);
    let a = n as f64 + w;

    let mut sum = ComplexValue::new(0.0, 0.0);
    for k in (0..n).rev() {
        sum += real_pow_neg(k as f64 + w, z);
    }
    let a_pow = real_pow_neg(a, z);
    sum += a_pow * a / (z - 1.0) + a_pow * 0.5;

    let inv_a2 = 1.0 / (a * a);
    let bern = scaled_bernoulli();
    let mut poch = z;
    let mut power = a_pow / a;
    for j in 1..=terms {
        sum += poch * power * bern[j];
        let next = 2.0 * j as f64;
        poch *= (z + next - 1.0) * (z + next);
        power *= inv_a2;
    }

    if sum.re.is_finite() && sum.im.is_finite() {
        Ok(sum)
    } else {
        Err(AnalyticError::NonFinite(z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }

    /// Direct partial sum plus the integral tail bound, for Re z > 1.
    fn direct_oracle(z: f64, w: f64) -> f64 {
        let n = 2_000_000u64;
        let mut s = 0.0;
        for k in (0..n).rev() {
            s += (k as f64 + w).powf(-z);
        }
        // midpoint-style tail: ∫_{N-1/2}^∞ (x+w)^{-z} dx
        s + (n as f64 - 0.5 + w).powf(1.0 - z) / (z - 1.0)
    }

    #[test]
    fn basel_and_friends() {
        let cfg = EvalConfig::default();
        let v = hurwitz_zeta(c(2.0, 0.0), 1.0, &cfg).unwrap();
        assert!((v.re - PI * PI / 6.0).abs() < 1e-12);
        assert!(v.im.abs() < 1e-15);
        assert!((v.re - direct_oracle(2.0, 1.0)).abs() < 1e-11);
        let v4 = hurwitz_zeta(c(4.0, 0.0), 1.0, &cfg).unwrap();
        assert!((v4.re - PI.powi(4) / 90.0).abs() < 1e-12);
        let half = hurwitz_zeta(c(2.0, 0.0), 0.5, &cfg).unwrap();
        assert!((half.re - PI * PI / 2.0).abs() < 1e-11);
    }

    #[test]
    fn negative_integer_and_zero_arguments() {
        let cfg = EvalConfig::default();
        for w in [0.25, 0.5, 1.0, 3.7] {
            let v = hurwitz_zeta(c(0.0, 0.0), w, &cfg).unwrap();
            assert!((v.re - (0.5 - w)).abs() < 1e-12, "w={w}");
            // ζ(-1, w) = -B_2(w)/2 = -(w^2 - w + 1/6)/2
            let v = hurwitz_zeta(c(-1.0, 0.0), w, &cfg).unwrap();
            assert!(
                (v.re + (w * w - w + 1.0 / 6.0) / 2.0).abs() < 1e-11,
                "w={w}"
            );
        }
        let riemann = hurwitz_zeta(c(-1.0, 0.0), 1.0, &cfg).unwrap();
        assert!((riemann.re + 1.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn shift_recurrence() {
        let cfg = EvalConfig::default();
        for &(re, im, w) in &[
            (0.3, 2.0, 0.7),
            (-2.0, -3.0, 1.5),
            (4.0, 1.0, 0.1),
            (0.5, 14.1, 2.0),
        ] {
            let z = c(re, im);
            let lhs = hurwitz_zeta(z, w, &cfg).unwrap() - hurwitz_zeta(z, w + 1.0, &cfg).unwrap();
            let rhs = real_pow_neg(w, z);
            assert!((lhs - rhs).norm() < 1e-10, "z={z} w={w}");
        }
    }

    #[test]
    fn rejects_pole_and_bad_shift() {
        let cfg = EvalConfig::default();
        assert!(matches!(
            hurwitz_zeta(c(1.0, 0.0), 1.0, &cfg),
            Err(AnalyticError::HurwitzPole(_))
        ));
        assert!(matches!(
            hurwitz_zeta(c(2.0, 0.0), 0.0, &cfg),
            Err(AnalyticError::NonPositiveShift(_))
        ));
        assert!(hurwitz_zeta(c(1.0 + 1e-6, 0.0), 1.0, &cfg).is_ok());
    }

    /// `ζ(-n, x) = -B_{n+1}(x)/(n+1)`, exactly, from the Bernoulli numbers.
    fn negative_integer_oracle(n: usize, x: f64) -> f64 {
        let k = n + 1;
        let bern = bernoulli_numbers(k);
        let xr = Rational::from_float(x).unwrap();
        let mut acc = Rational::from_integer(0.into());
        for (i, b) in bern.iter().enumerate().take(k + 1) {
            let binom = Rational::from_integer(crate::exact::binomial(k as u64, i as u64));
            acc += binom * b * num_traits::pow(xr.clone(), k - i);
        }
        -to_f64(&acc) / k as f64
    }

    #[test]
    fn negative_integers_match_bernoulli_polynomials() {
        let cfg = EvalConfig::default();
        for n in [1usize, 3, 4, 7, 10, 14] {
            for x in [0.05, 0.7, 1.0, 1.6, 3.3, 7.5, 18.5] {
                let exact = negative_integer_oracle(n, x);
                let got = hurwitz_zeta(c(-(n as f64), 0.0), x, &cfg).unwrap();
                let err = (got - c(exact, 0.0)).norm() / exact.abs().max(1.0);
                assert!(err < 1e-12, "n={n} x={x} got={got} exact={exact} err={err}");
            }
        }
    }

    #[test]
    fn log_gamma_matches_factorials() {
        for n in 1..20u64 {
            let exact = to_f64(&Rational::from_integer(factorial(n - 1))).ln();
            assert!(
                (ln_gamma(c(n as f64, 0.0)) - c(exact, 0.0)).norm() < 1e-12 * exact.abs().max(1.0)
            );
        }
        // |Γ(1/2 + it)|^2 = π / cosh(πt)
        for t in [0.5, 3.0, 12.0] {
            let lhs = 2.0 * ln_gamma(c(0.5, t)).re;
            assert!((lhs - (PI / (PI * t).cosh()).ln()).abs() < 1e-12);
        }
    }
}
