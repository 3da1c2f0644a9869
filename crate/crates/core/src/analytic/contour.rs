use std::f64::consts::PI;

use super::ComplexValue;

pub const ORACLE_POINTS: usize = 64;
pub const ORACLE_RADIUS: f64 = 1e-3;

/// Numerical residue `(1 / 2πi) ∮ f dz` over the circle `|z - z0| = h`,
/// by the trapezoid rule on [`ORACLE_POINTS`] equally spaced nodes.
///
/// With `z = z0 + h e^{iθ}` the integral becomes `(h / N) Σ f(z_k) e^{iθ_k}`.
pub fn residue_oracle<E>(
    f: impl Fn(ComplexValue) -> Result<ComplexValue, E>,
    z0: f64,
    h: f64,
) -> Result<ComplexValue, E> {
    residue_oracle_with(f, ComplexValue::new(z0, 0.0), h, ORACLE_POINTS)
}

pub fn residue_oracle_with<E>(
    f: impl Fn(ComplexValue) -> Result<ComplexValue, E>,
    center: ComplexValue,
    h: f64,
    points: usize,
) -> Result<ComplexValue, E> {
    let mut acc = ComplexValue::new(0.0, 0.0);
    for k in 0..points {
        let node = ComplexValue::from_polar(1.0, 2.0 * PI * k as f64 / points as f64);
        acc += f(center + node * h)? * node;
    }
    Ok(acc * (h / points as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{hurwitz_zeta, EvalConfig};

    #[test]
    fn simple_poles() {
        let f = |z: ComplexValue| Ok::<_, ()>(ComplexValue::new(3.0, -1.0) / (z - 2.0) + z * z);
        let r = residue_oracle(f, 2.0, ORACLE_RADIUS).unwrap();
        assert!((r - ComplexValue::new(3.0, -1.0)).norm() < 1e-12);
        let entire = |z: ComplexValue| Ok::<_, ()>(z.exp());
        assert!(residue_oracle(entire, 0.0, 0.5).unwrap().norm() < 1e-14);
    }

    #[test]
    fn hurwitz_has_unit_residue() {
        let cfg = EvalConfig::default();
        for w in [0.3, 1.0, 4.5] {
            let r = residue_oracle(|z| hurwitz_zeta(z, w, &cfg), 1.0, ORACLE_RADIUS).unwrap();
            assert!(
                (r - ComplexValue::new(1.0, 0.0)).norm() < 1e-6,
                "w={w} r={r}"
            );
        }
    }

    #[test]
    fn errors_propagate() {
        let r = residue_oracle(|_| Err::<ComplexValue, _>("boom"), 0.0, 1.0);
        assert_eq!(r, Err("boom"));
    }
}
