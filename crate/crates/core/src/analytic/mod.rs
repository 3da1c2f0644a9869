//! Complex evaluation of Hurwitz zeta and of the zeta-Barnes type function
//! `ζ_M(z, w) = Σ_n H(M, n) (n + w)^{-z}` of a graded module, plus exact
//! residue tables and a contour-integral residue oracle.

mod contour;
mod hurwitz;
mod residues;
mod zeta;

pub use contour::{residue_oracle, residue_oracle_with, ORACLE_POINTS, ORACLE_RADIUS};
pub use hurwitz::hurwitz_zeta;
pub use residues::{
    residues_betti, residues_closed, residues_from_shifts, residues_limit, ResidueTable,
};
pub use zeta::{
    iterated_zeta, theta, theta_limit, zeta_closed, zeta_direct, zeta_limit, zeta_limit_direct,
    ModuleZeta,
};

use num_complex::Complex64;
use thiserror::Error;

use crate::exact::Rational;
use crate::hilbert::HilbertError;

/// Double-precision complex value used by every evaluator.
pub type ComplexValue = Complex64;

/// Tuning knobs for the analytic evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    /// Absolute error aimed for by a single Hurwitz evaluation.
    pub target_abs_tol: f64,
    /// Largest number of Bernoulli correction terms in Euler–Maclaurin; the
    /// count actually used is chosen per call.
    pub euler_maclaurin_terms: usize,
    /// Lower bound for the summation offset `N + w`. The offset is otherwise
    /// chosen per call to limit cancellation.
    pub min_offset: f64,
    /// Points closer than this to a pole are treated as being on it.
    pub pole_guard: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            target_abs_tol: 1e-12,
            euler_maclaurin_terms: 40,
            min_offset: 0.0,
            pole_guard: 1e-9,
        }
    }
}

impl EvalConfig {
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.target_abs_tol = tol;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error("pole of Hurwitz zeta: z = {0} is within the pole guard of 1")]
    HurwitzPole(ComplexValue),
    #[error("shift parameter must be positive, got w = {0}")]
    NonPositiveShift(f64),
    #[error("pole at z = {pole} with residue {residue}")]
    Pole { pole: usize, residue: Rational },
    #[error("divergent region; use zeta_closed (need Re z >= {required}, got {re})")]
    DivergentRegion { re: f64, required: f64 },
    #[error("direct summation needs {0} terms, beyond the supported limit")]
    TooManyTerms(u64),
    #[error("non-finite value at z = {0}")]
    NonFinite(ComplexValue),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
}
