//! Zeta functions of graded modules.
//!
//! A finitely generated graded module over `K[x_1, …, x_r]` with
//! `deg x_i = a_i` is described by its Hilbert series. From it the crate
//! builds
//!
//! - the Hilbert function and its quasi-polynomial ([`hilbert`]),
//! - `ζ_M(z, w) = Σ_n H(M, n) (n + w)^{-z}` continued to the whole plane
//!   through Hurwitz zeta values ([`analytic`]),
//! - exact residues and the multiplicity they encode ([`analytic`],
//!   [`verify`]),
//!
//! on top of exact rational arithmetic ([`exact`]).
//!
//! ```
//! use graded_zeta::analytic::residues_closed;
//! use graded_zeta::exact::{rat, WeightSeq};
//! use graded_zeta::hilbert::HilbertSeries;
//!
//! // K[x, y, z]/(f) with deg f = 4
//! let s = HilbertSeries::new(WeightSeq::standard(3), vec![1, 0, 0, 0, -1]);
//! assert_eq!(s.multiplicity().unwrap().e, rat(4));
//! // e(M) = (m - 1)! R_M(w, m) with m = 2
//! assert_eq!(residues_closed(&s).get(2).coeff(0), rat(4));
//! ```

pub mod analytic;
pub mod exact;
pub mod hilbert;
pub mod verify;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/hilbert.md")]
    mod hilbert {}
    #[doc = include_str!("../../../book/src/zeta.md")]
    mod zeta {}
    #[doc = include_str!("../../../book/src/residues.md")]
    mod residues {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
